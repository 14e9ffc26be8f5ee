#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bgm/basis.hpp"
#include "bgm/fixture.hpp"
#include "bgm/io.hpp"

namespace bgm {

struct DegreeComparison {
  std::uint64_t expected = 0;
  std::optional<std::uint64_t> computed;  ///< empty when skipped
};

struct ColumnComparison {
  std::string name;
  std::map<int, DegreeComparison> degrees;  ///< 2..reference width
  std::uint64_t expected_total = 0;
  int expected_width = 0;
  WidthStatus width;
  bool skipped = false;   ///< every degree over budget, or column not selected
  bool partial = false;   ///< some degrees over budget
  bool mismatch = false;  ///< a computed value differs from the fixture
};

struct TableComparison {
  std::vector<ColumnComparison> columns;
  bool mismatch = false;
  bool partial = false;
};

struct ReproduceOptions {
  EngineOptions engine;
  /// Columns to run; empty means all. Others are reported as skipped.
  std::set<std::string> only;
  /// Called after each column.
  std::function<void(const ColumnComparison&)> progress;
};

/// Recomputes the minimal generator counts of every column for degrees 2..width. Degrees
/// whose monomial count exceeds the budget are skipped, never guessed.
TableComparison reproduce_table(const std::vector<TableColumn>& columns, const ReproduceOptions& opt = {});

Json table_comparison_to_json(const TableComparison& t);
/// Rows: one per degree, then "total" and "width"; one column per graph. A cell holds the
/// computed value, "skipped", or "computed!=expected" on a mismatch.
std::string table_comparison_to_csv(const TableComparison& t);

}  // namespace bgm

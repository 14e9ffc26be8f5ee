#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bgm/graph.hpp"

namespace bgm {

/// One column of the reference table of minimal generator counts.
struct TableColumn {
  std::string name;
  Graph graph;
  std::map<int, std::uint64_t> counts;  ///< degree -> number of minimal generators
  std::uint64_t total = 0;
  int width = 0;
};

/// Parses the fixture file; throws ParseError on malformed content or when a column's
/// total or width disagrees with its counts.
std::vector<TableColumn> load_generator_table(const std::string& path);

/// The checked-in fixture (data/generator_table.json), loaded once.
const std::vector<TableColumn>& generator_table();

/// Directory holding the checked-in data files.
std::string data_dir();

}  // namespace bgm

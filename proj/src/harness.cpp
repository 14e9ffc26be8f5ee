#include "bgm/harness.hpp"

#include <sstream>

namespace bgm {

TableComparison reproduce_table(const std::vector<TableColumn>& columns, const ReproduceOptions& opt) {
  TableComparison out;
  for (const TableColumn& col : columns) {
    ColumnComparison cc;
    cc.name = col.name;
    cc.expected_total = col.total;
    cc.expected_width = col.width;
    for (int d = 2; d <= col.width; ++d) {
      auto it = col.counts.find(d);
      cc.degrees[d].expected = it == col.counts.end() ? 0 : it->second;
    }
    if (!opt.only.empty() && !opt.only.count(col.name)) {
      cc.skipped = true;
    } else {
      const BasisReport rep = markov_basis_up_to(col.graph, col.width, opt.engine);
      for (auto& [d, dc] : cc.degrees) {
        auto it = rep.per_degree.find(d);
        if (it == rep.per_degree.end()) continue;
        dc.computed = it->second.count;
        if (dc.computed != dc.expected) cc.mismatch = true;
      }
      cc.width = rep.width;
      cc.partial = rep.partial;
      cc.skipped = rep.skipped.size() == cc.degrees.size();
      if (rep.width.exact && rep.width.value != col.width) cc.mismatch = true;
    }
    out.mismatch = out.mismatch || cc.mismatch;
    out.partial = out.partial || cc.partial || cc.skipped;
    if (opt.progress) opt.progress(cc);
    out.columns.push_back(std::move(cc));
  }
  return out;
}

Json table_comparison_to_json(const TableComparison& t) {
  Json cols = Json::array();
  for (const auto& c : t.columns) {
    Json degrees = Json::object();
    for (const auto& [d, dc] : c.degrees)
      degrees[std::to_string(d)] = {{"expected", dc.expected},
                                    {"computed", dc.computed ? Json(*dc.computed) : Json("skipped")}};
    std::string status = c.mismatch ? "mismatch" : c.skipped ? "skipped" : c.partial ? "partial" : "match";
    cols.push_back({{"name", c.name},
                    {"status", status},
                    {"degrees", degrees},
                    {"expected_total", c.expected_total},
                    {"expected_width", c.expected_width},
                    {"width", {{"exact", c.width.exact}, {"value", c.width.value}}}});
  }
  return {{"columns", cols}, {"mismatch", t.mismatch}, {"partial", t.partial}};
}

std::string table_comparison_to_csv(const TableComparison& t) {
  int top = 2;
  for (const auto& c : t.columns)
    if (!c.degrees.empty()) top = std::max(top, c.degrees.rbegin()->first);
  std::ostringstream out;
  out << "degree";
  for (const auto& c : t.columns) {
    if (c.name.find(',') == std::string::npos) out << ',' << c.name;
    else out << ",\"" << c.name << '"';
  }
  out << '\n';
  auto cell = [](std::optional<std::uint64_t> got, std::uint64_t want) {
    if (!got) return std::string("skipped");
    if (*got != want) return std::to_string(*got) + "!=" + std::to_string(want);
    return std::to_string(*got);
  };
  for (int d = 2; d <= top; ++d) {
    out << d;
    for (const auto& c : t.columns) {
      out << ',';
      auto it = c.degrees.find(d);
      if (it != c.degrees.end()) out << cell(it->second.computed, it->second.expected);
    }
    out << '\n';
  }
  out << "total";
  for (const auto& c : t.columns) {
    std::optional<std::uint64_t> sum = 0;
    for (const auto& [d, dc] : c.degrees) {
      if (!dc.computed) sum.reset();
      if (sum) *sum += *dc.computed;
    }
    out << ',' << cell(sum, c.expected_total);
  }
  out << "\nwidth";
  for (const auto& c : t.columns) {
    out << ',';
    if (c.width.exact) out << cell(static_cast<std::uint64_t>(c.width.value), c.expected_width);
    else out << "skipped";
  }
  out << '\n';
  return out.str();
}

}  // namespace bgm

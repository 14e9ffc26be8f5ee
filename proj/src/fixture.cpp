#include "bgm/fixture.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "bgm/errors.hpp"

namespace bgm {

std::string data_dir() {
  if (const char* env = std::getenv("BGM_DATA_DIR")) return env;
  return BGM_DATA_DIR;
}

std::vector<TableColumn> load_generator_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
  std::vector<TableColumn> out;
  try {
    for (const auto& c : j.at("columns")) {
      TableColumn col;
      col.name = c.at("name").get<std::string>();
      std::vector<std::pair<int, int>> es;
      for (const auto& e : c.at("edges")) es.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      col.graph = graph_from_one_based(c.at("n").get<int>(), es);
      std::uint64_t sum = 0;
      for (const auto& [deg, count] : c.at("counts").items()) {
        const int d = std::stoi(deg);
        col.counts[d] = count.get<std::uint64_t>();
        sum += col.counts[d];
        if (col.counts[d] > 0) col.width = std::max(col.width, d);
      }
      col.total = c.at("total").get<std::uint64_t>();
      if (col.total != sum) throw ParseError("column " + col.name + ": total does not equal the column sum", 0);
      if (c.at("width").get<int>() != col.width) {
        throw ParseError("column " + col.name + ": width is not the largest degree with generators", 0);
      }
      out.push_back(std::move(col));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
  return out;
}

const std::vector<TableColumn>& generator_table() {
  static const std::vector<TableColumn> table = load_generator_table(data_dir() + "/generator_table.json");
  return table;
}

}  // namespace bgm

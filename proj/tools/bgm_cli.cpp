#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <set>

#include "bgm/basis.hpp"
#include "bgm/errors.hpp"
#include "bgm/forest.hpp"
#include "bgm/harness.hpp"
#include "bgm/io.hpp"
#include "bgm/special.hpp"
#include "bgm/structural.hpp"

using namespace bgm;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3 };

struct Common {
  std::string graph_file;
  std::string named;
  std::string format = "json";
  std::string out;
  std::uint64_t budget = EngineOptions{}.monomial_budget;
  std::uint64_t seed = 1;
  int dmax = 4;
};

Graph load_graph(const Common& c) {
  if (!c.graph_file.empty() && !c.named.empty()) throw ArgumentError("give either --graph or --named");
  if (!c.graph_file.empty()) return read_graph_file(c.graph_file);
  if (!c.named.empty()) {
    if (auto g = graphs::by_name(c.named)) return *g;
    throw ArgumentError("unknown graph name " + c.named);
  }
  throw ArgumentError("a graph is required (--graph FILE or --named NAME)");
}

EngineOptions engine(const Common& c) {
  if (c.budget == 0) throw ArgumentError("--budget must be positive");
  EngineOptions opt;
  opt.monomial_budget = c.budget;
  return opt;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ArgumentError("cannot write " + c.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

void require_moves(const Graph& g, const std::vector<Move>& moves) {
  for (const Move& m : moves)
    if (!is_move(g, m)) throw std::logic_error("internal error: emitted a non-move");
}

std::vector<Move> load_moves(const std::string& path) {
  const std::string text = read_file(path);
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && (text[start] == '{' || text[start] == '[')) {
    const Json j = parse_json(text);
    std::vector<Move> out;
    if (j.is_object()) {
      for (const auto& d : basis_report_from_json(j).per_degree)
        out.insert(out.end(), d.second.reps.begin(), d.second.reps.end());
    } else {
      for (const auto& m : j) out.push_back(move_from_json(m));
    }
    return out;
  }
  return parse_tableaux(text);
}

Table load_table(const std::string& path) {
  const std::string text = read_file(path);
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') return table_from_json(parse_json(text));
  return parse_table_text(text);
}

int cmd_matrix(const Common& c) {
  const Graph g = load_graph(c);
  const Matrix a = marginal_matrix(g);
  const auto labels = marginal_row_labels(g);
  if (c.format == "json") {
    emit(c, dump({{"graph", graph_to_json(g)}, {"rows", labels}, {"matrix", a}}));
  } else {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (c.format == "csv") s += labels[i];
      for (std::size_t j = 0; j < a[i].size(); ++j) {
        if (c.format == "csv") s += ',';
        else if (j > 0) s += ' ';
        s += std::to_string(a[i][j]);
      }
      s += '\n';
    }
    emit(c, s);
  }
  return kOk;
}

int cmd_basis(const Common& c) {
  const Graph g = load_graph(c);
  const BasisReport r = markov_basis_up_to(g, c.dmax, engine(c));
  for (const auto& [d, res] : r.per_degree) require_moves(g, res.reps);
  if (c.format == "text") {
    std::string s;
    for (const auto& [d, res] : r.per_degree) {
      s += "# degree " + std::to_string(d) + ": " + std::to_string(res.count) + " minimal generators\n";
      for (const Move& m : res.reps) s += move_to_tableau(m) + "\n";
    }
    for (int d : r.skipped) s += "# degree " + std::to_string(d) + ": skipped (budget)\n";
    emit(c, s);
  } else {
    emit(c, dump(basis_report_to_json(r)));
  }
  return r.partial ? kBudget : kOk;
}

int cmd_width(const Common& c) {
  const Graph g = load_graph(c);
  const BasisReport r = markov_basis_up_to(g, c.dmax, engine(c));
  emit(c, dump({{"exact", r.width.exact}, {"value", r.width.value}, {"certificate", r.width.certificate},
                {"partial", r.partial}}));
  return r.partial && !r.width.exact ? kBudget : kOk;
}

int cmd_classify(const Common& c, int degree, bool canonical) {
  const Graph g = load_graph(c);
  const auto res = pullback_candidates(g, degree);
  std::vector<GeneratorCandidate> kept;
  std::set<Move> seen;
  for (const auto& cand : res.candidates) {
    if (!cand.minimal.value_or(false)) continue;
    if (canonical && !seen.insert(canonicalize_move(g, cand.move)).second) continue;
    kept.push_back(cand);
  }
  for (const auto& k : kept) require_moves(g, {k.move});
  if (c.format == "text") {
    std::string s;
    for (const auto& k : kept) s += "# " + k.provenance.describe() + "\n" + move_to_tableau(k.move) + "\n";
    emit(c, s);
  } else {
    Json list = Json::array();
    for (const auto& k : kept) list.push_back(candidate_to_json(k));
    emit(c, dump({{"graph", graph_to_json(g)},
                  {"degree", degree},
                  {"count", kept.size()},
                  {"maps_examined", res.maps_examined},
                  {"partial", res.truncated},
                  {"generators", list}}));
  }
  return res.truncated ? kBudget : kOk;
}

std::string str(const BigInt& b) { return b.str(); }
std::string str(const Rational& r) { return r.str(); }

int cmd_forest(const Common& c, bool oracle, int series) {
  if (series > 0) {
    const auto chain = chain_series(series);
    const auto tan = scaled_tangent_series(series);
    Json rows = Json::array();
    for (int n = 1; n <= series; ++n)
      rows.push_back({{"n", n}, {"degree", str(chain_degree(n))}, {"coefficient", str(chain[n - 1])},
                      {"tangent_coefficient", str(tan[n - 1])}});
    const bool ok = chain == tan;
    emit(c, dump({{"chains", rows}, {"generating_function_matches", ok}}));
    return ok ? kOk : kMismatch;
  }
  const Graph g = load_graph(c);
  const BigInt d = forest_degree(g);
  Json out = {{"graph", graph_to_json(g)}, {"degree", str(d)}};
  int code = kOk;
  if (oracle) {
    const BigInt o = degree_oracle(g);
    out["oracle"] = str(o);
    out["agree"] = o == d;
    if (o != d) code = kMismatch;
  }
  if (c.format == "text") emit(c, str(d) + "\n");
  else emit(c, dump(out));
  return code;
}

int cmd_verify(const Common& c, const std::string& moves_file) {
  const Graph g = load_graph(c);
  const auto moves = load_moves(moves_file);
  for (const Move& m : moves)
    if (!is_move(g, m)) throw ArgumentError("the moves file holds a non-move for this graph");
  try {
    const auto r = verify_all_fibers(g, moves, c.dmax, engine(c));
    Json out = {{"connected", r.ok}, {"degrees_checked", r.degrees_checked}, {"fibers_checked", r.fibers_checked},
                {"partial", false}};
    if (r.separated) out["separated"] = {table_to_json(r.separated->first), table_to_json(r.separated->second)};
    emit(c, dump(out));
    return r.ok ? kOk : kMismatch;
  } catch (const BudgetExceeded& e) {
    emit(c, dump({{"connected", nullptr}, {"partial", true}, {"reason", e.what()}}));
    return kBudget;
  }
}

int cmd_sample(const Common& c, const std::string& moves_file, const std::string& start_file, std::uint64_t steps,
               const std::string& proposal) {
  const Graph g = load_graph(c);
  const Table start = load_table(start_file);
  std::vector<Move> moves;
  bool partial = false;
  if (!moves_file.empty()) {
    moves = load_moves(moves_file);
  } else {
    const auto r = markov_basis_up_to(g, c.dmax, engine(c));
    partial = r.partial;
    for (const auto& [d, res] : r.per_degree) moves.insert(moves.end(), res.reps.begin(), res.reps.end());
  }
  require_moves(g, moves);
  const auto w = random_walk(g, moves, start, steps, c.seed,
                             proposal == "uniform" ? WalkProposal::Uniform : WalkProposal::Applicable);
  Json visits = Json::array();
  for (const auto& [t, k] : w.visits) visits.push_back({{"table", table_to_json(t)}, {"visits", k}});
  emit(c, dump({{"seed", c.seed},
                {"proposal", proposal},
                {"steps", steps},
                {"moves", moves.size()},
                {"accepted", w.accepted},
                {"rejected", w.rejected},
                {"final", table_to_json(w.final_table)},
                {"distinct_tables", w.visits.size()},
                {"visits", visits},
                {"partial", partial}}));
  return partial ? kBudget : kOk;
}

int cmd_reproduce(const Common& c, const std::vector<std::string>& only) {
  ReproduceOptions opt;
  opt.engine = engine(c);
  opt.only.insert(only.begin(), only.end());
  const auto& table = generator_table();
  for (const auto& name : opt.only) {
    bool found = false;
    for (const auto& col : table) found = found || col.name == name;
    if (!found) throw ArgumentError("no column named " + name);
  }
  opt.progress = [](const ColumnComparison& cc) {
    std::cerr << cc.name << ": "
              << (cc.mismatch ? "mismatch" : cc.skipped ? "skipped" : cc.partial ? "partial" : "match") << std::endl;
  };
  const auto r = reproduce_table(table, opt);
  emit(c, c.format == "csv" ? table_comparison_to_csv(r) : dump(table_comparison_to_json(r)));
  if (r.mismatch) return kMismatch;
  return kOk;
}

int cmd_reduce(const Common& c, const std::string& family, int n, const std::string& from, const std::string& to) {
  const Table a = load_table(from);
  const Table b = load_table(to);
  ReductionCertificate cert;
  Graph g;
  if (family == "cycle") {
    cert = cycle_reduce(n, a, b);
    g = graphs::cycle(n);
  } else if (family == "k2n") {
    cert = k2n_reduce(n, a, b);
    g = graphs::complete_bipartite(2, n);
  } else {
    throw ArgumentError("family must be cycle or k2n");
  }
  emit(c, dump(certificate_to_json(g, cert)));
  return kOk;
}

int cmd_replay(const Common& c, const std::string& file, std::size_t max_degree) {
  const auto [g, cert] = certificate_from_json(parse_json(read_file(file)));
  const auto r = replay_certificate(g, cert, max_degree);
  emit(c, dump({{"valid", r.ok}, {"reason", r.reason}, {"steps", cert.path.size()}, {"max_degree", r.max_degree}}));
  return r.ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov bases of binary graph models"};
  app.require_subcommand(1);
  Common c;

  auto graph_opts = [&](CLI::App* s) {
    s->add_option("--graph", c.graph_file, "graph file (text or JSON)");
    s->add_option("--named", c.named, "built-in graph, e.g. C5, K4, K2,3, prism, G129");
  };
  auto out_opts = [&](CLI::App* s, std::vector<std::string> formats) {
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
    s->add_option("--out", c.out, "output path (default stdout)");
  };
  auto budget_opt = [&](CLI::App* s) {
    s->add_option("--budget", c.budget, "monomials per (graph, degree) job");
  };

  auto* matrix = app.add_subcommand("matrix", "print the marginal matrix A_G");
  graph_opts(matrix);
  out_opts(matrix, {"json", "csv", "text"});

  auto* basis = app.add_subcommand("basis", "minimal generators by degree");
  graph_opts(basis);
  out_opts(basis, {"json", "text"});
  budget_opt(basis);
  basis->add_option("--dmax", c.dmax, "largest degree")->check(CLI::Range(2, 16));

  auto* width = app.add_subcommand("width", "Markov width");
  graph_opts(width);
  out_opts(width, {"json"});
  budget_opt(width);
  width->add_option("--dmax", c.dmax, "largest degree")->check(CLI::Range(2, 16));

  int degree = 3;
  bool canonical = false;
  auto* classify = app.add_subcommand("classify", "degree-d generators from fundamental-graph pullbacks");
  graph_opts(classify);
  out_opts(classify, {"json", "text"});
  classify->add_option("--degree", degree, "degree")->check(CLI::Range(2, 6));
  classify->add_flag("--canonical", canonical, "one generator per symmetry class");

  bool oracle = false;
  int series = 0;
  auto* forest = app.add_subcommand("forest-degree", "degree of the toric ideal of a forest");
  graph_opts(forest);
  out_opts(forest, {"json", "text"});
  forest->add_flag("--oracle", oracle, "cross-check with the triangulation count");
  forest->add_option("--series", series, "print chain degrees d_1..d_N and the generating-function check")
      ->check(CLI::Range(1, 200));

  std::string moves_file, start_file;
  std::uint64_t steps = 10000;
  auto* verify = app.add_subcommand("verify", "check that moves connect every fiber up to --dmax");
  graph_opts(verify);
  out_opts(verify, {"json"});
  budget_opt(verify);
  verify->add_option("--moves", moves_file, "tableaux, a JSON move list or a basis report")->required();
  verify->add_option("--dmax", c.dmax, "largest degree")->check(CLI::Range(1, 16));

  auto* sample = app.add_subcommand("sample", "random walk on a fiber");
  graph_opts(sample);
  out_opts(sample, {"json"});
  budget_opt(sample);
  sample->add_option("--start", start_file, "starting table (text or JSON)")->required();
  sample->add_option("--moves", moves_file, "moves (default: computed basis up to --dmax)");
  sample->add_option("--steps", steps, "walk length");
  sample->add_option("--seed", c.seed, "random seed (default 1)");
  std::string proposal = "applicable";
  sample->add_option("--proposal", proposal, "applicable (default) or uniform")
      ->check(CLI::IsMember({"applicable", "uniform"}));
  sample->add_option("--dmax", c.dmax, "largest degree of the computed basis")->check(CLI::Range(2, 16));

  std::vector<std::string> columns;
  auto* repro = app.add_subcommand("reproduce-table", "recompute the reference generator counts");
  out_opts(repro, {"json", "csv"});
  budget_opt(repro);
  repro->add_option("--columns", columns, "restrict to these columns (space separated)");

  std::string family, from, to;
  int n = 0;
  auto* reduce = app.add_subcommand("reduce", "move path between two tables of a cycle or K_{2,n} fiber");
  out_opts(reduce, {"json"});
  reduce->add_option("--family", family, "cycle or k2n")->required();
  reduce->add_option("--n", n, "cycle length, or the size of the larger part")->required();
  reduce->add_option("--from", from, "first table")->required();
  reduce->add_option("--to", to, "second table")->required();

  std::string cert_file;
  std::size_t max_degree = 4;
  auto* replay = app.add_subcommand("replay", "re-validate a certificate file");
  out_opts(replay, {"json"});
  replay->add_option("--certificate", cert_file, "certificate JSON")->required();
  replay->add_option("--max-degree", max_degree, "largest move degree allowed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*matrix) return cmd_matrix(c);
    if (*basis) return cmd_basis(c);
    if (*width) return cmd_width(c);
    if (*classify) return cmd_classify(c, degree, canonical);
    if (*forest) return cmd_forest(c, oracle, series);
    if (*verify) return cmd_verify(c, moves_file);
    if (*sample) return cmd_sample(c, moves_file, start_file, steps, proposal);
    if (*repro) return cmd_reproduce(c, columns);
    if (*reduce) return cmd_reduce(c, family, n, from, to);
    if (*replay) return cmd_replay(c, cert_file, max_degree);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

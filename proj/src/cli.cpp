#include "seedgraph/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "seedgraph/exchange_graph.hpp"
#include "seedgraph/two_forms.hpp"
#include "seedgraph/verification.hpp"

namespace seedgraph::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> table{
      {"A2", "0 1\n-1 0\n"},
      {"B2", "0 1\n-2 0\n"},
      {"G2", "0 1\n-3 0\n"},
      {"A3", "0 1 0\n-1 0 1\n0 -1 0\n"},
      {"markov", "0 2 -2\n-2 0 2\n2 -2 0\n"},
  };
  return table;
}

struct RunConfig {
  std::string matrix_file;
  std::string inline_matrix;
  std::string preset;
  std::string coeffs = "auto";
  std::string format = "text";
  std::size_t depth = 0;  // 0 picks the subcommand default
  std::size_t max_vertices = 0;
  std::size_t max_terms = 0;
  unsigned workers = 1;
  std::uint64_t rng_seed = 1;
  bool timing = false;
};

void add_input_options(CLI::App* sub, RunConfig& cfg) {
  auto* file = sub->add_option("-m,--matrix", cfg.matrix_file, "Exchange matrix file (JSON or plain rows); - for stdin");
  auto* text = sub->add_option("--inline", cfg.inline_matrix, "Matrix given inline, rows separated by ';'");
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  auto* preset = sub->add_option("--preset", cfg.preset, "Built-in matrix")->check(CLI::IsMember(names));
  file->excludes(text)->excludes(preset);
  text->excludes(preset);
  sub->add_option("--coeffs", cfg.coeffs, "auto | trivial | principal | tropical:<m> | file")->capture_default_str();
  sub->add_option("--rng-seed", cfg.rng_seed, "Seed for the tropical:<m> coefficient tuple")->capture_default_str();
}

void add_budget_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--depth", cfg.depth, "Depth limit");
  sub->add_option("--max-vertices", cfg.max_vertices, "Vertex budget (env SEEDGRAPH_MAX_VERTICES)");
  sub->add_option("--max-terms", cfg.max_terms, "Total term budget (env SEEDGRAPH_MAX_TERMS)");
  sub->add_option("--workers", cfg.workers, "Enumeration threads; 0 uses every core")->capture_default_str();
}

std::string read_input(const RunConfig& cfg) {
  if (!cfg.preset.empty()) return presets().at(cfg.preset);
  if (!cfg.inline_matrix.empty()) return cfg.inline_matrix;
  if (cfg.matrix_file.empty()) throw UsageError("no matrix given: use --matrix, --inline or --preset");
  if (cfg.matrix_file == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(cfg.matrix_file, std::ios::binary);
  if (!in) throw UsageError("cannot read " + cfg.matrix_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != std::string(v).size()) throw std::invalid_argument(v);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw UsageError(std::string(name) + " must be a nonnegative integer");
  }
}

EnumerationOptions enumeration_options(const RunConfig& cfg, std::size_t default_depth) {
  EnumerationOptions o;
  o.depth_limit = cfg.depth ? cfg.depth : default_depth;
  o.max_vertices = cfg.max_vertices ? cfg.max_vertices : env_size("SEEDGRAPH_MAX_VERTICES", o.max_vertices);
  o.max_total_terms = cfg.max_terms ? cfg.max_terms : env_size("SEEDGRAPH_MAX_TERMS", o.max_total_terms);
  o.workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  return o;
}

std::vector<TropicalElement> random_tuple(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::vector<TropicalElement> y;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(m);
    for (auto& x : e) x = entry(rng);
    y.emplace_back(std::move(e));
  }
  return y;
}

Seed build_seed(const ExchangeMatrix& input, const RunConfig& cfg) {
  std::string mode = cfg.coeffs;
  if (mode == "auto") mode = input.stable_count() ? "file" : "trivial";
  if (mode == "file") return Seed::initial_geometric(input);
  if (input.stable_count()) {
    throw UsageError("the matrix has stable columns; use --coeffs file (or auto) with it");
  }
  if (mode == "trivial") return Seed::coefficient_free(input);
  if (mode == "principal") return Seed::principal(input);
  if (mode.rfind("tropical:", 0) == 0) {
    std::size_t m = 0;
    try {
      std::size_t pos = 0;
      m = std::stoul(mode.substr(9), &pos);
      if (pos != mode.size() - 9) throw std::invalid_argument(mode);
    } catch (const std::exception&) {
      throw UsageError("--coeffs tropical:<m> needs a positive integer m");
    }
    if (m == 0) throw UsageError("--coeffs tropical:<m> needs a positive integer m");
    return Seed::initial_general(input, random_tuple(input.rank(), m, cfg.rng_seed));
  }
  throw UsageError("unknown coefficient mode '" + cfg.coeffs + "'");
}

// The extended matrix whose stable columns carry the seed's coefficients.
ExchangeMatrix extended_matrix(const Seed& s) {
  if (s.mode() == SeedMode::geometric) return s.matrix();
  const CoefficientTuple c = s.coefficients();
  const auto* trop = std::get_if<std::vector<TropicalElement>>(&c);
  if (!trop) return s.matrix();
  const std::size_t n = s.rank(), m = trop->front().rank();
  std::vector<std::vector<std::int64_t>> rows = s.matrix().entries().to_rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) rows[i].push_back((*trop)[i].exponents()[j]);
  }
  return ExchangeMatrix(IntMatrix::from_rows(rows));
}

Path parse_path(const std::string& text, std::size_t n) {
  Path p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size() || v < 1 || static_cast<std::size_t>(v) > n) {
      throw UsageError("bad direction '" + item + "' in path: directions are 1.." + std::to_string(n));
    }
    p.push_back(static_cast<std::size_t>(v - 1));
  }
  return p;
}

std::string join_path(const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i] + 1);
  }
  return s;
}

nlohmann::ordered_json seed_to_json(const Seed& s) {
  nlohmann::ordered_json j;
  j["mode"] = s.mode() == SeedMode::geometric ? "geometric" : "general";
  j["ambient"] = s.context()->names();
  nlohmann::ordered_json cluster = nlohmann::ordered_json::array();
  for (const auto& x : s.cluster()) cluster.push_back(x.to_string());
  j["cluster"] = std::move(cluster);
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  std::visit(
      [&](const auto& v) {
        for (const auto& y : v) coeffs.push_back(y.to_string());
      },
      s.coefficients());
  j["coefficients"] = std::move(coeffs);
  j["matrix"] = s.matrix().entries().to_rows();
  return j;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw UsageError("--format must be one of: " + list);
}

std::string summary_line(const ExchangeGraph& g) {
  std::string s = std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges, ";
  return s + (g.complete() ? "complete" : "incomplete (frontier reached)");
}

void print_graph_text(const ExchangeGraph& g, std::ostream& out) {
  out << summary_line(g) << '\n';
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  v" << v << " depth " << g.depth[v] << (g.frontier[v] ? " frontier" : "") << ": ";
    const auto& x = g.seeds[v].cluster();
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i].to_string();
    out << '\n';
  }
  for (const auto& e : g.edges) {
    out << "  v" << e.source << " -- v" << e.target << " [";
    for (std::size_t i = 0; i < e.directions.size(); ++i) out << (i ? "," : "") << e.directions[i] + 1;
    out << "]\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_mutate(const RunConfig& cfg, const std::string& path_text, std::ostream& out) {
  require_format(cfg, {"text", "json"});
  const Seed initial = build_seed(parse_exchange_matrix(read_input(cfg)), cfg);
  const Path path = parse_path(path_text, initial.rank());
  const Seed s = mutate_along(initial, path);
  const bool identical = s == initial;
  const bool equivalent = canonicalize_seed(s) == canonicalize_seed(initial);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["path"] = nlohmann::ordered_json::array();
    for (auto k : path) j["path"].push_back(k + 1);
    j["seed"] = seed_to_json(s);
    j["identical_to_initial"] = identical;
    j["equivalent_to_initial"] = equivalent;
    out << j.dump(2) << '\n';
  } else {
    out << "path: " << (path.empty() ? "(empty)" : join_path(path)) << '\n';
    out << describe(s);
    out << "identical to initial seed: " << (identical ? "yes" : "no") << '\n';
    out << "equivalent to initial seed: " << (equivalent ? "yes" : "no") << '\n';
  }
  return ok;
}

int cmd_enumerate(const RunConfig& cfg, bool export_only, std::ostream& out, std::ostream& err) {
  if (export_only) {
    require_format(cfg, {"dot", "json"});
  } else {
    require_format(cfg, {"text", "json", "dot"});
  }
  const Seed initial = build_seed(parse_exchange_matrix(read_input(cfg)), cfg);
  const EnumerationOptions opts = enumeration_options(cfg, 8);
  ExchangeGraph g;
  int code = ok;
  try {
    g = enumerate(initial, opts);
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    g = e.partial();
    code = budget;
  }
  if (cfg.format == "json") {
    out << export_graph(g, GraphFormat::json);
  } else if (cfg.format == "dot") {
    out << export_graph(g, GraphFormat::dot);
  } else {
    print_graph_text(g, out);
  }
  return code;
}

nlohmann::ordered_json basis_json(const std::vector<RationalMatrix>& basis) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& b : basis) arr.push_back(b.to_rows());
  return arr;
}

void print_rational(const RationalMatrix& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "   ";
    for (std::size_t j = 0; j < m.cols(); ++j) out << ' ' << m(i, j).get_str();
    out << '\n';
  }
}

int cmd_forms(const RunConfig& cfg, const std::string& mutate_text, std::ostream& out) {
  require_format(cfg, {"text", "json"});
  const Seed seed = build_seed(parse_exchange_matrix(read_input(cfg)), cfg);
  ExchangeMatrix b = extended_matrix(seed);
  const FormBasis fb = compatible_form_space(b);
  const std::size_t m = b.stable_count();

  std::vector<RationalMatrix> mutated = fb.basis;
  const Path path = parse_path(mutate_text, b.rank());
  ExchangeMatrix bm = b;
  for (auto k : path) {
    for (auto& omega : mutated) omega = mutate_form(omega, bm, k);
    bm = matrix_mutate(bm, k);
  }

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["matrix"] = to_json(b);
    j["dimension"] = fb.dimension;
    j["blocks"] = fb.block_count;
    j["stable_pairs"] = m * (m - 1) / 2;
    j["basis"] = basis_json(fb.basis);
    if (!path.empty()) {
      nlohmann::ordered_json jm;
      jm["path"] = nlohmann::ordered_json::array();
      for (auto k : path) jm["path"].push_back(k + 1);
      jm["matrix"] = to_json(bm);
      jm["basis"] = basis_json(mutated);
      j["mutated"] = std::move(jm);
    }
    out << j.dump(2) << '\n';
    return ok;
  }
  const std::size_t pairs = m * (m - 1) / 2;
  out << "dimension " << fb.dimension << " (" << fb.block_count << " block" << (fb.block_count == 1 ? "" : "s") << ", "
      << pairs << " stable pair" << (pairs == 1 ? "" : "s") << ")\n";
  for (std::size_t i = 0; i < fb.basis.size(); ++i) {
    out << "  basis " << i + 1 << ":\n";
    print_rational(fb.basis[i], out);
  }
  if (!path.empty()) {
    out << "after mutation along " << join_path(path) << ", matrix " << bm.entries().to_string() << ":\n";
    for (std::size_t i = 0; i < mutated.size(); ++i) {
      out << "  basis " << i + 1 << ":\n";
      print_rational(mutated[i], out);
    }
  }
  return ok;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"cluster-seed", "adjacency", "coincide", "g-spec", "toric", "laurent", "yhat"};
  return names;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& checks, std::size_t path_length, std::ostream& out,
               std::ostream& err) {
  require_format(cfg, {"text", "json"});
  const Seed initial = build_seed(parse_exchange_matrix(read_input(cfg)), cfg);
  const ExchangeMatrix b = initial.principal_matrix();
  const std::size_t depth = cfg.depth ? cfg.depth : 6;

  std::vector<std::string> selected;
  for (const auto& name : check_names()) {
    if (std::find(checks.begin(), checks.end(), "all") != checks.end() ||
        std::find(checks.begin(), checks.end(), name) != checks.end()) {
      selected.push_back(name);
    }
  }

  int code = ok;
  std::optional<ExchangeGraph> graph;
  auto need_graph = [&]() -> const ExchangeGraph& {
    if (!graph) {
      try {
        graph = enumerate(initial, enumeration_options(cfg, depth));
      } catch (const BudgetExceeded& e) {
        err << "budget exhausted: " << e.what() << '\n';
        graph = e.partial();
        code = budget;
      }
    }
    return *graph;
  };
  const std::vector<Path> paths = reduced_paths(initial.rank(), path_length);

  std::vector<VerificationReport> reports;
  for (const auto& name : selected) {
    if (name == "cluster-seed") {
      reports.push_back(check_cluster_determines_seed(need_graph()));
    } else if (name == "adjacency") {
      reports.push_back(check_adjacency(need_graph()));
    } else if (name == "coincide") {
      CoincidenceOptions co;
      co.depth = depth;
      reports.push_back(check_graph_coincidence(b, co));
    } else if (name == "g-spec") {
      reports.push_back(check_G_specialization(b, paths));
    } else if (name == "toric") {
      try {
        reports.push_back(check_toric_invariance(b, paths));
      } catch (const NondegenerateRequired&) {
        VerificationReport r;
        r.check = "toric";
        r.instance["matrix"] = describe_matrix(b);
        r.verdict = Verdict::inconclusive;
        r.note = "det B = 0: toric weights are not defined";
        reports.push_back(std::move(r));
      }
    } else if (name == "laurent") {
      LaurentOptions lo;
      lo.depth = depth;
      lo.enumeration = enumeration_options(cfg, depth);
      reports.push_back(check_laurent(initial, lo));
    } else if (name == "yhat") {
      reports.push_back(check_yhat(initial, paths));
    }
  }

  bool any_refuted = false;
  for (const auto& r : reports) any_refuted = any_refuted || r.verdict == Verdict::refuted;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json(cfg.timing));
    out << j.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << r.check << ": " << to_string(r.verdict);
      if (cfg.timing) out << " (" << r.seconds << " s)";
      out << '\n';
      if (!r.note.empty()) out << "  note: " << r.note << '\n';
      if (!r.witness.is_null()) out << "  witness: " << r.witness.dump() << '\n';
    }
  }
  if (any_refuted) return refuted;
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cluster-algebra seeds, mutations and exchange graphs", "seedgraph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "seedgraph 0.1.0");

  RunConfig cfg;
  std::string path_text, forms_path;
  std::vector<std::string> checks{"all"};
  std::size_t path_length = 4;

  auto* mutate_cmd = app.add_subcommand("mutate", "Mutate the initial seed along a path such as 1,2,1");
  mutate_cmd->add_option("path", path_text, "Comma-separated directions in 1..n")->required();
  add_input_options(mutate_cmd, cfg);
  mutate_cmd->add_option("--format", cfg.format, "text | json")->capture_default_str();

  auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate the exchange graph");
  add_input_options(enum_cmd, cfg);
  add_budget_options(enum_cmd, cfg);
  enum_cmd->add_option("--format", cfg.format, "text | json | dot")->capture_default_str();

  auto* export_cmd = app.add_subcommand("export", "Write the exchange graph as DOT or JSON");
  add_input_options(export_cmd, cfg);
  add_budget_options(export_cmd, cfg);
  export_cmd->add_option("--format", cfg.format, "dot | json")->default_str("dot");

  auto* forms_cmd = app.add_subcommand("forms", "Basis of compatible closed 2-forms");
  add_input_options(forms_cmd, cfg);
  forms_cmd->add_option("--mutate", forms_path, "Mutate the basis along a path such as 1 or 1,2");
  forms_cmd->add_option("--format", cfg.format, "text | json")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Check the structural theorems on this instance");
  add_input_options(verify_cmd, cfg);
  add_budget_options(verify_cmd, cfg);
  std::vector<std::string> allowed = check_names();
  allowed.push_back("all");
  verify_cmd->add_option("--check", checks, "all | cluster-seed | adjacency | coincide | g-spec | toric | laurent | yhat")
      ->delimiter(',')
      ->check(CLI::IsMember(allowed));
  verify_cmd->add_option("--path-length", path_length, "Longest path for the path-based checks")->capture_default_str();
  verify_cmd->add_option("--format", cfg.format, "text | json")->capture_default_str();
  verify_cmd->add_flag("--timing", cfg.timing, "Include wall time in the output");

  std::vector<const char*> argv{"seedgraph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }
  if (export_cmd->parsed() && cfg.format == "text") cfg.format = "dot";

  try {
    if (mutate_cmd->parsed()) return cmd_mutate(cfg, path_text, out);
    if (enum_cmd->parsed()) return cmd_enumerate(cfg, false, out, err);
    if (export_cmd->parsed()) return cmd_enumerate(cfg, true, out, err);
    if (forms_cmd->parsed()) return cmd_forms(cfg, forms_path, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, checks, path_length, out, err);
  } catch (const ParseError& e) {
    err << "error: malformed matrix: " << e.what() << '\n';
    return usage;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return budget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  }
  return usage;
}

}  // namespace seedgraph::cli

#include "seedgraph/exchange_graph.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace seedgraph {

std::vector<std::size_t> canonical_order(const Seed& s) {
  std::vector<std::size_t> order(s.rank());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& x = s.cluster();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return compare(x[a], x[b]) < 0; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (x[order[i - 1]] == x[order[i]]) {
      throw DegenerateSeed("cluster variable repeated: " + x[order[i]].to_string());
    }
  }
  return order;
}

std::string canonicalize_seed(const Seed& s) {
  const Seed c = s.permuted(canonical_order(s));
  std::string key = c.mode() == SeedMode::geometric ? "geometric|x:" : "general|x:";
  for (std::size_t i = 0; i < c.rank(); ++i) {
    if (i) key += ';';
    key += c.cluster()[i].to_string();
  }
  key += "|y:";
  std::visit(
      [&](const auto& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) key += ';';
          key += v[i].to_string();
        }
      },
      c.coefficients());
  key += "|b:";
  key += c.matrix().entries().to_string();
  return key;
}

// ---------------------------------------------------------------------------

bool ExchangeGraph::complete() const {
  return std::none_of(frontier.begin(), frontier.end(), [](bool f) { return f; });
}

std::size_t ExchangeGraph::degree(std::size_t v) const {
  std::set<std::size_t> distinct;
  for (const auto& nb : neighbors.at(v)) {
    if (nb && *nb != v) distinct.insert(*nb);
  }
  return distinct.size();
}

void ExchangeGraph::rebuild_edges() {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> labels;
  for (std::size_t u = 0; u < neighbors.size(); ++u) {
    for (std::size_t k = 0; k < neighbors[u].size(); ++k) {
      const auto& v = neighbors[u][k];
      if (!v || *v == u) continue;
      auto& entry = labels[{std::min(u, *v), std::max(u, *v)}];
      if (u < *v) entry.push_back(k);
    }
  }
  edges.clear();
  edges.reserve(labels.size());
  for (auto& [uv, dirs] : labels) edges.push_back({uv.first, uv.second, std::move(dirs)});
}

bool ExchangeGraph::operator==(const ExchangeGraph& other) const {
  return seeds == other.seeds && keys == other.keys && depth == other.depth && frontier == other.frontier &&
         neighbors == other.neighbors && edges == other.edges;
}

namespace {

struct Expansion {
  std::size_t vertex;
  std::size_t direction;
  std::optional<Seed> seed;
  std::string key;
};

// Computes every task's mutation and key. Results are written by index, so
// the outcome does not depend on how tasks are spread over workers.
void run_expansions(const ExchangeGraph& g, std::vector<Expansion>& tasks, unsigned workers) {
  auto work = [&](std::size_t i) {
    auto& t = tasks[i];
    t.seed.emplace(mutate(g.seeds[t.vertex], t.direction));
    t.key = canonicalize_seed(*t.seed);
  };
  if (workers <= 1 || tasks.size() < 2) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work(i);
    return;
  }
  const unsigned count = std::min<std::size_t>(workers, tasks.size());
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (unsigned w = 0; w < count; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < tasks.size(); i += count) work(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::size_t cluster_terms(const Seed& s) {
  std::size_t total = 0;
  for (const auto& x : s.cluster()) total += x.term_count();
  return total;
}

}  // namespace

ExchangeGraph enumerate(const Seed& initial, const EnumerationOptions& options) {
  const std::size_t n = initial.rank();
  std::vector<std::size_t> order = options.direction_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  } else {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted.size() != n || sorted[i] != i) throw BadDirection("direction order must be a permutation of 1..n");
    }
  }

  ExchangeGraph g;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t total_terms = 0;
  auto add_vertex = [&](Seed s, std::string key, std::size_t depth) {
    total_terms += cluster_terms(s);
    index.emplace(key, g.seeds.size());
    g.seeds.push_back(std::move(s));
    g.keys.push_back(std::move(key));
    g.depth.push_back(depth);
    g.frontier.push_back(false);
    g.neighbors.emplace_back(n);
    return g.seeds.size() - 1;
  };
  auto over_budget = [&]() -> std::optional<std::string> {
    if (g.vertex_count() > options.max_vertices) {
      return "vertex budget of " + std::to_string(options.max_vertices) + " exceeded";
    }
    if (total_terms > options.max_total_terms) {
      return "term budget of " + std::to_string(options.max_total_terms) + " exceeded";
    }
    return std::nullopt;
  };

  add_vertex(initial, canonicalize_seed(initial), 0);
  std::vector<std::size_t> level{0};
  while (!level.empty()) {
    std::vector<Expansion> tasks;
    for (auto u : level) {
      for (auto k : order) {
        if (!g.neighbors[u][k]) tasks.push_back({u, k, std::nullopt, {}});
      }
    }
    run_expansions(g, tasks, options.workers);

    std::vector<std::size_t> next;
    for (auto& t : tasks) {
      if (auto it = index.find(t.key); it != index.end()) {
        g.neighbors[t.vertex][t.direction] = it->second;
        continue;
      }
      if (g.depth[t.vertex] >= options.depth_limit) {
        g.frontier[t.vertex] = true;
        continue;
      }
      const std::size_t v = add_vertex(std::move(*t.seed), std::move(t.key), g.depth[t.vertex] + 1);
      g.neighbors[t.vertex][t.direction] = v;
      // The representative of v is the exact mutation of u, so the same
      // direction leads straight back.
      g.neighbors[v][t.direction] = t.vertex;
      next.push_back(v);
      if (auto why = over_budget()) {
        // Unexplored directions leave the partial graph open.
        for (std::size_t w = 0; w < g.vertex_count(); ++w) {
          const auto& nb = g.neighbors[w];
          if (std::any_of(nb.begin(), nb.end(), [](const auto& x) { return !x; })) g.frontier[w] = true;
        }
        g.rebuild_edges();
        throw BudgetExceeded(*why, std::move(g));
      }
    }
    level = std::move(next);
  }
  g.rebuild_edges();
  return g;
}

// ---------------------------------------------------------------------------

namespace {

std::string seed_label(const Seed& s) {
  std::string label;
  for (std::size_t i = 0; i < s.rank(); ++i) {
    if (i) label += ", ";
    label += s.cluster()[i].to_string();
  }
  return label;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

nlohmann::ordered_json coefficients_to_json(const Seed& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::visit(
      [&](const auto& v) {
        for (const auto& y : v) arr.push_back(y.to_string());
      },
      s.coefficients());
  return arr;
}

}  // namespace

nlohmann::ordered_json graph_to_json(const ExchangeGraph& g) {
  nlohmann::ordered_json j;
  const bool empty = g.seeds.empty();
  j["rank"] = g.rank();
  j["ambient"] = empty ? std::vector<std::string>{} : g.seeds.front().context()->names();
  std::string mode = "general";
  std::string semifield = "trivial";
  if (!empty) {
    const Seed& s0 = g.seeds.front();
    if (s0.mode() == SeedMode::geometric) {
      mode = "geometric";
      semifield = "tropical";
    } else if (std::holds_alternative<std::vector<TropicalElement>>(s0.coefficients())) {
      semifield = "tropical";
    }
  }
  j["mode"] = mode;
  j["semifield"] = semifield;
  j["complete"] = g.complete();
  j["vertex_count"] = g.vertex_count();
  j["edge_count"] = g.edge_count();
  auto& vertices = j["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const Seed& s = g.seeds[v];
    nlohmann::ordered_json jv;
    jv["id"] = v;
    jv["depth"] = g.depth[v];
    jv["frontier"] = static_cast<bool>(g.frontier[v]);
    nlohmann::ordered_json cluster = nlohmann::ordered_json::array();
    for (const auto& x : s.cluster()) cluster.push_back(x.to_string());
    jv["cluster"] = std::move(cluster);
    jv["coefficients"] = coefficients_to_json(s);
    jv["matrix"] = s.matrix().entries().to_rows();
    nlohmann::ordered_json nbs = nlohmann::ordered_json::array();
    for (const auto& nb : g.neighbors[v]) nbs.push_back(nb ? nlohmann::ordered_json(*nb) : nlohmann::ordered_json());
    jv["neighbors"] = std::move(nbs);
    vertices.push_back(std::move(jv));
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) {
    std::vector<std::size_t> labels;
    for (auto k : e.directions) labels.push_back(k + 1);
    edges.push_back({{"source", e.source}, {"target", e.target}, {"directions", labels}});
  }
  return j;
}

ExchangeGraph graph_from_json(const nlohmann::json& j) {
  ExchangeGraph g;
  const Context ctx = make_context(j.at("ambient").get<std::vector<std::string>>());
  const std::string mode = j.at("mode").get<std::string>();
  const std::string semifield = j.at("semifield").get<std::string>();
  const std::size_t n = j.at("rank").get<std::size_t>();
  for (const auto& jv : j.at("vertices")) {
    std::vector<LaurentPolynomial> cluster;
    for (const auto& x : jv.at("cluster")) cluster.push_back(LaurentPolynomial::parse(ctx, x.get<std::string>()));
    ExchangeMatrix b(IntMatrix::from_rows(jv.at("matrix").get<std::vector<std::vector<std::int64_t>>>()));
    if (mode == "geometric") {
      g.seeds.emplace_back(std::move(cluster), std::move(b));
    } else if (semifield == "tropical") {
      std::vector<TropicalElement> y;
      for (const auto& c : jv.at("coefficients")) y.push_back(TropicalElement::parse(c.get<std::string>()));
      g.seeds.emplace_back(std::move(cluster), std::move(y), std::move(b));
    } else {
      g.seeds.emplace_back(std::move(cluster), std::vector<TrivialElement>(n), std::move(b));
    }
    g.keys.push_back(canonicalize_seed(g.seeds.back()));
    g.depth.push_back(jv.at("depth").get<std::size_t>());
    g.frontier.push_back(jv.at("frontier").get<bool>());
    std::vector<std::optional<std::size_t>> nbs;
    for (const auto& nb : jv.at("neighbors")) {
      nbs.push_back(nb.is_null() ? std::nullopt : std::optional<std::size_t>(nb.get<std::size_t>()));
    }
    g.neighbors.push_back(std::move(nbs));
  }
  g.rebuild_edges();
  return g;
}

std::string export_graph(const ExchangeGraph& g, GraphFormat format) {
  if (format == GraphFormat::json) return graph_to_json(g).dump(2) + "\n";
  std::ostringstream os;
  os << "graph exchange {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << "  v" << v << " [label=\"" << dot_escape(seed_label(g.seeds[v])) << "\"";
    if (g.frontier[v]) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : g.edges) {
    os << "  v" << e.source << " -- v" << e.target << " [label=\"";
    for (std::size_t i = 0; i < e.directions.size(); ++i) {
      if (i) os << ',';
      os << e.directions[i] + 1;
    }
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

PathComparison compare_by_paths(const Seed& a, const Seed& b, std::size_t depth) {
  if (a.rank() != b.rank()) throw ContextMismatch("lockstep comparison needs equal rank");
  if (!(a.principal_matrix() == b.principal_matrix())) {
    throw ContextMismatch("lockstep comparison needs the same principal part");
  }
  const std::size_t n = a.rank();

  struct Node {
    Seed first;
    Seed second;
    std::vector<std::size_t> path;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> rep_first, rep_second;
  PathComparison result;

  auto visit = [&](Node node) -> bool {
    const std::size_t id = nodes.size();
    const auto ka = rep_first.try_emplace(canonicalize_seed(node.first), id).first->second;
    const auto kb = rep_second.try_emplace(canonicalize_seed(node.second), id).first->second;
    nodes.push_back(std::move(node));
    if (ka == kb) return true;
    // Exactly one side glued this tree vertex to an earlier one.
    result.coincide = false;
    result.glued_in_first = ka != id;
    const std::size_t other = result.glued_in_first ? ka : kb;
    result.witness.emplace(nodes[other].path, nodes[id].path);
    return false;
  };

  if (!visit({a, b, {}})) return result;
  std::size_t begin = 0;
  for (std::size_t d = 0; d < depth; ++d) {
    const std::size_t end = nodes.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!nodes[i].path.empty() && nodes[i].path.back() == k) continue;
        Node child{mutate(nodes[i].first, k), mutate(nodes[i].second, k), nodes[i].path};
        child.path.push_back(k);
        if (!visit(std::move(child))) {
          result.tree_vertices = nodes.size();
          return result;
        }
      }
    }
    begin = end;
  }
  result.tree_vertices = nodes.size();
  return result;
}

}  // namespace seedgraph

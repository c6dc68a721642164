#pragma once

// Exchange graphs: the quotient of the n-regular tree by seed equivalence.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedgraph/seed.hpp"

namespace seedgraph {

/// Byte string identifying a seed up to simultaneous permutation of the
/// cluster, the coefficients, and the rows and principal columns of the
/// matrix. Throws DegenerateSeed on a repeated cluster variable.
std::string canonicalize_seed(const Seed& s);

/// Permutation sorting the cluster ascending under compare(); applying it
/// with Seed::permuted yields the canonical representative.
std::vector<std::size_t> canonical_order(const Seed& s);

struct ExchangeGraph {
  struct Edge {
    std::size_t source;  // source < target
    std::size_t target;
    /// 0-based directions at the source vertex that reach the target.
    std::vector<std::size_t> directions;
    bool operator==(const Edge&) const = default;
  };

  std::vector<Seed> seeds;
  std::vector<std::string> keys;
  std::vector<std::size_t> depth;
  /// True when some direction at this vertex led past the depth limit, or
  /// was never explored because a budget ran out.
  std::vector<bool> frontier;
  /// neighbors[u][k]: vertex reached from u by direction k, if resolved.
  std::vector<std::vector<std::optional<std::size_t>>> neighbors;
  std::vector<Edge> edges;

  std::size_t vertex_count() const noexcept { return seeds.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t rank() const { return seeds.empty() ? 0 : seeds.front().rank(); }
  bool complete() const;
  std::size_t degree(std::size_t v) const;
  /// Rebuilds the edge list from the neighbor table.
  void rebuild_edges();

  bool operator==(const ExchangeGraph& other) const;
};

struct EnumerationOptions {
  std::size_t depth_limit = 8;
  std::size_t max_vertices = 1'000'000;
  /// Cap on the summed term count of all stored cluster variables.
  std::size_t max_total_terms = 50'000'000;
  unsigned workers = 1;
  /// Order in which directions are tried; empty means 0..n-1.
  std::vector<std::size_t> direction_order;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, ExchangeGraph partial) : Error(what), partial_(std::move(partial)) {}
  const ExchangeGraph& partial() const noexcept { return partial_; }

 private:
  ExchangeGraph partial_;
};

/// Breadth-first closure under mutation. Vertices at depth < depth_limit
/// are expanded and new classes are added; vertices at the limit are still
/// mutated so edges among known classes are resolved, but unseen classes
/// only mark them as frontier.
ExchangeGraph enumerate(const Seed& initial, const EnumerationOptions& options = {});

enum class GraphFormat { dot, json };

std::string export_graph(const ExchangeGraph& g, GraphFormat format);
nlohmann::ordered_json graph_to_json(const ExchangeGraph& g);
ExchangeGraph graph_from_json(const nlohmann::json& j);

/// Outcome of walking the tree in lockstep from two initial seeds.
struct PathComparison {
  bool coincide = true;
  std::size_t tree_vertices = 0;
  /// Two reduced paths (0-based directions) glued by exactly one of the two
  /// algebras; `glued_in_first` tells which.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> witness;
  bool glued_in_first = false;
};

/// Requires equal rank and equal principal part.
PathComparison compare_by_paths(const Seed& a, const Seed& b, std::size_t depth);

}  // namespace seedgraph

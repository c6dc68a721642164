#pragma once

// Machine checks of the structural theorems on concrete instances.
//
// Every check returns a report instead of throwing on a failed property; a
// refuted verdict always carries a witness that can be replayed (vertex
// pairs with their seeds, or a mutation path).

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedgraph/exchange_graph.hpp"
#include "seedgraph/seed.hpp"

namespace seedgraph {

enum class Verdict { confirmed, refuted, inconclusive };

std::string to_string(Verdict v);

struct VerificationReport {
  std::string check;
  nlohmann::ordered_json instance = nlohmann::ordered_json::object();
  Verdict verdict = Verdict::inconclusive;
  nlohmann::ordered_json witness;  // null unless refuted (or a diagnostic)
  nlohmann::ordered_json statistics = nlohmann::ordered_json::object();
  std::string note;
  double seconds = 0;

  /// Wall time is left out unless asked for, so reports are reproducible.
  nlohmann::ordered_json to_json(bool include_timing = false) const;
};

using Path = std::vector<std::size_t>;

/// Every reduced path (no immediate repetition) of length <= max_length in
/// lexicographic order, shortest first. Directions are 0-based.
std::vector<Path> reduced_paths(std::size_t n, std::size_t max_length);

/// Distinct vertices never share a cluster (as an unordered set).
VerificationReport check_cluster_determines_seed(const ExchangeGraph& g);

/// For every pair of vertices: exactly n-1 common cluster variables iff an
/// edge joins them.
VerificationReport check_adjacency(const ExchangeGraph& g);

struct CoincidenceOptions {
  std::size_t depth = 6;
  /// Seed of the generator for the random tropical tuple.
  std::uint64_t rng_seed = 20240613;
  /// Generators of the random tropical semifield; 0 means n.
  std::size_t tropical_rank = 0;
};

/// Lockstep comparison of the principal-coefficient and coefficient-free
/// algebras, and of a random tropical variant against the coefficient-free
/// one. Runs for degenerate B too, but then records that the theorem's
/// hypothesis is unmet and never reports a refutation.
VerificationReport check_graph_coincidence(const ExchangeMatrix& b, const CoincidenceOptions& options = {});

/// Principal-coefficient variables with the stable variables set to 1 agree
/// with the coefficient-free ones along each path.
VerificationReport check_G_specialization(const ExchangeMatrix& b, const std::vector<Path>& paths);

/// Scaling x_a by prod_j t_j^{w^j_a} multiplies each principal-coefficient
/// cluster variable by a Laurent monomial in t alone.
/// Throws NondegenerateRequired when det B = 0.
VerificationReport check_toric_invariance(const ExchangeMatrix& b, const std::vector<Path>& paths);

/// yhat at the end of each path equals the Y-pattern of the path evaluated
/// at the initial yhat.
VerificationReport check_yhat(const Seed& initial, const std::vector<Path>& paths);

struct LaurentOptions {
  std::size_t depth = 6;
  EnumerationOptions enumeration;
};

/// Enumerates to the given depth and re-mutates every vertex in every
/// direction, re-checking the exchange relation x_k * x'_k = M+ + M- by
/// multiplication. Reports the largest coefficient seen.
VerificationReport check_laurent(const Seed& initial, const LaurentOptions& options = {});

/// The same along one explicit path.
VerificationReport check_laurent_path(const Seed& initial, const Path& path);

/// Instance descriptor shared by the reports.
nlohmann::ordered_json describe_matrix(const ExchangeMatrix& b);

}  // namespace seedgraph

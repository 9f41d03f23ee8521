#ifndef INTERPOLSE_GENERATORS_HPP
#define INTERPOLSE_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace interpolse::gen {

/// Upper-triangular adjacency weights for a DAG on nodes 1..n; w[i][j] is the
/// weight of edge i->j (j > i), absent means no edge.
struct AdjMatrix {
  int n = 0;
  std::vector<std::vector<std::optional<long long>>> w;  // w[i][j], 1-based

  std::optional<long long> edge(int i, int j) const { return w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

/// Parses "20,35,110;40,90;60": row i lists weights for edges i->i+1..n,
/// with "-" or "x" for a missing edge.
AdjMatrix parse_matrix(int n, const std::string& text);

/// Random DAG that always contains the chain i->i+1 plus random skip edges;
/// deterministic in `seed`.
AdjMatrix layered_random(int n, std::uint64_t seed);

/// The 4-node graph used throughout the walk-through examples.
AdjMatrix example_matrix();

/// Distance program over the DAG: one choice variable per multi-successor
/// node, one guarded block per node expanding the weight-matrix reads into
/// branches, and a final assert(d >= bound).  Without `bound` the assert
/// references the named constant BOUND, to be supplied at parse time.
std::string gen_shortest_path(const AdjMatrix& m, std::optional<long long> bound);

/// N independent bit choices, each setting k_i to +1 or -1, followed by
/// assert(-n <= k_1+...+k_n) and assert(k_1+...+k_n <= n).
std::string gen_bitsum(int n);

/// Number of monotone 1->n paths in the DAG (independent oracle).
long long count_monotone_paths(const AdjMatrix& m);

/// Shortest 1->n distance, or nullopt if n is unreachable (oracle).
std::optional<long long> shortest_distance(const AdjMatrix& m);

}  // namespace interpolse::gen

#endif

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arrowlab/colouring.hpp"

namespace arrowlab {

/// Pairwise edge-disjoint graphs on vertices 0..n-1, with the criticality
/// parameters they are meant to satisfy.
struct ColourPattern {
  std::size_t n = 0;
  std::vector<Graph> members;
  std::size_t r = 0;
  std::size_t k = 0;
};

/// A maximum vertex set inducing no K_k, sorted. Exact branch and bound; n <= 64.
/// k = 1 gives the empty set.
std::vector<Vertex> max_kclique_free_subset(const Graph& g, std::size_t k);

struct CriticalityReport {
  bool critical = false;
  std::size_t threshold = 0;   // ceil(n / r)
  std::size_t max_free = 0;    // size of a largest K_k-free vertex set
  std::optional<std::vector<Vertex>> clique;     // a K_{k+1}, when present
  std::optional<std::vector<Vertex>> free_set;   // K_k-free set of size exactly threshold
};

/// (n, r, k)-criticality: no K_{k+1}, and every set of at least ceil(n/r)
/// vertices spans a K_k. Throws if g does not have n vertices.
CriticalityReport is_critical(const Graph& g, std::size_t n, std::size_t r, std::size_t k);

struct PatternReport {
  bool edge_disjoint = false;
  bool certified = false;  // edge-disjoint and every member critical
  std::vector<CriticalityReport> members;
  std::vector<std::string> problems;
};

PatternReport check_pattern(const ColourPattern& pattern);

struct PatternSearch {
  std::optional<ColourPattern> pattern;
  std::optional<std::size_t> trial;  // index of the successful trial
  std::size_t trials_run = 0;
  std::vector<std::string> warnings;
};

/// Draws balanced random r-partitions of E(K_n) and returns the one with least
/// trial index whose classes are all (n, r, k)-critical. Trial t uses its own
/// seed derived from `seed`, so the outcome is independent of `workers`.
PatternSearch random_critical_pattern(std::size_t r, std::size_t k, std::size_t n, std::size_t trials,
                                      std::uint64_t seed, unsigned workers = 1);

/// "pentagon2" (n <= 5) or "gf16-3" (n <= 16): a K3-free colouring of K_n in
/// complete_graph(n) edge order. Throws Error on unknown names or n.
EdgeColouring classical_colouring(std::string_view name, std::size_t n);

}  // namespace arrowlab

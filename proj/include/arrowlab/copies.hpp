#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "arrowlab/graph.hpp"

namespace arrowlab {

/// A (not necessarily induced) subgraph of a host isomorphic to some target.
struct EmbeddedCopy {
  std::vector<Vertex> vertex_image;  // target vertex -> host vertex, injective
  std::vector<EdgeId> edge_set;      // sorted host edge ids

  [[nodiscard]] std::vector<Vertex> vertex_set() const;  // sorted
};

/// Every copy of `target` in `host`, deduplicated by edge set and sorted by it.
struct CopyList {
  Graph target;
  Graph host;
  std::vector<EmbeddedCopy> copies;
  /// host edge id -> indices into `copies` containing it.
  std::vector<std::vector<std::size_t>> per_edge_index;

  [[nodiscard]] std::size_t size() const { return copies.size(); }
  [[nodiscard]] bool empty() const { return copies.empty(); }
};

/// Requires target.m() >= 1.
CopyList enumerate_copies(const Graph& host, const Graph& target);

/// Visits injective maps target -> host preserving target edges (one per
/// automorphic image, not deduplicated). The visitor returns false to stop.
/// Isolated target vertices are mapped to the lowest unused host vertices.
void for_each_embedding(const Graph& host, const Graph& target,
                        const std::function<bool(const std::vector<Vertex>&)>& visit);

std::optional<EmbeddedCopy> find_copy(const Graph& host, const Graph& target);
inline bool contains_copy(const Graph& host, const Graph& target) {
  return find_copy(host, target).has_value();
}

/// True iff `sub` (by vertex set) is an induced subgraph of host under `image`.
bool is_induced_image(const Graph& host, const Graph& sub, const std::vector<Vertex>& image);

}  // namespace arrowlab

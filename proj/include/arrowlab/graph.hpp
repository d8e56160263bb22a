#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arrowlab {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Raised for malformed inputs and violated preconditions throughout the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unordered vertex pair, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  [[nodiscard]] bool touches(Vertex w) const { return u == w || v == w; }
  [[nodiscard]] bool shares_vertex(const Edge& o) const {
    return touches(o.u) || touches(o.v);
  }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sentinel returned by distance() when no path exists.
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Immutable simple graph on vertices 0..n-1.
///
/// Edge ids are dense and follow lexicographic (u, v) order, so two graphs with
/// the same edge set number their edges identically.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n), incident_(n) {}
  /// Loops are rejected; repeated pairs collapse into one edge.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  [[nodiscard]] std::size_t n() const { return adjacency_.size(); }
  [[nodiscard]] std::size_t m() const { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const Edge& edge(EdgeId id) const { return edges_.at(id); }
  /// Sorted neighbour list.
  [[nodiscard]] const std::vector<Vertex>& neighbours(Vertex v) const { return adjacency_.at(v); }
  [[nodiscard]] std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  [[nodiscard]] bool adjacent(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }
  [[nodiscard]] std::optional<EdgeId> edge_id(Vertex a, Vertex b) const;
  [[nodiscard]] EdgeId require_edge(Vertex a, Vertex b) const;

  [[nodiscard]] Graph without_edge(EdgeId id) const;
  [[nodiscard]] Graph with_edges(std::span<const Edge> extra) const;
  /// Subgraph on the same vertex set keeping only the flagged edge ids.
  [[nodiscard]] Graph edge_subgraph(std::span<const EdgeId> keep) const;
  /// Induced subgraph; vertex i of the result is vertices[i].
  [[nodiscard]] Graph induced(std::span<const Vertex> vertices) const;
  [[nodiscard]] Graph complement() const;
  [[nodiscard]] std::size_t isolated_count() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n() == b.n() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  // Parallel to adjacency_: id of the edge to each neighbour.
  std::vector<std::vector<EdgeId>> incident_;
};

// --- standard families -------------------------------------------------------

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph empty_graph(std::size_t n);
/// K_k with a pendant edge attached to vertex 0.
Graph pendant_clique(std::size_t k);
/// Parses "K6", "C5", "P4", "E3", "K6-e", "K4.K2", "K3+2K2", "2K2", "K4+K1" ...
/// Returns nullopt if the string is not a recognised name.
std::optional<Graph> named_graph(std::string_view name);

// --- primitives -------------------------------------------------------------

struct UnionResult {
  Graph graph;
  std::vector<Vertex> left_map;   // vertex of g1 -> vertex of result
  std::vector<Vertex> right_map;  // vertex of g2 -> vertex of result
};
UnionResult disjoint_union(const Graph& g1, const Graph& g2);
/// Disjoint union of `copies` copies of g.
Graph disjoint_copies(const Graph& g, std::size_t copies);

enum class Orientation {
  Straight,  // lower endpoint of e2 onto lower endpoint of e1
  Crossed,   // lower endpoint of e2 onto higher endpoint of e1
};

struct IdentifyResult {
  Graph graph;
  /// Old vertex -> new vertex. The endpoints of e2 land on those of e1.
  std::vector<Vertex> vertex_map;
  Orientation orientation = Orientation::Straight;
  /// Number of edges lost because two edges became parallel.
  std::size_t collapsed = 0;
};
/// Merges the endpoints of e2 into those of e1. Throws if the edges share a vertex.
IdentifyResult identify_edges(const Graph& g, EdgeId e1, EdgeId e2,
                              Orientation orientation = Orientation::Straight);

/// Shortest path length between two vertex sets; 0 when they intersect.
std::size_t distance(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b);
std::size_t distance(const Graph& g, const Edge& a, const Edge& b);
/// BFS distances from a set of sources; unreachable vertices get kUnreachable.
std::vector<std::size_t> distances_from(const Graph& g, std::span<const Vertex> sources);

bool is_connected(const Graph& g);
std::size_t component_count(const Graph& g);
/// At least 4 vertices and no separating set of size <= 2.
bool is_three_connected(const Graph& g);

// --- graph6 ------------------------------------------------------------------

std::string to_graph6(const Graph& g);
/// Throws Error with the offending byte position on malformed input.
/// A leading ">>graph6<<" header and trailing newline are accepted.
Graph from_graph6(std::string_view text);

}  // namespace arrowlab

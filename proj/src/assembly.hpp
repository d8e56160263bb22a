#pragma once

// Incremental graph builder shared by the gadget and tower constructions.

#include <set>
#include <string>
#include <vector>

#include "arrowlab/gadgets.hpp"

namespace arrowlab::detail {

struct PieceSet {
  std::set<Vertex> vertices;
  std::set<Edge> edges;
};

class Assembly {
 public:
  Assembly() = default;
  explicit Assembly(const Graph& g);

  [[nodiscard]] std::size_t n() const { return n_; }
  Vertex add_vertex();
  Edge add_fresh_edge();
  /// Adds a new edge; throws if it already exists.
  void add_edge(Vertex a, Vertex b);
  [[nodiscard]] bool has_edge(Vertex a, Vertex b) const { return edges_.count(Edge(a, b)) > 0; }
  /// Registers an existing vertex or edge with the open parts.
  void touch(Vertex v);
  void touch(const Edge& e);

  /// Copies g in. `fixed` pins some g vertices onto existing vertices; edges of g
  /// listed in `shared` may coincide with existing edges, any other coincidence
  /// throws. Returns g vertex -> assembly vertex.
  std::vector<Vertex> attach(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& fixed,
                             const std::vector<EdgeId>& shared);

  /// Attaches a sender with s.e onto `a` and s.f onto `b`, lower endpoint onto
  /// lower endpoint, as its own leaf part.
  std::vector<Vertex> attach_sender(const SenderSpec& s, const Edge& a, const Edge& b, const std::string& role);

  /// Parts nest; everything added or touched while a part is open belongs to it.
  std::size_t open_part(std::string role, bool leaf, bool mock = false);
  void close_part();
  /// Id the next opened part will get.
  [[nodiscard]] std::size_t part_count() const { return records_.size(); }
  [[nodiscard]] const PieceSet& piece(std::size_t part) const { return pieces_.at(part); }

  [[nodiscard]] Graph graph() const;
  [[nodiscard]] std::vector<Part> parts(const Graph& g) const;
  [[nodiscard]] bool any_mock() const;

 private:
  struct Record {
    std::string role;
    int parent;
    bool leaf;
    bool mock;
  };
  std::size_t n_ = 0;
  std::set<Edge> edges_;
  std::vector<Record> records_;
  std::vector<PieceSet> pieces_;
  std::vector<std::size_t> open_;
};

TPiece to_piece(const Graph& g, const PieceSet& p);

/// Completes `colours` on part_edges (a gadget part of host) with an h-free
/// q-colouring of the part that keeps the already set entries. False if none exists.
bool fill_part(const Graph& host, const Part& part, const Graph& h, std::size_t q, std::vector<Colour>& colours,
               const std::vector<EdgeId>& part_edges, const SolveOptions& options);

}  // namespace arrowlab::detail

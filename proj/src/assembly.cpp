#include "assembly.hpp"

#include <algorithm>

namespace arrowlab::detail {

Assembly::Assembly(const Graph& g) : n_(g.n()), edges_(g.edges().begin(), g.edges().end()) {}

Vertex Assembly::add_vertex() {
  const auto v = static_cast<Vertex>(n_++);
  touch(v);
  return v;
}

Edge Assembly::add_fresh_edge() {
  const Vertex a = add_vertex();
  const Vertex b = add_vertex();
  add_edge(a, b);
  return Edge(a, b);
}

void Assembly::add_edge(Vertex a, Vertex b) {
  if (a == b || a >= n_ || b >= n_) throw Error("assembly: bad edge");
  if (!edges_.insert(Edge(a, b)).second)
    throw Error("assembly: edge " + std::to_string(a) + "-" + std::to_string(b) + " would become parallel");
  touch(Edge(a, b));
}

void Assembly::touch(Vertex v) {
  for (std::size_t p : open_) pieces_[p].vertices.insert(v);
}

void Assembly::touch(const Edge& e) {
  for (std::size_t p : open_) {
    pieces_[p].vertices.insert(e.u);
    pieces_[p].vertices.insert(e.v);
    pieces_[p].edges.insert(e);
  }
}

std::vector<Vertex> Assembly::attach(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& fixed,
                                     const std::vector<EdgeId>& shared) {
  std::vector<Vertex> map(g.n(), static_cast<Vertex>(-1));
  std::set<Vertex> targets;
  for (const auto& [from, to] : fixed) {
    if (from >= g.n() || to >= n_) throw Error("assembly: bad identification");
    if (map[from] != static_cast<Vertex>(-1) && map[from] != to) throw Error("assembly: conflicting identification");
    if (map[from] == static_cast<Vertex>(-1) && !targets.insert(to).second)
      throw Error("assembly: identification merges two vertices");
    map[from] = to;
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (map[v] == static_cast<Vertex>(-1)) map[v] = add_vertex();
    else touch(map[v]);
  for (EdgeId id = 0; id < g.m(); ++id) {
    const Edge& e = g.edge(id);
    const Edge image(map[e.u], map[e.v]);
    if (edges_.count(image)) {
      if (std::find(shared.begin(), shared.end(), id) == shared.end())
        throw Error("assembly: edge " + std::to_string(image.u) + "-" + std::to_string(image.v) +
                    " would become parallel");
      touch(image);
    } else {
      add_edge(image.u, image.v);
    }
  }
  return map;
}

std::vector<Vertex> Assembly::attach_sender(const SenderSpec& s, const Edge& a, const Edge& b,
                                            const std::string& role) {
  if (a.shares_vertex(b)) throw Error("cannot join edges that share a vertex");
  open_part(role, true, s.provenance == Provenance::Mock);
  const Edge& se = s.graph.edge(s.e);
  const Edge& sf = s.graph.edge(s.f);
  auto map = attach(s.graph, {{se.u, a.u}, {se.v, a.v}, {sf.u, b.u}, {sf.v, b.v}}, {s.e, s.f});
  close_part();
  return map;
}

std::size_t Assembly::open_part(std::string role, bool leaf, bool mock) {
  const int parent = open_.empty() ? -1 : static_cast<int>(open_.back());
  records_.push_back({std::move(role), parent, leaf, mock});
  pieces_.emplace_back();
  open_.push_back(records_.size() - 1);
  return records_.size() - 1;
}

void Assembly::close_part() {
  if (open_.empty()) throw std::logic_error("assembly: no open part");
  open_.pop_back();
}

Graph Assembly::graph() const {
  std::vector<Edge> es(edges_.begin(), edges_.end());
  return Graph(n_, es);
}

TPiece to_piece(const Graph& g, const PieceSet& p) {
  TPiece t;
  t.vertices.assign(p.vertices.begin(), p.vertices.end());
  for (const Edge& e : p.edges) t.edges.push_back(g.require_edge(e.u, e.v));
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

std::vector<Part> Assembly::parts(const Graph& g) const {
  std::vector<Part> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    Part p;
    p.role = records_[i].role;
    p.parent = records_[i].parent;
    p.leaf = records_[i].leaf;
    p.mock = records_[i].mock;
    TPiece t = to_piece(g, pieces_[i]);
    p.vertices = std::move(t.vertices);
    p.edges = std::move(t.edges);
    out.push_back(std::move(p));
  }
  return out;
}

bool Assembly::any_mock() const {
  return std::any_of(records_.begin(), records_.end(), [](const Record& r) { return r.mock; });
}

bool fill_part(const Graph& host, const Part& part, const Graph& h, std::size_t q, std::vector<Colour>& colours,
               const std::vector<EdgeId>& part_edges, const SolveOptions& options) {
  std::vector<Vertex> index(host.n(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < part.vertices.size(); ++i) index[part.vertices[i]] = static_cast<Vertex>(i);
  std::vector<Edge> local;
  for (EdgeId x : part_edges) local.emplace_back(index[host.edge(x).u], index[host.edge(x).v]);
  const Graph sub(part.vertices.size(), local);
  ColourConstraintSet cs = ColourConstraintSet::uniform(sub, h, q);
  for (EdgeId x : part_edges)
    if (colours[x] != 0) cs.pin(sub.require_edge(index[host.edge(x).u], index[host.edge(x).v]), colours[x]);
  auto cert = solve(sub, cs, options);
  if (cert.verdict == Verdict::Arrow) return false;
  for (EdgeId x : part_edges)
    colours[x] = (*cert.witness)[sub.require_edge(index[host.edge(x).u], index[host.edge(x).v])];
  return true;
}

}  // namespace arrowlab::detail

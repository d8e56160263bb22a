#include "arrowlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

namespace arrowlab {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n), incident_(n) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) throw Error("loop at vertex " + std::to_string(e.u));
    if (e.v >= n) throw Error("edge endpoint " + std::to_string(e.v) + " out of range");
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[e.u].push_back(e.v);
    incident_[e.u].push_back(id);
    adjacency_[e.v].push_back(e.u);
    incident_[e.v].push_back(id);
  }
  // Lexicographic edge order already sorts the higher-neighbour lists; the lower
  // neighbours arrive out of order, so sort both lists together.
  for (std::size_t v = 0; v < n; ++v) {
    auto& nb = adjacency_[v];
    auto& ids = incident_[v];
    std::vector<std::size_t> order(nb.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nb[a] < nb[b]; });
    std::vector<Vertex> nb2(nb.size());
    std::vector<EdgeId> ids2(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      nb2[i] = nb[order[i]];
      ids2[i] = ids[order[i]];
    }
    nb = std::move(nb2);
    ids = std::move(ids2);
  }
}

std::optional<EdgeId> Graph::edge_id(Vertex a, Vertex b) const {
  if (a >= n() || b >= n() || a == b) return std::nullopt;
  const auto& nb = adjacency_[a];
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return std::nullopt;
  return incident_[a][static_cast<std::size_t>(it - nb.begin())];
}

EdgeId Graph::require_edge(Vertex a, Vertex b) const {
  auto id = edge_id(a, b);
  if (!id) throw Error("no edge " + std::to_string(a) + "-" + std::to_string(b));
  return *id;
}

Graph Graph::without_edge(EdgeId id) const {
  if (id >= m()) throw Error("edge id out of range");
  std::vector<Edge> rest;
  rest.reserve(m() - 1);
  for (EdgeId i = 0; i < m(); ++i)
    if (i != id) rest.push_back(edges_[i]);
  return Graph(n(), rest);
}

Graph Graph::with_edges(std::span<const Edge> extra) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph(n(), all);
}

Graph Graph::edge_subgraph(std::span<const EdgeId> keep) const {
  std::vector<Edge> sub;
  sub.reserve(keep.size());
  for (EdgeId id : keep) sub.push_back(edge(id));
  return Graph(n(), sub);
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> index(n(), std::numeric_limits<Vertex>::max());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= n()) throw Error("induced: vertex out of range");
    index[vertices[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> sub;
  for (const Edge& e : edges_) {
    if (index[e.u] != std::numeric_limits<Vertex>::max() &&
        index[e.v] != std::numeric_limits<Vertex>::max())
      sub.emplace_back(index[e.u], index[e.v]);
  }
  return Graph(vertices.size(), sub);
}

Graph Graph::complement() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v = u + 1; v < n(); ++v)
      if (!adjacent(u, v)) out.emplace_back(u, v);
  return Graph(n(), out);
}

std::size_t Graph::isolated_count() const {
  return static_cast<std::size_t>(
      std::count_if(adjacency_.begin(), adjacency_.end(), [](const auto& nb) { return nb.empty(); }));
}

// --- families ----------------------------------------------------------------

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph(n, e);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph pendant_clique(std::size_t k) {
  auto edges = complete_graph(k).edges();
  edges.emplace_back(0, static_cast<Vertex>(k));
  return Graph(k + 1, edges);
}

namespace {

bool parse_uint(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::optional<Graph> named_term(std::string_view term) {
  std::size_t count = 1;
  std::size_t i = 0;
  while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
  if (i > 0) {
    if (!parse_uint(term.substr(0, i), count) || count == 0) return std::nullopt;
    term.remove_prefix(i);
  }
  if (term.size() < 2) return std::nullopt;
  const char kind = term[0];
  std::string_view rest = term.substr(1);
  std::optional<Graph> base;
  std::size_t n = 0;
  if (kind == 'K' && rest.ends_with("-e")) {
    if (!parse_uint(rest.substr(0, rest.size() - 2), n) || n < 2) return std::nullopt;
    base = complete_graph(n).without_edge(0);
  } else if (kind == 'K' && rest.ends_with(".K2")) {
    if (!parse_uint(rest.substr(0, rest.size() - 3), n) || n < 1) return std::nullopt;
    base = pendant_clique(n);
  } else {
    if (!parse_uint(rest, n)) return std::nullopt;
    switch (kind) {
      case 'K': base = complete_graph(n); break;
      case 'C':
        if (n < 3) return std::nullopt;
        base = cycle_graph(n);
        break;
      case 'P': base = path_graph(n); break;
      case 'E': base = empty_graph(n); break;
      default: return std::nullopt;
    }
  }
  return disjoint_copies(*base, count);
}

}  // namespace

std::optional<Graph> named_graph(std::string_view name) {
  std::optional<Graph> acc;
  while (!name.empty()) {
    auto plus = name.find('+');
    auto term = named_term(name.substr(0, plus));
    if (!term) return std::nullopt;
    acc = acc ? disjoint_union(*acc, *term).graph : *term;
    if (plus == std::string_view::npos) break;
    name.remove_prefix(plus + 1);
    if (name.empty()) return std::nullopt;
  }
  return acc;
}

// --- primitives -------------------------------------------------------------

UnionResult disjoint_union(const Graph& g1, const Graph& g2) {
  UnionResult out;
  const auto shift = static_cast<Vertex>(g1.n());
  out.left_map.resize(g1.n());
  std::iota(out.left_map.begin(), out.left_map.end(), Vertex{0});
  out.right_map.resize(g2.n());
  std::iota(out.right_map.begin(), out.right_map.end(), shift);
  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges()) edges.emplace_back(e.u + shift, e.v + shift);
  out.graph = Graph(g1.n() + g2.n(), edges);
  return out;
}

Graph disjoint_copies(const Graph& g, std::size_t copies) {
  std::vector<Edge> edges;
  edges.reserve(g.m() * copies);
  for (std::size_t c = 0; c < copies; ++c) {
    const auto shift = static_cast<Vertex>(c * g.n());
    for (const Edge& e : g.edges()) edges.emplace_back(e.u + shift, e.v + shift);
  }
  return Graph(g.n() * copies, edges);
}

IdentifyResult identify_edges(const Graph& g, EdgeId e1, EdgeId e2, Orientation orientation) {
  const Edge a = g.edge(e1);
  const Edge b = g.edge(e2);
  if (e1 == e2 || a.shares_vertex(b)) throw Error("identify_edges: edges must be vertex-disjoint");

  // Merge target for every vertex, before compaction.
  std::vector<Vertex> target(g.n());
  std::iota(target.begin(), target.end(), Vertex{0});
  if (orientation == Orientation::Straight) {
    target[b.u] = a.u;
    target[b.v] = a.v;
  } else {
    target[b.u] = a.v;
    target[b.v] = a.u;
  }
  IdentifyResult out;
  out.orientation = orientation;
  out.vertex_map.resize(g.n());
  Vertex next = 0;
  std::vector<Vertex> compact(g.n());
  for (Vertex v = 0; v < g.n(); ++v)
    if (v != b.u && v != b.v) compact[v] = next++;
  for (Vertex v = 0; v < g.n(); ++v) out.vertex_map[v] = compact[target[v]];

  std::vector<Edge> edges;
  edges.reserve(g.m());
  for (const Edge& e : g.edges()) edges.emplace_back(out.vertex_map[e.u], out.vertex_map[e.v]);
  out.graph = Graph(next, edges);
  out.collapsed = g.m() - out.graph.m();
  return out;
}

std::vector<std::size_t> distances_from(const Graph& g, std::span<const Vertex> sources) {
  std::vector<std::size_t> dist(g.n(), kUnreachable);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (s >= g.n()) throw Error("distance: vertex out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbours(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t distance(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  if (a.empty() || b.empty()) throw Error("distance: vertex sets must be nonempty");
  auto dist = distances_from(g, a);
  std::size_t best = kUnreachable;
  for (Vertex v : b) {
    if (v >= g.n()) throw Error("distance: vertex out of range");
    best = std::min(best, dist[v]);
  }
  return best;
}

std::size_t distance(const Graph& g, const Edge& a, const Edge& b) {
  const Vertex av[] = {a.u, a.v};
  const Vertex bv[] = {b.u, b.v};
  return distance(g, av, bv);
}

namespace {

// Connectivity of g after deleting the flagged vertices.
bool connected_without(const Graph& g, const std::vector<char>& removed) {
  Vertex start = 0;
  std::size_t remaining = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!removed[v]) {
      if (remaining == 0) start = v;
      ++remaining;
    }
  if (remaining <= 1) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbours(v)) {
      if (!removed[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == remaining;
}

}  // namespace

bool is_connected(const Graph& g) { return connected_without(g, std::vector<char>(g.n(), 0)); }

std::size_t component_count(const Graph& g) {
  std::vector<char> seen(g.n(), 0);
  std::size_t count = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbours(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return count;
}

bool is_three_connected(const Graph& g) {
  if (g.n() < 4) return false;
  std::vector<char> removed(g.n(), 0);
  if (!connected_without(g, removed)) return false;
  for (Vertex a = 0; a < g.n(); ++a) {
    removed[a] = 1;
    if (!connected_without(g, removed)) return false;
    for (Vertex b = a + 1; b < g.n(); ++b) {
      removed[b] = 1;
      bool ok = connected_without(g, removed);
      removed[b] = 0;
      if (!ok) return false;
    }
    removed[a] = 0;
  }
  return true;
}

// --- graph6 ------------------------------------------------------------------

namespace {

constexpr int kBias = 63;
constexpr std::string_view kHeader = ">>graph6<<";

std::string encode_size(std::size_t n) {
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  } else if (n <= 68719476735ULL) {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  } else {
    throw Error("graph6: graph too large");
  }
  return out;
}

[[noreturn]] void malformed(std::size_t pos, const std::string& why) {
  throw Error("graph6: " + why + " at byte " + std::to_string(pos));
}

}  // namespace

std::string to_graph6(const Graph& g) {
  const std::size_t n = g.n();
  std::string out = encode_size(n);
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::vector<char> bitvec(bits, 0);
  // Column-major upper triangle: bit index of (i, j), i < j, is j(j-1)/2 + i.
  for (const Edge& e : g.edges()) bitvec[static_cast<std::size_t>(e.v) * (e.v - 1) / 2 + e.u] = 1;
  for (std::size_t i = 0; i < bits; i += 6) {
    int value = 0;
    for (std::size_t k = 0; k < 6; ++k) {
      value <<= 1;
      if (i + k < bits && bitvec[i + k]) value |= 1;
    }
    out.push_back(static_cast<char>(value + kBias));
  }
  return out;
}

Graph from_graph6(std::string_view text) {
  std::size_t offset = 0;
  if (text.starts_with(kHeader)) {
    text.remove_prefix(kHeader.size());
    offset = kHeader.size();
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) malformed(offset, "empty input");

  auto digit = [&](std::size_t pos) -> int {
    if (pos >= text.size()) malformed(offset + pos, "truncated input");
    int c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126) malformed(offset + pos, "byte outside 63..126");
    return c - kBias;
  };

  std::size_t n = 0;
  std::size_t pos = 0;
  if (static_cast<unsigned char>(text[0]) != 126) {
    n = static_cast<std::size_t>(digit(0));
    pos = 1;
  } else if (text.size() > 1 && static_cast<unsigned char>(text[1]) == 126) {
    for (std::size_t k = 2; k < 8; ++k) n = (n << 6) | static_cast<std::size_t>(digit(k));
    pos = 8;
    if (n <= 258047) malformed(offset, "non-canonical size encoding");
  } else {
    for (std::size_t k = 1; k < 4; ++k) n = (n << 6) | static_cast<std::size_t>(digit(k));
    pos = 4;
    if (n <= 62) malformed(offset, "non-canonical size encoding");
  }

  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (text.size() - pos < bytes) malformed(offset + text.size(), "truncated edge data");
  if (text.size() - pos > bytes) malformed(offset + pos + bytes, "trailing bytes");

  std::vector<Edge> edges;
  std::size_t bit = 0;
  Vertex i = 0;
  Vertex j = 1;
  for (std::size_t b = 0; b < bytes; ++b) {
    const int value = digit(pos + b);
    for (int k = 5; k >= 0; --k, ++bit) {
      const bool set = (value >> k) & 1;
      if (bit >= bits) {
        if (set) malformed(offset + pos + b, "nonzero padding bit");
        continue;
      }
      if (set) edges.emplace_back(i, j);
      if (++i == j) {
        i = 0;
        ++j;
      }
    }
  }
  return Graph(n, edges);
}

}  // namespace arrowlab

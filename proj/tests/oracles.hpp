#pragma once

// Brute-force reference implementations. Nothing here calls into the search
// engine or the copy enumerator; tests compare those against these.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "arrowlab/graph.hpp"

namespace oracle {

using arrowlab::Edge;
using arrowlab::Graph;
using arrowlab::Vertex;

inline bool adj(const Graph& g, Vertex a, Vertex b) {
  for (const Edge& e : g.edges())
    if (e == Edge(a, b)) return true;
  return false;
}

inline int edge_index(const Graph& g, Vertex a, Vertex b) {
  const Edge want(a, b);
  for (std::size_t i = 0; i < g.m(); ++i)
    if (g.edges()[i] == want) return static_cast<int>(i);
  return -1;
}

/// All copies of target in host as sorted edge-id sets, via every injective map.
inline std::set<std::vector<std::uint32_t>> copies(const Graph& host, const Graph& target) {
  std::set<std::vector<std::uint32_t>> out;
  const std::size_t k = target.n();
  if (k > host.n()) return out;
  std::vector<Vertex> image(k);
  std::vector<char> used(host.n(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      std::vector<std::uint32_t> ids;
      for (const Edge& e : target.edges()) {
        const int id = edge_index(host, image[e.u], image[e.v]);
        if (id < 0) return;
        ids.push_back(static_cast<std::uint32_t>(id));
      }
      std::sort(ids.begin(), ids.end());
      out.insert(ids);
      return;
    }
    for (Vertex h = 0; h < host.n(); ++h) {
      if (used[h]) continue;
      used[h] = 1;
      image[i] = h;
      rec(i + 1);
      used[h] = 0;
    }
  };
  rec(0);
  return out;
}

/// Visits every total q-colouring (colours 1..q) of m edges; stop by returning false.
inline void each_colouring(std::size_t m, std::size_t q,
                           const std::function<bool(const std::vector<std::uint8_t>&)>& visit) {
  std::vector<std::uint8_t> c(m, 1);
  for (;;) {
    if (!visit(c)) return;
    std::size_t i = 0;
    while (i < m && c[i] == q) c[i++] = 1;
    if (i == m) return;
    ++c[i];
  }
}

/// Constraint description for the brute-force colouring oracle.
struct Constraints {
  std::vector<Graph> forbidden;  // per colour; a graph with 0 edges means unrestricted
  std::vector<std::pair<std::uint32_t, std::uint8_t>> pins;
  struct L {
    std::uint32_t a, b;
    bool same;
  };
  std::vector<L> links;
};

inline bool satisfies(const Graph& host, const Constraints& cs, const std::vector<std::uint8_t>& c,
                      const std::vector<std::set<std::vector<std::uint32_t>>>& copy_sets) {
  for (auto [e, col] : cs.pins)
    if (c[e] != col) return false;
  for (const auto& l : cs.links)
    if ((c[l.a] == c[l.b]) != l.same) return false;
  for (std::size_t i = 0; i < cs.forbidden.size(); ++i)
    for (const auto& copy : copy_sets[i]) {
      bool mono = true;
      for (auto e : copy)
        if (c[e] != i + 1) {
          mono = false;
          break;
        }
      if (mono) return false;
    }
  (void)host;
  return true;
}

/// First satisfying colouring in lexicographic order (edge 0 most significant).
inline std::optional<std::vector<std::uint8_t>> first_colouring(const Graph& host, const Constraints& cs) {
  const std::size_t q = cs.forbidden.size();
  std::vector<std::set<std::vector<std::uint32_t>>> copy_sets;
  for (const Graph& t : cs.forbidden)
    copy_sets.push_back(t.m() == 0 ? std::set<std::vector<std::uint32_t>>{} : copies(host, t));
  // Enumerate in lexicographic order with the first edge most significant.
  const std::size_t m = host.m();
  std::vector<std::uint8_t> c(m, 1);
  for (;;) {
    if (satisfies(host, cs, c, copy_sets)) return c;
    std::size_t i = m;
    while (i > 0 && c[i - 1] == q) c[--i] = 1;
    if (i == 0) return std::nullopt;
    ++c[i - 1];
  }
}

inline std::size_t count_colourings(const Graph& host, const Constraints& cs) {
  std::vector<std::set<std::vector<std::uint32_t>>> copy_sets;
  for (const Graph& t : cs.forbidden)
    copy_sets.push_back(t.m() == 0 ? std::set<std::vector<std::uint32_t>>{} : copies(host, t));
  std::size_t count = 0;
  each_colouring(host.m(), cs.forbidden.size(), [&](const std::vector<std::uint8_t>& c) {
    if (satisfies(host, cs, c, copy_sets)) ++count;
    return true;
  });
  return count;
}

inline bool connected_without(const Graph& g, const std::vector<char>& removed) {
  std::vector<char> seen(g.n(), 0);
  Vertex start = static_cast<Vertex>(g.n());
  std::size_t alive = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!removed[v]) {
      ++alive;
      if (start == g.n()) start = v;
    }
  if (alive <= 1) return true;
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w = 0; w < g.n(); ++w)
      if (!removed[w] && !seen[w] && adj(g, v, w)) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == alive;
}

/// Minimum vertex cut of size <= 2 by trying all singletons and pairs.
inline bool three_connected(const Graph& g) {
  if (g.n() < 4) return false;
  std::vector<char> removed(g.n(), 0);
  if (!connected_without(g, removed)) return false;
  for (Vertex a = 0; a < g.n(); ++a) {
    removed[a] = 1;
    if (!connected_without(g, removed)) return false;
    for (Vertex b = a + 1; b < g.n(); ++b) {
      removed[b] = 1;
      const bool ok = connected_without(g, removed);
      removed[b] = 0;
      if (!ok) return false;
    }
    removed[a] = 0;
  }
  return true;
}

inline bool has_clique_in(const Graph& g, std::uint64_t subset, std::size_t k) {
  std::vector<Vertex> vs;
  for (Vertex v = 0; v < g.n(); ++v)
    if (subset >> v & 1) vs.push_back(v);
  if (k == 0) return true;
  if (vs.size() < k) return false;
  std::vector<Vertex> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == k) return true;
    for (std::size_t i = from; i < vs.size(); ++i) {
      bool ok = true;
      for (Vertex p : pick)
        if (!adj(g, p, vs[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pick.push_back(vs[i]);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

/// Direct criticality definition: no K_{k+1}, and every subset of size >= ceil(n/r) holds a K_k.
inline bool critical(const Graph& g, std::size_t r, std::size_t k) {
  const std::size_t n = g.n();
  const std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  if (has_clique_in(g, all, k + 1)) return false;
  const std::size_t threshold = (n + r - 1) / r;
  for (std::uint64_t s = 0; s <= all; ++s) {
    if (static_cast<std::size_t>(__builtin_popcountll(s)) < threshold) continue;
    if (!has_clique_in(g, s, k)) return false;
    if (s == all) break;
  }
  return true;
}

/// Largest vertex subset inducing no K_k, by full subset enumeration.
inline std::size_t max_kfree(const Graph& g, std::size_t k) {
  const std::size_t n = g.n();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(s));
    if (size <= best) continue;
    if (!has_clique_in(g, s, k)) best = size;
  }
  return best;
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) es.emplace_back(u, v);
  return Graph(n, es);
}

/// Truth table of the sender and indicator properties over every colouring,
/// quantifying over all colour pairs explicitly (no symmetry shortcuts).
struct GadgetTruth {
  bool s1 = false;             // some H-free colouring exists
  bool equal_forced = true;    // every H-free colouring has c(a) == c(b)
  bool differ_forced = true;   // every H-free colouring has c(a) != c(b)
  bool i1 = true, i2 = true, i3 = true, i3prime = true;
};

/// `f_edges` empty skips the indicator fields. a, b are the sender signal edges
/// (for indicators pass e twice; only s1 is meaningful then).
inline GadgetTruth gadget_truth(const Graph& g, const Graph& h, std::size_t q, std::uint32_t a, std::uint32_t b,
                                const std::vector<std::uint32_t>& f_edges, std::uint32_t e) {
  const auto all = copies(g, h);
  const std::vector<std::vector<std::uint32_t>> list(all.begin(), all.end());
  const std::size_t nf = f_edges.size();
  // per colour i: I1 witness seen; I2 violated
  std::vector<char> i1_seen(q + 1, 0), i2_bad(q + 1, 0);
  // I3 witness per (f, i, j); I3' per (l, i, j)
  std::vector<char> i3_seen(nf * (q + 1) * (q + 1), 0), i3p_seen(2 * (q + 1) * (q + 1), 0);
  GadgetTruth t;
  each_colouring(g.m(), q, [&](const std::vector<std::uint8_t>& c) {
    // mono[k]: copy k is monochromatic
    bool free_all = true;
    std::vector<char> free_without(nf, 1);
    for (const auto& copy : list) {
      bool mono = true;
      for (auto x : copy)
        if (c[x] != c[copy[0]]) {
          mono = false;
          break;
        }
      if (!mono) continue;
      free_all = false;
      for (std::size_t k = 0; k < nf; ++k)
        if (std::find(copy.begin(), copy.end(), f_edges[k]) == copy.end()) free_without[k] = 0;
    }
    if (free_all) {
      t.s1 = true;
      if (c[a] != c[b]) t.equal_forced = false;
      if (c[a] == c[b]) t.differ_forced = false;
    }
    if (nf == 0) return true;
    bool f_mono = true;
    for (auto x : f_edges)
      if (c[x] != c[f_edges[0]]) f_mono = false;
    const std::uint8_t fi = c[f_edges[0]];
    if (free_all && f_mono) {
      i1_seen[fi] = 1;
      if (c[e] != fi) i2_bad[fi] = 1;
    }
    for (std::size_t k = 0; k < nf; ++k) {
      if (!free_without[k]) continue;
      // F - f_k monochromatic in colour i
      int i = -1;
      bool ok = true;
      for (std::size_t l = 0; l < nf; ++l) {
        if (l == k) continue;
        if (i < 0) i = c[f_edges[l]];
        else if (c[f_edges[l]] != i) ok = false;
      }
      if (!ok) continue;
      if (i < 0) {
        for (std::size_t any = 1; any <= q; ++any) i3_seen[(k * (q + 1) + any) * (q + 1) + c[e]] = 1;
      } else {
        i3_seen[(k * (q + 1) + i) * (q + 1) + c[e]] = 1;
      }
    }
    if (nf == 2 && free_all)
      for (int l = 0; l < 2; ++l)
        if (c[f_edges[1 - l]] == c[e]) i3p_seen[(l * (q + 1) + c[f_edges[l]]) * (q + 1) + c[e]] = 1;
    return true;
  });
  if (nf == 0) return t;
  for (std::size_t i = 1; i <= q; ++i) {
    if (!i1_seen[i]) t.i1 = false;
    if (i2_bad[i]) t.i2 = false;
    for (std::size_t j = 1; j <= q; ++j) {
      for (std::size_t k = 0; k < nf; ++k)
        if (!i3_seen[(k * (q + 1) + i) * (q + 1) + j]) t.i3 = false;
      for (int l = 0; l < 2; ++l)
        if (!i3p_seen[(l * (q + 1) + i) * (q + 1) + j]) t.i3prime = false;
    }
  }
  return t;
}

/// Can `subset` be split into cliques of exactly the given sizes? Tries every assignment.
inline bool splits_into_cliques(const Graph& g, const std::vector<Vertex>& subset, const std::vector<std::size_t>& sizes) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  if (total != subset.size()) return false;
  std::vector<int> owner(subset.size(), -1);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == subset.size()) {
      for (std::size_t c = 0; c < sizes.size(); ++c) {
        std::size_t cnt = 0;
        for (std::size_t x = 0; x < subset.size(); ++x) cnt += owner[x] == static_cast<int>(c);
        if (cnt != sizes[c]) return false;
      }
      for (std::size_t x = 0; x < subset.size(); ++x)
        for (std::size_t y = x + 1; y < subset.size(); ++y)
          if (owner[x] == owner[y] && !adj(g, subset[x], subset[y])) return false;
      return true;
    }
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      owner[i] = static_cast<int>(c);
      if (rec(i + 1)) return true;
    }
    owner[i] = -1;
    return false;
  };
  return rec(0);
}

/// Lexicographically least allowed vertex set splitting into cliques of the sizes,
/// scanning combinations in lexicographic order.
inline std::optional<std::vector<Vertex>> least_clique_sum(const Graph& g, const std::vector<std::size_t>& sizes,
                                                           const std::vector<bool>& allowed) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < g.n(); ++v)
    if (allowed[v]) pool.push_back(v);
  if (total > pool.size()) return std::nullopt;
  std::vector<std::size_t> idx(total);
  for (std::size_t i = 0; i < total; ++i) idx[i] = i;
  for (;;) {
    std::vector<Vertex> subset;
    for (auto i : idx) subset.push_back(pool[i]);
    if (splits_into_cliques(g, subset, sizes)) return subset;
    std::size_t i = total;
    while (i > 0 && idx[i - 1] == pool.size() - total + i - 1) --i;
    if (i == 0) return std::nullopt;
    ++idx[i - 1];
    for (std::size_t j = i; j < total; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// (colour, triangle, edge index) of the first monochromatic triangle with a
/// disjoint edge of its colour: colours ascending, triangles lexicographic, edges by index.
struct TrianglePlusEdge {
  std::uint8_t colour;
  Vertex a, b, c;
  std::size_t edge;
};
inline std::optional<TrianglePlusEdge> mono_triangle_plus_edge(const Graph& g, const std::vector<std::uint8_t>& col,
                                                                std::size_t q) {
  auto colour_of = [&](Vertex x, Vertex y) -> int {
    const int i = edge_index(g, x, y);
    return i < 0 ? 0 : col[static_cast<std::size_t>(i)];
  };
  for (std::uint8_t c = 1; c <= q; ++c)
    for (Vertex a = 0; a < g.n(); ++a)
      for (Vertex b = a + 1; b < g.n(); ++b)
        for (Vertex d = b + 1; d < g.n(); ++d) {
          if (colour_of(a, b) != c || colour_of(a, d) != c || colour_of(b, d) != c) continue;
          for (std::size_t e = 0; e < g.m(); ++e) {
            const Edge& x = g.edges()[e];
            if (col[e] != c || x.touches(a) || x.touches(b) || x.touches(d)) continue;
            return TrianglePlusEdge{c, a, b, d, e};
          }
        }
  return std::nullopt;
}

inline bool has_triangle(const Graph& g) {
  for (Vertex a = 0; a < g.n(); ++a)
    for (Vertex b = a + 1; b < g.n(); ++b)
      for (Vertex c = b + 1; c < g.n(); ++c)
        if (adj(g, a, b) && adj(g, a, c) && adj(g, b, c)) return true;
  return false;
}

}  // namespace oracle

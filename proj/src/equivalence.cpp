#include "arrowlab/equivalence.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "assembly.hpp"

namespace arrowlab {

namespace {

std::string join_vertices(const std::vector<Vertex>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out + "}";
}

bool has_clique_of(const Graph& g, std::size_t size) {
  return size >= 2 && size <= g.n() && contains_copy(g, complete_graph(size));
}

// Colour j of the K_order colouring has no K_{sizes[j-1]}.
bool inner_valid(std::size_t order, const std::vector<std::size_t>& sizes, const EdgeColouring& c) {
  if (c.q() != sizes.size() || c.size() != order * (order - (order > 0)) / 2 || !c.is_total()) return false;
  const Graph kn = complete_graph(order);
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (sizes[j] <= 1) {
      if (order > 0) return false;
      continue;
    }
    if (has_clique_of(colour_class_graph(kn, c, static_cast<Colour>(j + 1)), sizes[j])) return false;
  }
  return true;
}

class CliqueSumSearch {
 public:
  CliqueSumSearch(const Graph& g, const std::vector<std::size_t>& sizes, const std::vector<bool>& allowed)
      : g_(g), sizes_(sizes), members_(sizes.size()) {
    for (Vertex v = 0; v < g.n(); ++v)
      if (v < allowed.size() && allowed[v]) pool_.push_back(v);
    total_ = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  }

  // Fixes the smallest feasible next vertex one position at a time.
  std::optional<std::vector<Vertex>> run() {
    if (!feasible({}, pool_)) return std::nullopt;
    std::vector<Vertex> prefix;
    std::size_t from = 0;
    while (prefix.size() < total_) {
      for (std::size_t i = from; i < pool_.size(); ++i) {
        prefix.push_back(pool_[i]);
        if (feasible(prefix, {pool_.begin() + static_cast<std::ptrdiff_t>(i) + 1, pool_.end()})) {
          from = i + 1;
          break;
        }
        prefix.pop_back();
      }
    }
    return prefix;
  }

 private:
  bool feasible(const std::vector<Vertex>& forced, const std::vector<Vertex>& optional) {
    cand_ = forced;
    cand_.insert(cand_.end(), optional.begin(), optional.end());
    forced_ = forced.size();
    for (auto& m : members_) m.clear();
    return rec(0, 0);
  }

  bool rec(std::size_t idx, std::size_t placed) {
    if (placed == total_) return true;
    if (cand_.size() - idx < total_ - placed) return false;
    const Vertex v = cand_[idx];
    for (std::size_t s = 0; s < sizes_.size(); ++s) {
      auto& m = members_[s];
      if (m.size() == sizes_[s]) continue;
      if (m.empty() && first_empty_of_size(sizes_[s]) != s) continue;
      if (!std::all_of(m.begin(), m.end(), [&](Vertex w) { return g_.adjacent(v, w); })) continue;
      m.push_back(v);
      const bool ok = rec(idx + 1, placed + 1);
      m.pop_back();
      if (ok) return true;
    }
    return idx >= forced_ && rec(idx + 1, placed);
  }

  std::size_t first_empty_of_size(std::size_t size) const {
    for (std::size_t s = 0; s < sizes_.size(); ++s)
      if (sizes_[s] == size && members_[s].empty()) return s;
    return sizes_.size();
  }

  const Graph& g_;
  const std::vector<std::size_t>& sizes_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<Vertex> pool_;
  std::vector<Vertex> cand_;
  std::size_t forced_ = 0;
  std::size_t total_ = 0;
};

}  // namespace

// --- clique sums ----------------------------------------------------------------

CliqueSumFamily::CliqueSumFamily(std::vector<std::size_t> sizes) : a(std::move(sizes)) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) throw Error("clique sizes must be positive");
    if (i && a[i] > a[i - 1]) throw Error("clique sizes must be nonincreasing");
  }
}

Graph CliqueSumFamily::h(std::size_t i) const {
  if (i > a.size()) throw Error("clique-sum index out of range");
  Graph out;
  for (std::size_t j = 0; j < i; ++j) out = disjoint_union(out, complete_graph(a[j])).graph;
  return out;
}

std::size_t CliqueSumFamily::order(std::size_t i) const {
  if (i > a.size()) throw Error("clique-sum index out of range");
  return std::accumulate(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i), std::size_t{0});
}

std::optional<std::vector<Vertex>> least_clique_sum(const Graph& g, const std::vector<std::size_t>& sizes,
                                                    const std::vector<bool>& allowed) {
  return CliqueSumSearch(g, sizes, allowed).run();
}

// --- inner witnesses ----------------------------------------------------------------

InnerWitnessProvider library_inner_provider() {
  return [](std::size_t order, const std::vector<std::size_t>& sizes) -> std::optional<InnerWitness> {
    const std::size_t q = sizes.size();
    const std::size_t m = order * (order - (order > 0)) / 2;
    if (q == 0 || q > kMaxColours) return std::nullopt;
    if (order == 0) return InnerWitness{EdgeColouring(q, 0), "empty"};
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s <= 1; })) return std::nullopt;
    for (std::size_t j = 0; j < q; ++j)
      if (sizes[j] > order)
        return InnerWitness{EdgeColouring(q, std::vector<Colour>(m, static_cast<Colour>(j + 1))),
                            "single colour " + std::to_string(j + 1)};
    std::vector<Colour> open;
    for (std::size_t j = 0; j < q; ++j) {
      if (sizes[j] == 3) open.push_back(static_cast<Colour>(j + 1));
      else if (sizes[j] != 2) return std::nullopt;
    }
    std::optional<EdgeColouring> base;
    std::string name;
    if (open.size() == 2 && order <= 5) name = "pentagon2";
    else if (open.size() == 3 && order <= 16) name = "gf16-3";
    else return std::nullopt;
    base = classical_colouring(name, order);
    std::vector<Colour> out;
    for (Colour c : base->colours()) out.push_back(open[c - 1]);
    return InnerWitness{EdgeColouring(q, std::move(out)), name};
  };
}

InnerWitnessProvider solver_inner_provider(const SolveOptions& options) {
  return [options](std::size_t order, const std::vector<std::size_t>& sizes) -> std::optional<InnerWitness> {
    const std::size_t q = sizes.size();
    if (q == 0 || q > kMaxColours) return std::nullopt;
    if (order == 0) return InnerWitness{EdgeColouring(q, 0), "empty"};
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s <= 1; })) return std::nullopt;
    const Graph kn = complete_graph(order);
    if (order == 1) return InnerWitness{EdgeColouring(q, 0), "empty"};
    std::vector<Graph> targets;
    for (std::size_t s : sizes) targets.push_back(complete_graph(s));
    auto cert = solve(kn, ColourConstraintSet::per_colour(kn, targets), options);
    if (cert.verdict == Verdict::Arrow) return std::nullopt;
    return InnerWitness{*cert.witness, "solver"};
  };
}

InnerWitnessProvider default_inner_provider(const SolveOptions& options) {
  return [lib = library_inner_provider(), sol = solver_inner_provider(options)](
             std::size_t order, const std::vector<std::size_t>& sizes) {
    auto w = lib(order, sizes);
    return w ? w : sol(order, sizes);
  };
}

// --- recolouring ----------------------------------------------------------------------

RecolourTrace recolour_theorem41(const Graph& g, const EdgeColouring& c, const CliqueSumFamily& fam,
                                 const InnerWitnessProvider& provider) {
  const std::size_t q = c.q();
  const std::size_t s = fam.s();
  if (c.size() != g.m() || !c.is_total()) throw Error("recolour: colouring must be total on the host");
  if (q < 2) throw Error("recolour: needs at least two colours");
  if (s == 0) throw Error("recolour: empty clique-sum family");
  if (fam.a[0] < 2) throw Error("recolour: a_1 must be at least 2");

  std::vector<Graph> cls;
  for (Colour j = 1; j <= q; ++j) cls.push_back(colour_class_graph(g, c, j));
  std::vector<bool> allowed(g.n(), true);
  const std::vector<std::size_t> all_sizes = fam.a;
  for (Colour j = 1; j <= q; ++j)
    if (auto bad = least_clique_sum(cls[j - 1], all_sizes, allowed))
      throw Error("recolour: colour " + std::to_string(j) + " has a monochromatic H_s on " + join_vertices(*bad));

  RecolourTrace t;
  const std::vector<std::size_t> prefix(fam.a.begin(), fam.a.end() - 1);
  auto s1 = least_clique_sum(cls[0], prefix, allowed);
  if (!s1) throw Error("recolour: colour 1 has no monochromatic H_{s-1}");
  t.selected.push_back({1, s - 1, *s1});
  for (Vertex v : *s1) allowed[v] = false;
  for (Colour j = 2; j <= q; ++j) {
    for (std::size_t i = s; i-- > 0;) {
      const std::vector<std::size_t> sizes(fam.a.begin(), fam.a.begin() + static_cast<std::ptrdiff_t>(i));
      if (auto set = least_clique_sum(cls[j - 1], sizes, allowed)) {
        t.selected.push_back({j, i, *set});
        for (Vertex v : *set) allowed[v] = false;
        break;
      }
    }
  }
  for (const auto& sel : t.selected) t.inner.insert(t.inner.end(), sel.vertices.begin(), sel.vertices.end());
  std::sort(t.inner.begin(), t.inner.end());
  t.bound = q * fam.order(s - 1);
  if (t.inner.size() > t.bound) throw std::logic_error("recolour: selected sets exceed the bound");

  t.inner_sizes.assign(q, fam.a[0]);
  t.inner_sizes[0] = fam.a[0] - fam.a[s - 1] + 1;
  auto w = provider(t.bound, t.inner_sizes);
  if (!w || !inner_valid(t.bound, t.inner_sizes, w->colouring)) {
    std::string r = "R_" + std::to_string(q) + "(";
    for (std::size_t j = 0; j < q; ++j) r += (j ? "," : "") + std::to_string(t.inner_sizes[j]);
    throw Error("recolour: no valid colouring of K_" + std::to_string(t.bound) + " witnesses " + r + ") > " +
                std::to_string(t.bound));
  }
  t.witness = std::move(*w);

  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < t.inner.size(); ++i) pos[t.inner[i]] = static_cast<int>(i);
  const Graph kb = complete_graph(t.bound);
  std::vector<Colour> out = c.colours();
  for (EdgeId x = 0; x < g.m(); ++x) {
    const Edge& e = g.edge(x);
    const int pu = pos[e.u], pv = pos[e.v];
    if (pu >= 0 && pv >= 0)
      out[x] = t.witness.colouring[kb.require_edge(static_cast<Vertex>(pu), static_cast<Vertex>(pv))];
    else if (pu >= 0 || pv >= 0)
      out[x] = 1;
  }
  t.output = EdgeColouring(q, std::move(out));
  for (Colour j = 1; j <= q; ++j)
    if (auto copy = find_copy(colour_class_graph(g, t.output, j), complete_graph(fam.a[0])))
      throw std::logic_error("recolour: output has a monochromatic K_a1 on " + join_vertices(copy->vertex_set()));
  return t;
}

// --- focusing --------------------------------------------------------------------------

FocusResult focus(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                  const std::vector<std::vector<Colour>>& colours, std::size_t q) {
  if (q == 0) throw Error("focus: q must be positive");
  if (colours.size() != a.size()) throw Error("focus: one colour row per vertex of A");
  for (const auto& row : colours) {
    if (row.size() != b.size()) throw Error("focus: one colour per vertex of B");
    for (Colour c : row)
      if (c < 1 || c > q) throw Error("focus: colour out of range");
  }
  FocusResult out;
  std::vector<std::size_t> keep(b.size());
  std::iota(keep.begin(), keep.end(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<std::size_t> count(q + 1, 0);
    for (std::size_t j : keep) ++count[colours[i][j]];
    Colour best = 1;
    for (Colour c = 2; c <= q; ++c)
      if (count[c] > count[best]) best = c;
    std::erase_if(keep, [&](std::size_t j) { return colours[i][j] != best; });
    out.colour_of_a.push_back(best);
  }
  for (std::size_t j : keep) out.subset.push_back(b[j]);
  return out;
}

// --- triangle plus edge --------------------------------------------------------------------

std::optional<TrianglePlusEdge> find_mono_HplusK2(const Graph& g, const EdgeColouring& c) {
  if (c.size() != g.m() || !c.is_total()) throw Error("find_mono_HplusK2: colouring must be total");
  for (Colour col = 1; col <= c.q(); ++col) {
    const Graph cls = colour_class_graph(g, c, col);
    for (Vertex x = 0; x < cls.n(); ++x)
      for (Vertex y : cls.neighbours(x)) {
        if (y <= x) continue;
        for (Vertex z : cls.neighbours(y)) {
          if (z <= y || !cls.adjacent(x, z)) continue;
          for (EdgeId e = 0; e < g.m(); ++e) {
            if (c[e] != col) continue;
            const Edge& ed = g.edge(e);
            if (ed.touches(x) || ed.touches(y) || ed.touches(z)) continue;
            return TrianglePlusEdge{col, {x, y, z}, e};
          }
        }
      }
  }
  return std::nullopt;
}

Theorem43Check check_theorem43_predicate(const Graph& g, const SolveOptions& options) {
  static const Graph k3 = complete_graph(3);
  static const Graph k3k2 = *named_graph("K3+K2");
  Theorem43Check out;
  const auto a = arrow(g, k3, 2, options);
  const auto b = arrow(g, k3k2, 2, options);
  out.arrows_k3 = a.verdict == Verdict::Arrow;
  out.arrows_k3_k2 = b.verdict == Verdict::Arrow;
  out.contains_k6 = g.n() >= 6 && contains_copy(g, complete_graph(6));
  out.consistent = !(out.arrows_k3 && !out.arrows_k3_k2 && !out.contains_k6);
  out.stats.nodes = a.stats.nodes + b.stats.nodes;
  out.stats.propagations = a.stats.propagations + b.stats.propagations;
  out.stats.subproblems = a.stats.subproblems + b.stats.subproblems;
  out.stats.wall_ms = a.stats.wall_ms + b.stats.wall_ms;
  return out;
}

Theorem17Result theorem17_colouring(const Graph& g, const std::vector<Vertex>& s, Vertex v) {
  constexpr Colour red = 1, blue = 2, yellow = 3;
  if (s.size() != 6) throw Error("theorem17_colouring: S must have 6 vertices");
  std::vector<char> in_s(g.n(), 0);
  for (Vertex x : s) {
    if (x >= g.n() || in_s[x]) throw Error("theorem17_colouring: bad vertex set");
    in_s[x] = 1;
  }
  if (v >= g.n() || !in_s[v]) throw Error("theorem17_colouring: v must lie in S");
  for (Vertex x : s)
    for (Vertex y : s)
      if (x < y && !g.adjacent(x, y))
        throw Error("theorem17_colouring: S is not a clique, " + std::to_string(x) + "-" + std::to_string(y) +
                    " missing");
  std::vector<Vertex> rest;
  for (Vertex x : s)
    if (x != v) rest.push_back(x);
  std::sort(rest.begin(), rest.end());
  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < rest.size(); ++i) pos[rest[i]] = static_cast<int>(i);

  std::vector<Colour> colours;
  for (const Edge& e : g.edges()) {
    const bool a = in_s[e.u], b = in_s[e.v];
    if (a && b) {
      if (e.u == v || e.v == v) {
        colours.push_back(yellow);
      } else {
        const int d = (pos[e.v] - pos[e.u] + 5) % 5;
        colours.push_back(d == 1 || d == 4 ? red : blue);
      }
    } else if (!a && !b) {
      colours.push_back(blue);
    } else {
      colours.push_back(e.u == v || e.v == v ? red : yellow);
    }
  }
  Theorem17Result out{EdgeColouring(3, std::move(colours)), std::nullopt, false};
  const Graph k3 = complete_graph(3);
  for (Colour c = 1; c <= 3 && !out.mono_triangle; ++c)
    if (auto copy = find_copy(colour_class_graph(g, out.colouring, c), k3)) {
      const auto vs = copy->vertex_set();
      out.mono_triangle = std::array<Vertex, 3>{vs[0], vs[1], vs[2]};
    }
  std::vector<Vertex> outside;
  for (Vertex x = 0; x < g.n(); ++x)
    if (!in_s[x]) outside.push_back(x);
  out.outside_triangle = contains_copy(g.induced(outside), k3);
  if (out.mono_triangle.has_value() != out.outside_triangle)
    throw std::logic_error("theorem17_colouring: monochromatic triangle disagrees with G - S");
  return out;
}

// --- tower ---------------------------------------------------------------------------------

namespace {

struct SenderUse {
  Edge a, b;
  std::string role;
};

std::string tower_r(std::size_t q, std::size_t n0, std::size_t k, std::optional<std::size_t>& value) {
  const std::size_t exponent = n0 + q * k * k;
  std::string text = "r = " + std::to_string(q) + "^(" + std::to_string(n0) + " + " + std::to_string(q) + "*" +
                     std::to_string(k) + "^2) + 1 = " + std::to_string(q) + "^" + std::to_string(exponent) + " + 1";
  std::size_t r = 1;
  value.reset();
  for (std::size_t i = 0; i < exponent; ++i) {
    if (r > (std::numeric_limits<std::size_t>::max() - 1) / q) return text + " (exceeds 64 bits)";
    r *= q;
  }
  value = r + 1;
  return text + " = " + std::to_string(r + 1);
}

}  // namespace

TowerResult build_nonequiv_tower(const Graph& gq, std::size_t k, std::size_t q, const ColourPattern& pattern,
                                 SenderProvider& provider, const TowerOptions& options) {
  if (k < 3) throw Error("tower: k must be at least 3");
  if (q < 1 || q + 1 > kMaxColours) throw Error("tower: q out of range");
  if (pattern.members.size() < q) throw Error("tower: the pattern needs at least q members");
  const std::size_t n = pattern.n;
  ColourPattern used{n, {pattern.members.begin(), pattern.members.begin() + static_cast<std::ptrdiff_t>(q)}, 0,
                     k - 1};
  for (const Graph& m : used.members)
    if (m.n() != n) throw Error("tower: pattern members must share one vertex set");

  TowerResult out;
  std::optional<std::size_t> r_true;
  out.r_formula = tower_r(q, gq.n(), k, r_true);
  out.r_used = options.r_override ? *options.r_override : r_true.value_or(std::numeric_limits<std::size_t>::max());
  used.r = out.r_used;
  std::vector<Edge> all;
  for (const Graph& m : used.members) all.insert(all.end(), m.edges().begin(), m.edges().end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error("tower: pattern members are not edge-disjoint");
  if (n <= 64) out.pattern_certified = check_pattern(used).certified;

  const Graph kk = complete_graph(k);
  detail::Assembly a;
  a.open_part("core", true);
  out.levels.emplace_back();
  for (Vertex v : a.attach(gq, {}, {})) out.levels[0].push_back(v);
  struct PatternEdge {
    std::size_t level, cls;
    Edge edge;
  };
  std::vector<PatternEdge> pattern_edges;
  for (std::size_t j = 1; j + 1 < k; ++j) {
    std::vector<Vertex> level;
    for (std::size_t i = 0; i < n; ++i) level.push_back(a.add_vertex());
    for (std::size_t i = 0; i < q; ++i)
      for (const Edge& e : used.members[i].edges()) {
        a.add_edge(level[e.u], level[e.v]);
        pattern_edges.push_back({j, i, Edge(level[e.u], level[e.v])});
      }
    out.levels.push_back(std::move(level));
  }
  for (std::size_t i = 0; i < out.levels.size(); ++i)
    for (std::size_t j = i + 1; j < out.levels.size(); ++j)
      for (Vertex x : out.levels[i])
        for (Vertex y : out.levels[j]) a.add_edge(x, y);
  a.close_part();

  a.open_part("matching", false);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < q; ++i) e.push_back(a.add_fresh_edge());
  a.close_part();

  std::vector<SenderUse> uses;
  if (q >= 2) {
    const SenderSpec neg = provider.sender(Polarity::Negative, q + 1, kk, k);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j) {
        const std::string role = "S- e" + std::to_string(i + 1) + "-e" + std::to_string(j + 1);
        a.attach_sender(neg, e[i], e[j], role);
        uses.push_back({e[i], e[j], role});
      }
  }
  if (!pattern_edges.empty()) {
    const SenderSpec pos = provider.sender(Polarity::Positive, q + 1, kk, k);
    for (const auto& pe : pattern_edges) {
      const std::string role = "S+ V" + std::to_string(pe.level) + ":" + std::to_string(pe.edge.u) + "-" +
                               std::to_string(pe.edge.v) + " e" + std::to_string(pe.cls + 1);
      a.attach_sender(pos, pe.edge, e[pe.cls], role);
      uses.push_back({pe.edge, e[pe.cls], role});
    }
  }

  out.graph = a.graph();
  out.parts = a.parts(out.graph);
  out.concrete = !a.any_mock();
  for (const Edge& x : e) out.matching.push_back(out.graph.require_edge(x.u, x.v));

  for (const auto& u : uses)
    if (distance(out.graph, u.a, u.b) < k) out.problems.push_back(u.role + ": signal edges closer than k");
  for (const auto& pe : pattern_edges) {
    const auto hits = std::count_if(uses.begin(), uses.end(), [&](const SenderUse& u) { return u.a == pe.edge; });
    if (hits != 1) out.problems.push_back("pattern edge with " + std::to_string(hits) + " senders");
  }
  for (const auto& bad : copy_locality_violations(out.graph, out.parts, kk)) {
    std::string msg = "K_k copy outside every leaf part:";
    for (EdgeId x : bad) msg += " " + std::to_string(x);
    out.problems.push_back(msg);
  }
  out.structural_only = !(out.concrete && out.pattern_certified);

  if (!options.emit_colouring || !out.concrete) return out;
  const Graph target = pendant_clique(k);
  std::optional<EdgeColouring> c0 = options.gq_colouring;
  if (!c0) {
    auto cert = solve(gq, ColourConstraintSet::uniform(gq, target, q), options.solve);
    if (cert.verdict == Verdict::Arrow) {
      out.problems.push_back("Gq arrows K_k.K_2 in q colours");
      return out;
    }
    c0 = cert.witness;
  }
  if (c0->size() != gq.m() || c0->q() != q || !c0->is_total()) throw Error("tower: bad colouring of Gq");

  std::vector<Colour> colours(out.graph.m(), 0);
  const auto& v0 = out.levels[0];
  for (EdgeId x = 0; x < gq.m(); ++x)
    colours[out.graph.require_edge(v0[gq.edge(x).u], v0[gq.edge(x).v])] = (*c0)[x];
  for (const auto& pe : pattern_edges)
    colours[out.graph.require_edge(pe.edge.u, pe.edge.v)] = static_cast<Colour>(pe.cls + 1);
  std::vector<int> level_of(out.graph.n(), -1);
  for (std::size_t i = 0; i < out.levels.size(); ++i)
    for (Vertex x : out.levels[i]) level_of[x] = static_cast<int>(i);
  for (EdgeId x = 0; x < out.graph.m(); ++x) {
    const Edge& ed = out.graph.edge(x);
    if (level_of[ed.u] >= 0 && level_of[ed.v] >= 0 && level_of[ed.u] != level_of[ed.v])
      colours[x] = static_cast<Colour>(q + 1);
  }
  for (std::size_t i = 0; i < q; ++i) colours[out.matching[i]] = static_cast<Colour>(i + 1);
  for (const Part& p : out.parts) {
    if (p.role.rfind("S", 0) != 0) continue;
    if (!detail::fill_part(out.graph, p, kk, q + 1, colours, p.edges, options.solve)) {
      out.problems.push_back(p.role + ": no K_k-free completion");
      return out;
    }
  }
  out.colouring = EdgeColouring(q + 1, colours);
  out.colouring_validated =
      !check_colouring(out.graph, ColourConstraintSet::uniform(out.graph, target, q + 1), *out.colouring);
  return out;
}

}  // namespace arrowlab

#include "arrowlab/gadgets.hpp"

#include <algorithm>

#include "assembly.hpp"

namespace arrowlab {

using detail::Assembly;
using detail::PieceSet;

const char* to_string(Polarity p) { return p == Polarity::Negative ? "negative" : "positive"; }

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Searched: return "searched";
    case Provenance::Loaded: return "loaded";
    case Provenance::Mock: return "mock";
  }
  return "?";
}

const char* to_string(GadgetVerdict v) {
  switch (v) {
    case GadgetVerdict::Verified: return "verified";
    case GadgetVerdict::Refuted: return "refuted";
    case GadgetVerdict::StructuralOnly: return "structural-only";
  }
  return "?";
}

std::vector<std::string> sender_structure_problems(const SenderSpec& s) {
  std::vector<std::string> out;
  if (s.e >= s.graph.m() || s.f >= s.graph.m()) {
    out.emplace_back("signal edge id out of range");
    return out;
  }
  const Edge& e = s.graph.edge(s.e);
  const Edge& f = s.graph.edge(s.f);
  if (e.shares_vertex(f)) out.emplace_back("signal edges share a vertex");
  const std::size_t d = distance(s.graph, e, f);
  if (d < s.params.d)
    out.emplace_back("S3: signal distance " + (d == kUnreachable ? std::string("inf") : std::to_string(d)) +
                     " < " + std::to_string(s.params.d));
  return out;
}

// --- structure --------------------------------------------------------------------

std::vector<std::string> indicator_structure_problems(const IndicatorSpec& ind) {
  std::vector<std::string> out;
  const Graph& g = ind.graph;
  std::vector<Vertex> fv = ind.f_image;
  std::sort(fv.begin(), fv.end());
  if (std::adjacent_find(fv.begin(), fv.end()) != fv.end()) out.emplace_back("F image not injective");
  if (!is_induced_image(g, ind.f, ind.f_image)) out.emplace_back("F~ is not an induced copy of F");
  const Edge& e = g.edge(ind.e);
  std::vector<Vertex> ev{e.u, e.v};
  if (std::binary_search(fv.begin(), fv.end(), e.u) || std::binary_search(fv.begin(), fv.end(), e.v))
    out.emplace_back("e meets F~");
  const std::size_t dist_fe = distance(g, fv, ev);
  if (dist_fe < ind.params.d) out.emplace_back("dist(F~, e) = " + std::to_string(dist_fe) + " < d");

  if (ind.t.size() != ind.f.m()) {
    out.emplace_back("T-decomposition has the wrong number of pieces");
    return out;
  }
  std::vector<char> covered_v(g.n(), 0), covered_e(g.m(), 0);
  for (EdgeId fid = 0; fid < ind.f.m(); ++fid) {
    const TPiece& t = ind.t[fid];
    const Edge& fe = g.edge(ind.f_edges[fid]);
    std::vector<Vertex> meet;
    std::set_intersection(t.vertices.begin(), t.vertices.end(), fv.begin(), fv.end(), std::back_inserter(meet));
    if (meet != std::vector<Vertex>{fe.u, fe.v}) out.emplace_back("T1: V(T_f) meets F~ outside f for f=" + std::to_string(fid));
    if (!std::binary_search(t.edges.begin(), t.edges.end(), ind.f_edges[fid]))
      out.emplace_back("T1: f not in T_f for f=" + std::to_string(fid));
    for (Vertex v : t.vertices) covered_v[v] = 1;
    for (EdgeId x : t.edges) covered_e[x] = 1;
  }
  if (std::count(covered_v.begin(), covered_v.end(), 0) > 0) out.emplace_back("T2: vertices not covered");
  if (std::count(covered_e.begin(), covered_e.end(), 0) > 0) out.emplace_back("T2: edges not covered");

  const auto from_f = distances_from(g, fv);
  for (EdgeId a = 0; a < ind.f.m(); ++a)
    for (EdgeId b = a + 1; b < ind.f.m(); ++b) {
      std::vector<Vertex> both;
      std::set_intersection(ind.t[a].vertices.begin(), ind.t[a].vertices.end(), ind.t[b].vertices.begin(),
                            ind.t[b].vertices.end(), std::back_inserter(both));
      for (Vertex v : both)
        if (!std::binary_search(fv.begin(), fv.end(), v) && from_f[v] < ind.params.d)
          out.emplace_back("T3: vertex " + std::to_string(v) + " shared by T_" + std::to_string(a) + " and T_" +
                           std::to_string(b) + " is close to F~");
    }
  return out;
}

std::vector<std::vector<EdgeId>> copy_locality_violations(const Graph& g, const std::vector<Part>& parts,
                                                          const Graph& h) {
  std::vector<std::vector<EdgeId>> bad;
  if (h.m() == 0) return bad;
  const CopyList list = enumerate_copies(g, h);
  for (const auto& copy : list.copies) {
    const bool inside = std::any_of(parts.begin(), parts.end(), [&](const Part& p) {
      return p.leaf && std::includes(p.edges.begin(), p.edges.end(), copy.edge_set.begin(), copy.edge_set.end());
    });
    if (!inside) bad.push_back(copy.edge_set);
  }
  return bad;
}

// --- providers ---------------------------------------------------------------------

SenderSpec MockSenderProvider::sender(Polarity polarity, std::size_t q, const Graph& h, std::size_t d) {
  if (stub_) {
    SenderSpec s = *stub_;
    s.polarity = polarity;
    s.params = {q, h, d};
    s.provenance = Provenance::Mock;
    s.verified = false;
    return s;
  }
  // e = {0,1}; a path 1 = x_0, ..., x_L with f = {x_L, y}; a copy of h hangs off x_{L/2}.
  const std::size_t length = std::max<std::size_t>(d, 1);
  std::vector<Edge> edges{{0, 1}};
  Vertex prev = 1;
  Vertex next = 2;
  Vertex middle = 1;
  for (std::size_t i = 1; i <= length; ++i) {
    edges.emplace_back(prev, next);
    prev = next++;
    if (i == length / 2) middle = prev;
  }
  const Vertex y = next++;
  edges.emplace_back(prev, y);
  if (h.n() > 0) {
    std::vector<Vertex> map(h.n());
    map[0] = middle;
    for (Vertex v = 1; v < h.n(); ++v) map[v] = next++;
    for (const Edge& he : h.edges()) edges.emplace_back(map[he.u], map[he.v]);
  }
  SenderSpec s;
  s.graph = Graph(next, edges);
  s.e = s.graph.require_edge(0, 1);
  s.f = s.graph.require_edge(prev, y);
  s.polarity = polarity;
  s.params = {q, h, d};
  s.provenance = Provenance::Mock;
  return s;
}

SenderSpec chain_senders(const SenderSpec& a, const SenderSpec& b) {
  Assembly asmb(a.graph);
  const Edge& af = a.graph.edge(a.f);
  const Edge& be = b.graph.edge(b.e);
  auto map = asmb.attach(b.graph, {{be.u, af.u}, {be.v, af.v}}, {b.e});
  SenderSpec out;
  out.graph = asmb.graph();
  const Edge& ae = a.graph.edge(a.e);
  const Edge& bf = b.graph.edge(b.f);
  out.e = out.graph.require_edge(ae.u, ae.v);
  out.f = out.graph.require_edge(map[bf.u], map[bf.v]);
  out.polarity = (a.polarity == b.polarity) ? Polarity::Positive : Polarity::Negative;
  out.params = a.params;
  out.params.d = distance(out.graph, out.graph.edge(out.e), out.graph.edge(out.f));
  out.provenance = (a.provenance == Provenance::Mock || b.provenance == Provenance::Mock) ? Provenance::Mock
                                                                                          : Provenance::Loaded;
  out.verified = a.verified && b.verified;
  return out;
}

CorpusSenderProvider::CorpusSenderProvider(std::vector<SenderSpec> seeds) : seeds_(std::move(seeds)) {
  for (const auto& s : seeds_)
    if (!sender_structure_problems(s).empty()) throw Error("corpus sender fails its structural checks");
}

SenderSpec CorpusSenderProvider::sender(Polarity polarity, std::size_t q, const Graph& h, std::size_t d) {
  const auto key = std::make_tuple(static_cast<int>(polarity), q, to_graph6(h), d);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const SenderSpec* pos = nullptr;
  const SenderSpec* neg = nullptr;
  for (const auto& s : seeds_) {
    if (s.params.q != q || !(s.params.h == h)) continue;
    const SenderSpec*& slot = s.polarity == Polarity::Positive ? pos : neg;
    if (!slot || s.graph.m() < slot->graph.m()) slot = &s;
  }
  auto signal_distance = [](const SenderSpec& s) { return distance(s.graph, s.graph.edge(s.e), s.graph.edge(s.f)); };

  SenderSpec built;
  if (polarity == Polarity::Negative) {
    if (!neg) throw Error("corpus has no negative sender for these parameters");
    built = *neg;
  } else if (pos) {
    built = *pos;
  } else if (neg) {
    built = chain_senders(*neg, *neg);
  } else {
    throw Error("corpus has no sender for these parameters");
  }
  while (signal_distance(built) < d) {
    built = pos ? chain_senders(built, *pos) : chain_senders(chain_senders(built, *neg), *neg);
  }
  built.params = {q, h, d};
  built.provenance = Provenance::Loaded;
  cache_.emplace(key, built);
  return built;
}

std::vector<SenderSpec> builtin_k3_senders() {
  auto make = [](const char* g6, EdgeId e, EdgeId f, Polarity p) {
    SenderSpec s;
    s.graph = from_graph6(g6);
    s.e = e;
    s.f = f;
    s.polarity = p;
    s.params = {2, complete_graph(3), 2};
    s.provenance = Provenance::Searched;
    s.verified = true;
    return s;
  };
  return {make("Fj~}W", 3, 9, Polarity::Positive), make("HQVtV~~", 0, 6, Polarity::Negative)};
}

// --- verification ------------------------------------------------------------------

namespace {

void add_stats(SearchStats& into, const SearchStats& s) {
  into.nodes += s.nodes;
  into.propagations += s.propagations;
  into.subproblems += s.subproblems;
  into.wall_ms += s.wall_ms;
}

}  // namespace

GadgetCheck verify_sender(const SenderSpec& s, const SolveOptions& options) {
  if (s.params.q < 2) throw Error("signal senders need at least two colours");
  GadgetCheck out;
  out.problems = sender_structure_problems(s);
  if (!out.problems.empty()) {
    out.verdict = GadgetVerdict::Refuted;
    out.property = "S3";
    return out;
  }
  const Graph& g = s.graph;
  ColourConstraintSet cs = ColourConstraintSet::uniform(g, s.params.h, s.params.q);
  auto s1 = solve(g, cs, options);
  add_stats(out.stats, s1.stats);
  if (s1.verdict == Verdict::Arrow) {
    out.verdict = GadgetVerdict::Refuted;
    out.property = "S1";
    return out;
  }
  cs.link(s.e, s.f, s.polarity == Polarity::Negative);
  auto s2 = solve(g, cs, options);
  add_stats(out.stats, s2.stats);
  if (s2.verdict == Verdict::NotArrow) {
    out.verdict = GadgetVerdict::Refuted;
    out.property = "S2";
    out.witness = s2.witness;
    return out;
  }
  out.verdict = GadgetVerdict::Verified;
  return out;
}

GadgetCheck verify_indicator(const IndicatorSpec& ind, const SolveOptions& options) {
  const std::size_t q = ind.params.q;
  if (q < 2) throw Error("indicators need at least two colours");
  GadgetCheck out;
  out.problems = indicator_structure_problems(ind);
  if (!out.problems.empty()) {
    out.verdict = GadgetVerdict::Refuted;
    out.property = "structure";
    return out;
  }
  if (!ind.concrete) {
    out.verdict = GadgetVerdict::StructuralOnly;
    return out;
  }
  const Graph& g = ind.graph;
  const Graph& h = ind.params.h;

  auto run = [&](const Graph& host, const std::vector<std::pair<EdgeId, Colour>>& pins) {
    ColourConstraintSet cs = ColourConstraintSet::uniform(host, h, q);
    for (const auto& [e, c] : pins) cs.pin(e, c);
    auto cert = solve(host, cs, options);
    add_stats(out.stats, cert.stats);
    return cert;
  };
  auto refute = [&](std::string property, std::optional<EdgeColouring> witness) {
    out.verdict = GadgetVerdict::Refuted;
    out.property = std::move(property);
    out.witness = std::move(witness);
    return out;
  };

  std::vector<std::pair<EdgeId, Colour>> f_mono;
  for (EdgeId x : ind.f_edges) f_mono.emplace_back(x, 1);

  if (run(g, f_mono).verdict == Verdict::Arrow) return refute("I1", std::nullopt);
  {
    auto pins = f_mono;
    pins.emplace_back(ind.e, 2);
    auto cert = run(g, pins);
    if (cert.verdict == Verdict::NotArrow) return refute("I2", cert.witness);
  }
  // Matching indicators carry (I3') in place of (I3).
  for (EdgeId fid = 0; !ind.matching && fid < ind.f_edges.size(); ++fid) {
    const EdgeId removed = ind.f_edges[fid];
    const Graph smaller = g.without_edge(removed);
    auto shift = [&](EdgeId x) { return x > removed ? x - 1 : x; };
    for (Colour j : {Colour{2}, Colour{1}}) {
      std::vector<std::pair<EdgeId, Colour>> pins;
      for (EdgeId x : ind.f_edges)
        if (x != removed) pins.emplace_back(shift(x), 1);
      pins.emplace_back(shift(ind.e), j);
      if (run(smaller, pins).verdict == Verdict::Arrow)
        return refute("I3 (f=" + std::to_string(fid) + ", j=" + std::to_string(j) + ")", std::nullopt);
    }
  }
  if (ind.matching && ind.f_edges.size() == 2) {
    for (int l = 0; l < 2; ++l)
      for (Colour j : {Colour{1}, Colour{2}}) {
        std::vector<std::pair<EdgeId, Colour>> pins{{ind.f_edges[l], 1}, {ind.f_edges[1 - l], j}, {ind.e, j}};
        if (run(g, pins).verdict == Verdict::Arrow)
          return refute("I3' (l=" + std::to_string(l + 1) + ", j=" + std::to_string(j) + ")", std::nullopt);
      }
  }
  out.verdict = GadgetVerdict::Verified;
  return out;
}

std::optional<SenderSpec> search_sender(std::size_t q, const Graph& h, std::size_t d, Polarity polarity,
                                        const std::function<std::optional<Graph>()>& candidates,
                                        const SolveOptions& options) {
  if (q < 2) throw Error("signal senders need at least two colours");
  if (h.m() == 0) throw Error("target must have an edge");
  while (auto g = candidates()) {
    if (g->m() < 2) continue;
    ColourConstraintSet base = ColourConstraintSet::uniform(*g, h, q);
    if (solve(*g, base, options).verdict == Verdict::Arrow) continue;
    for (EdgeId a = 0; a < g->m(); ++a)
      for (EdgeId b = a + 1; b < g->m(); ++b) {
        if (g->edge(a).shares_vertex(g->edge(b))) continue;
        if (distance(*g, g->edge(a), g->edge(b)) < d) continue;
        ColourConstraintSet cs = base;
        cs.link(a, b, polarity == Polarity::Negative);
        if (solve(*g, cs, options).verdict == Verdict::Arrow) {
          SenderSpec s{*g, a, b, polarity, {q, h, d}, Provenance::Searched, true};
          return s;
        }
      }
  }
  return std::nullopt;
}

std::function<std::optional<Graph>()> all_graphs_stream(std::size_t max_vertices) {
  struct State {
    std::size_t n = 2;
    std::uint64_t mask = 0;
    std::size_t max;
  };
  if (max_vertices > 11) throw Error("all_graphs_stream: at most 11 vertices");
  auto st = std::make_shared<State>();
  st->max = max_vertices;
  return [st]() -> std::optional<Graph> {
    while (st->n <= st->max) {
      const std::size_t pairs = st->n * (st->n - 1) / 2;
      if (st->mask >= (std::uint64_t{1} << pairs)) {
        ++st->n;
        st->mask = 0;
        continue;
      }
      const std::uint64_t m = st->mask++;
      // Bits are grouped by the later vertex: vertex v contributes bits for (0,v)..(v-1,v).
      std::vector<Edge> edges;
      std::vector<char> touched(st->n, 0);
      std::size_t bit = 0;
      for (Vertex v = 1; v < st->n; ++v)
        for (Vertex u = 0; u < v; ++u, ++bit)
          if (m >> bit & 1) {
            edges.emplace_back(u, v);
            touched[u] = touched[v] = 1;
          }
      if (std::count(touched.begin(), touched.end(), 0) > 0) continue;
      return Graph(st->n, edges);
    }
    return std::nullopt;
  };
}

// --- constructions -----------------------------------------------------------------

JoinResult join_by_sender(const Graph& g, EdgeId e1, EdgeId e2, const SenderSpec& s) {
  if (e1 == e2) throw Error("join_by_sender: the two edges coincide");
  const Edge a = g.edge(e1);
  const Edge b = g.edge(e2);
  Assembly asmb(g);
  auto map = asmb.attach_sender(s, a, b, "sender");
  return {asmb.graph(), std::move(map)};
}

namespace {

void check_sender_params(std::size_t q, const Graph& h) {
  if (q < 2) throw Error("gadget constructions need at least two colours");
  if (h.m() == 0) throw Error("H must have at least one edge");
}

/// Matching indicator joining {f1, f2} to e inside an assembly.
/// Returns the pieces (T_f1, T_f2).
std::pair<PieceSet, PieceSet> matching_into(Assembly& a, const Edge& f1, const Edge& f2, const Edge& e,
                                            const Graph& h, std::size_t q, std::size_t d, SenderProvider& provider) {
  const std::size_t whole = a.open_part("matching-indicator", false);
  a.touch(f1);
  a.touch(f2);
  a.touch(e);
  std::vector<Edge> aux;
  for (std::size_t k = 1; k < q; ++k) aux.push_back(a.add_fresh_edge());

  // H_k share exactly the edge e; H's edge 0 is laid onto e.
  const Edge& h0 = h.edge(0);
  std::vector<std::vector<Edge>> hk_edges;
  for (std::size_t k = 1; k < q; ++k) {
    a.open_part("H_" + std::to_string(k), true);
    auto map = a.attach(h, {{h0.u, e.u}, {h0.v, e.v}}, {0});
    a.close_part();
    std::vector<Edge> rest;
    for (EdgeId id = 1; id < h.m(); ++id) rest.emplace_back(map[h.edge(id).u], map[h.edge(id).v]);
    hk_edges.push_back(std::move(rest));
  }

  const SenderSpec neg = provider.sender(Polarity::Negative, q, h, d);
  const SenderSpec pos = provider.sender(Polarity::Positive, q, h, d);
  const std::size_t s1 = a.part_count();
  a.attach_sender(neg, f1, aux[0], "(i) f1-e1");
  for (std::size_t k = 2; k < q; ++k) a.attach_sender(neg, f2, aux[k - 1], "(i) f2-e" + std::to_string(k));
  for (std::size_t k = 1; k < q; ++k)
    for (std::size_t l = k + 1; l < q; ++l)
      a.attach_sender(neg, aux[k - 1], aux[l - 1], "(ii) e" + std::to_string(k) + "-e" + std::to_string(l));
  for (std::size_t k = 1; k < q; ++k)
    for (const Edge& g : hk_edges[k - 1]) a.attach_sender(pos, aux[k - 1], g, "(iii) e" + std::to_string(k) + "-H");
  a.close_part();

  const PieceSet& sender1 = a.piece(s1);
  PieceSet t1 = sender1;
  PieceSet t2;
  const PieceSet& all = a.piece(whole);
  for (Vertex v : all.vertices)
    if (!sender1.vertices.count(v) || aux[0].touches(v)) t2.vertices.insert(v);
  for (const Edge& x : all.edges)
    if (t2.vertices.count(x.u) && t2.vertices.count(x.v)) t2.edges.insert(x);
  return {t1, t2};
}

/// Recursive indicator for F (vertices at fmap) and target edge e. Returns T by F edge id.
std::vector<PieceSet> indicator_into(Assembly& a, const Graph& f, const std::vector<Vertex>& fmap, const Edge& e,
                                     const Graph& h, std::size_t q, std::size_t d, SenderProvider& provider) {
  std::vector<PieceSet> t(f.m());
  const Edge f1(fmap[f.edge(0).u], fmap[f.edge(0).v]);
  if (f.m() == 1) {
    const std::size_t idx = a.open_part("indicator e(F)=1", false);
    a.attach_sender(provider.sender(Polarity::Positive, q, h, d), f1, e, "S+ f-e");
    a.close_part();
    t[0] = a.piece(idx);
    return t;
  }
  a.open_part("indicator e(F)=" + std::to_string(f.m()), false);
  const Edge e1 = a.add_fresh_edge();
  a.open_part("G1", false);
  auto t1 = indicator_into(a, f.without_edge(0), fmap, e1, h, q, d, provider);
  a.close_part();
  const std::size_t g2 = a.open_part("G2", false);
  matching_into(a, f1, e1, e, h, q, d, provider);
  a.close_part();
  a.close_part();
  t[0] = a.piece(g2);
  for (std::size_t i = 1; i < f.m(); ++i) t[i] = std::move(t1[i - 1]);
  return t;
}

IndicatorSpec finish_indicator(const Assembly& a, const Graph& f, const std::vector<Vertex>& fmap, const Edge& e,
                               const std::vector<PieceSet>& t, const GadgetParams& params, bool matching) {
  IndicatorSpec ind;
  ind.graph = a.graph();
  ind.f = f;
  ind.f_image = fmap;
  for (const Edge& fe : f.edges()) ind.f_edges.push_back(ind.graph.require_edge(fmap[fe.u], fmap[fe.v]));
  ind.e = ind.graph.require_edge(e.u, e.v);
  ind.params = params;
  for (const PieceSet& p : t) ind.t.push_back(detail::to_piece(ind.graph, p));
  ind.parts = a.parts(ind.graph);
  ind.matching = matching;
  ind.concrete = !a.any_mock();
  return ind;
}

}  // namespace

IndicatorSpec build_matching_indicator(const Graph& h, std::size_t q, std::size_t d, SenderProvider& provider) {
  check_sender_params(q, h);
  d = std::max(d, h.n() + 1);
  Assembly a;
  a.open_part("F", true);
  const Edge f1 = a.add_fresh_edge();
  const Edge f2 = a.add_fresh_edge();
  a.close_part();
  a.open_part("e", true);
  const Edge e = a.add_fresh_edge();
  a.close_part();
  auto [t1, t2] = matching_into(a, f1, f2, e, h, q, d, provider);
  const Graph f(4, {{0, 1}, {2, 3}});
  return finish_indicator(a, f, {f1.u, f1.v, f2.u, f2.v}, e, {t1, t2}, {q, h, d}, true);
}

IndicatorSpec build_indicator(const Graph& h, const Graph& f, std::size_t q, std::size_t d,
                              SenderProvider& provider) {
  check_sender_params(q, h);
  if (f.m() == 0) throw Error("F must have at least one edge");
  if (f.isolated_count() > 0) throw Error("F may not have isolated vertices");
  if (contains_copy(f, h)) throw Error("F contains a copy of H; no indicator exists");
  d = std::max(d, h.n() + 1);
  Assembly a;
  a.open_part("F", true);
  std::vector<Vertex> fmap;
  for (Vertex v = 0; v < f.n(); ++v) fmap.push_back(a.add_vertex());
  for (const Edge& fe : f.edges()) a.add_edge(fmap[fe.u], fmap[fe.v]);
  a.close_part();
  a.open_part("e", true);
  const Edge e = a.add_fresh_edge();
  a.close_part();
  auto t = indicator_into(a, f, fmap, e, h, q, d, provider);
  return finish_indicator(a, f, fmap, e, t, {q, h, d}, false);
}

DennisResult build_dennis_distinguisher(const Graph& h, const Graph& hprime, std::size_t q,
                                        SenderProvider& provider) {
  check_sender_params(q, hprime);
  const std::size_t d = h.n() + 1;
  const SenderSpec s = provider.sender(Polarity::Positive, q, hprime, d);
  Assembly a;
  a.open_part("H'", true);
  std::vector<Vertex> himg;
  for (Vertex v = 0; v < hprime.n(); ++v) himg.push_back(a.add_vertex());
  for (const Edge& x : hprime.edges()) a.add_edge(himg[x.u], himg[x.v]);
  a.close_part();
  a.open_part("e", true);
  const Edge e = a.add_fresh_edge();
  a.close_part();
  for (EdgeId id = 0; id < hprime.m(); ++id) {
    const Edge fe(himg[hprime.edge(id).u], himg[hprime.edge(id).v]);
    a.attach_sender(s, e, fe, "S+ e-f" + std::to_string(id));
  }
  DennisResult out;
  out.graph = a.graph();
  out.h_image = himg;
  out.e = out.graph.require_edge(e.u, e.v);
  out.parts = a.parts(out.graph);
  out.concrete = !a.any_mock();

  // Sender copies meet only in e and at most one vertex of the copy of H'.
  std::vector<Vertex> hv = himg;
  std::sort(hv.begin(), hv.end());
  for (std::size_t i = 0; i < out.parts.size(); ++i)
    for (std::size_t j = i + 1; j < out.parts.size(); ++j) {
      const Part& p = out.parts[i];
      const Part& r = out.parts[j];
      if (p.role.rfind("S+", 0) != 0 || r.role.rfind("S+", 0) != 0) continue;
      std::vector<Vertex> both;
      std::set_intersection(p.vertices.begin(), p.vertices.end(), r.vertices.begin(), r.vertices.end(),
                            std::back_inserter(both));
      std::size_t in_h = 0;
      for (Vertex v : both) {
        if (e.touches(v)) continue;
        if (!std::binary_search(hv.begin(), hv.end(), v)) throw std::logic_error("sender copies overlap");
        ++in_h;
      }
      if (in_h > 1) throw std::logic_error("sender copies share more than one vertex of H'");
    }
  return out;
}

// --- containment construction ------------------------------------------------

Theorem12Result build_theorem12_graph(const Graph& h, const Graph& f, std::size_t q,
                                      const EdgeColouring& free_colouring, SenderProvider& provider,
                                      bool criticality, const SolveOptions& options) {
  check_sender_params(q, h);
  if (free_colouring.size() != f.m() || !free_colouring.is_total() || free_colouring.q() != q)
    throw Error("free colouring must be a total q-colouring of F");
  if (auto bad = check_colouring(f, ColourConstraintSet::uniform(f, h, q), free_colouring))
    throw Error("the colouring of F is not H-free: " + bad->detail);
  const std::size_t d = h.n() + 1;

  Assembly a;
  a.open_part("F", true);
  std::vector<Vertex> fmap;
  for (Vertex v = 0; v < f.n(); ++v) fmap.push_back(a.add_vertex());
  for (const Edge& fe : f.edges()) a.add_edge(fmap[fe.u], fmap[fe.v]);
  a.close_part();
  std::vector<Edge> r, e, fk;
  a.open_part("matching", true);
  for (std::size_t k = 0; k < q; ++k) r.push_back(a.add_fresh_edge());
  for (std::size_t k = 0; k < q; ++k) e.push_back(a.add_fresh_edge());
  for (std::size_t k = 0; k < q; ++k) fk.push_back(a.add_fresh_edge());
  a.close_part();

  const SenderSpec neg = provider.sender(Polarity::Negative, q, h, d);
  const SenderSpec pos = provider.sender(Polarity::Positive, q, h, d);
  auto name = [](const char* tag, std::size_t k) { return std::string(tag) + std::to_string(k + 1); };

  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t l = k + 1; l < q; ++l)
      a.attach_sender(neg, r[k], r[l], "(i) r" + std::to_string(k + 1) + "-r" + std::to_string(l + 1));
  for (std::size_t k = 0; k < q; ++k)
    for (EdgeId id : free_colouring.colour_class(static_cast<Colour>(k + 1))) {
      const Edge g(fmap[f.edge(id).u], fmap[f.edge(id).v]);
      a.attach_sender(pos, r[k], g, name("(ii) r", k) + "-F");
    }
  for (std::size_t k = 0; k < q; ++k) {
    const auto cls = free_colouring.colour_class(static_cast<Colour>(k + 1));
    if (cls.empty()) continue;
    std::vector<Vertex> vk;
    for (EdgeId id : cls) {
      vk.push_back(f.edge(id).u);
      vk.push_back(f.edge(id).v);
    }
    std::sort(vk.begin(), vk.end());
    vk.erase(std::unique(vk.begin(), vk.end()), vk.end());
    std::vector<Edge> local;
    for (EdgeId id : cls) {
      const auto pu = std::lower_bound(vk.begin(), vk.end(), f.edge(id).u) - vk.begin();
      const auto pv = std::lower_bound(vk.begin(), vk.end(), f.edge(id).v) - vk.begin();
      local.emplace_back(static_cast<Vertex>(pu), static_cast<Vertex>(pv));
    }
    const Graph fk_graph(vk.size(), local);
    std::vector<Vertex> kmap;
    for (Vertex v : vk) kmap.push_back(fmap[v]);
    a.open_part(name("(iii) I", k), false);
    indicator_into(a, fk_graph, kmap, e[k], h, q, d, provider);
    a.close_part();
  }
  for (std::size_t k = 0; k < q; ++k) a.attach_sender(neg, e[k], fk[k], name("(iv) e", k) + "-f");
  for (std::size_t k = 0; k + 1 < q; ++k)
    a.attach_sender(pos, fk[k], fk[k + 1], name("(v) f", k) + "-f" + std::to_string(k + 2));

  Theorem12Result out;
  out.graph = a.graph();
  out.f_image = fmap;
  for (const Edge& fe : f.edges()) out.f_edges.push_back(out.graph.require_edge(fmap[fe.u], fmap[fe.v]));
  for (std::size_t k = 0; k < q; ++k) {
    out.r.push_back(out.graph.require_edge(r[k].u, r[k].v));
    out.e.push_back(out.graph.require_edge(e[k].u, e[k].v));
    out.f.push_back(out.graph.require_edge(fk[k].u, fk[k].v));
  }
  out.parts = a.parts(out.graph);
  out.d = d;
  out.concrete = !a.any_mock();

  if (!criticality) return out;
  const Graph& g = out.graph;
  for (EdgeId fid = 0; fid < f.m(); ++fid) {
    const EdgeId removed = out.f_edges[fid];
    const auto p = static_cast<Colour>(free_colouring[fid]);
    std::vector<Colour> colours(g.m(), 0);
    for (EdgeId id = 0; id < f.m(); ++id) colours[out.f_edges[id]] = free_colouring[id];
    for (std::size_t k = 0; k < q; ++k) {
      const auto c = static_cast<Colour>(k + 1);
      colours[out.r[k]] = c;
      colours[out.e[k]] = c == p ? static_cast<Colour>(p == 1 ? 2 : 1) : c;
      colours[out.f[k]] = p;
    }
    CriticalityColouring cc;
    cc.f = removed;
    cc.host = g.without_edge(removed);
    cc.complete = out.concrete;
    if (out.concrete) {
      for (const Part& part : out.parts) {
        if (part.parent != -1 || part.role == "F" || part.role == "matching") continue;
        std::vector<EdgeId> pe;
        for (EdgeId x : part.edges)
          if (x != removed) pe.push_back(x);
        if (!detail::fill_part(g, part, h, q, colours, pe, options)) {
          cc.complete = false;
          break;
        }
      }
    }
    std::vector<Colour> on_host;
    for (EdgeId x = 0; x < g.m(); ++x)
      if (x != removed) on_host.push_back(colours[x]);
    cc.colouring = EdgeColouring(q, std::move(on_host));
    if (cc.complete)
      cc.validated = !check_colouring(cc.host, ColourConstraintSet::uniform(cc.host, h, q), cc.colouring);
    out.criticality.push_back(std::move(cc));
  }
  return out;
}

std::optional<EdgeColouring> spread_free_colouring(const Graph& f, const Graph& h, std::size_t q,
                                                   const SolveOptions& options) {
  if (f.m() == 0) return EdgeColouring(q, 0);
  ColourConstraintSet cs = ColourConstraintSet::uniform(f, h, q);
  ColourConstraintSet spread = cs;
  for (EdgeId x = 0; x < std::min<std::size_t>(q, f.m()); ++x) spread.pin(x, static_cast<Colour>(x + 1));
  auto cert = solve(f, spread, options);
  if (cert.verdict == Verdict::NotArrow) return cert.witness;
  cert = solve(f, cs, options);
  if (cert.verdict == Verdict::NotArrow) return cert.witness;
  return std::nullopt;
}

GrowthResult grow_minimal_sequence(const Graph& h, std::size_t q, const Graph& f0, std::size_t iterations,
                                   SenderProvider& provider, const SolveOptions& options) {
  GrowthResult out;
  if (iterations == 0) return out;
  if (arrow(f0, h, q, options).verdict == Verdict::Arrow) throw Error("F0 is already Ramsey for H");
  std::size_t copies = 1;
  for (std::size_t i = 0; i < iterations; ++i) {
    try {
      const Graph fi = disjoint_copies(f0, copies);
      auto colouring = spread_free_colouring(fi, h, q, options);
      if (!colouring) throw std::logic_error("disjoint copies of F0 became Ramsey");
      for (std::size_t c = 1; c <= q; ++c)
        if (colouring->colour_class(static_cast<Colour>(c)).empty())
          throw Error("F0 needs an H-free colouring that uses every colour");
      Theorem12Result built = build_theorem12_graph(h, fi, q, *colouring, provider, false, options);
      Graph minimal = shrink_to_minimal(built.graph, h, q, options);
      std::vector<Vertex> keep;
      for (Vertex v = 0; v < minimal.n(); ++v)
        if (minimal.degree(v) > 0) keep.push_back(v);
      GrowthStep step;
      step.construction = built.graph;
      step.minimal = minimal.induced(keep);
      for (Vertex v : built.f_image) {
        auto it = std::lower_bound(keep.begin(), keep.end(), v);
        if (it == keep.end() || *it != v) throw std::logic_error("minimal subgraph lost a vertex of F");
        step.f_image.push_back(static_cast<Vertex>(it - keep.begin()));
      }
      step.copies_of_f = copies;
      if (!out.steps.empty() && step.minimal.n() <= out.steps.back().minimal.n())
        throw std::logic_error("growth sequence failed to increase in order");
      copies = step.minimal.n();
      out.steps.push_back(std::move(step));
    } catch (const BudgetExceeded&) {
      out.stopped = "budget exceeded at iteration " + std::to_string(i);
      break;
    }
  }
  return out;
}

}  // namespace arrowlab

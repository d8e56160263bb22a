#include <random>

#include "arrowlab/gadgets.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arrowlab;

namespace {

const Graph k3 = complete_graph(3);
const Graph k4 = complete_graph(4);

SenderSpec builtin(Polarity p) {
  for (const auto& s : builtin_k3_senders())
    if (s.polarity == p) return s;
  throw std::logic_error("missing builtin sender");
}

std::size_t count_roles(const std::vector<Part>& parts, const std::string& prefix) {
  return std::count_if(parts.begin(), parts.end(),
                       [&](const Part& p) { return p.role.rfind(prefix, 0) == 0; });
}

std::size_t count_top(const std::vector<Part>& parts, const std::string& prefix) {
  return std::count_if(parts.begin(), parts.end(),
                       [&](const Part& p) { return p.parent == -1 && p.role.rfind(prefix, 0) == 0; });
}

/// The verdict the oracle predicts for verify_sender.
GadgetVerdict sender_truth(const SenderSpec& s) {
  if (!sender_structure_problems(s).empty()) return GadgetVerdict::Refuted;
  auto t = oracle::gadget_truth(s.graph, s.params.h, s.params.q, s.e, s.f, {}, 0);
  if (!t.s1) return GadgetVerdict::Refuted;
  const bool forced = s.polarity == Polarity::Positive ? t.equal_forced : t.differ_forced;
  return forced ? GadgetVerdict::Verified : GadgetVerdict::Refuted;
}

/// First failing property by brute force, or "" when every property holds.
std::string indicator_truth(const IndicatorSpec& ind) {
  auto t = oracle::gadget_truth(ind.graph, ind.params.h, ind.params.q, ind.e, ind.e, ind.f_edges, ind.e);
  if (!t.i1) return "I1";
  if (!t.i2) return "I2";
  if (!ind.matching && !t.i3) return "I3";
  if (ind.matching && !t.i3prime) return "I3'";
  return "";
}

IndicatorSpec single_edge_indicator(const Graph& g, EdgeId f, EdgeId e, std::size_t d) {
  IndicatorSpec ind;
  ind.graph = g;
  ind.f = complete_graph(2);
  ind.f_image = {g.edge(f).u, g.edge(f).v};
  ind.f_edges = {f};
  ind.e = e;
  ind.params = {2, k3, d};
  TPiece all;
  for (Vertex v = 0; v < g.n(); ++v) all.vertices.push_back(v);
  for (EdgeId x = 0; x < g.m(); ++x) all.edges.push_back(x);
  ind.t = {all};
  ind.concrete = true;
  return ind;
}

void check_against_oracle(const IndicatorSpec& ind) {
  REQUIRE(indicator_structure_problems(ind).empty());
  const auto check = verify_indicator(ind);
  const std::string expected = indicator_truth(ind);
  if (expected.empty()) {
    CHECK(check.verdict == GadgetVerdict::Verified);
  } else {
    CHECK(check.verdict == GadgetVerdict::Refuted);
    CHECK(check.property.substr(0, expected.size()) == expected);
  }
}

}  // namespace

TEST_CASE("builtin senders verify and match enumeration") {
  for (const auto& s : builtin_k3_senders()) {
    CHECK(sender_structure_problems(s).empty());
    CHECK(verify_sender(s).verdict == GadgetVerdict::Verified);
  }
  const SenderSpec pos = builtin(Polarity::Positive);
  REQUIRE(pos.graph.m() <= 20);
  CHECK(sender_truth(pos) == GadgetVerdict::Verified);
  SenderSpec flipped = pos;
  flipped.polarity = Polarity::Negative;
  auto c = verify_sender(flipped);
  CHECK(c.verdict == GadgetVerdict::Refuted);
  CHECK(c.property == "S2");
  REQUIRE(c.witness);
  CHECK((*c.witness)[pos.e] == (*c.witness)[pos.f]);
  CHECK(sender_truth(flipped) == GadgetVerdict::Refuted);
}

TEST_CASE("sender verdicts match enumeration on variants") {
  const SenderSpec pos = builtin(Polarity::Positive);
  int checked = 0;
  for (EdgeId drop = 0; drop < pos.graph.m(); ++drop) {
    if (drop == pos.e || drop == pos.f) continue;
    SenderSpec s = pos;
    s.graph = pos.graph.without_edge(drop);
    s.e = pos.e > drop ? pos.e - 1 : pos.e;
    s.f = pos.f > drop ? pos.f - 1 : pos.f;
    s.params.d = 1;
    for (Polarity p : {Polarity::Positive, Polarity::Negative}) {
      s.polarity = p;
      CHECK(verify_sender(s).verdict == sender_truth(s));
      ++checked;
    }
  }
  CHECK(checked == 30);

  std::mt19937_64 rng(77);
  int random_checked = 0;
  while (random_checked < 150) {
    const Graph g = oracle::random_graph(rng, 5 + rng() % 4, 0.55);
    if (g.m() < 2 || g.m() > 16) continue;
    const auto a = static_cast<EdgeId>(rng() % g.m());
    const auto b = static_cast<EdgeId>(rng() % g.m());
    if (g.edge(a).shares_vertex(g.edge(b))) continue;
    SenderSpec s{g, a, b, rng() % 2 ? Polarity::Positive : Polarity::Negative, {2, k3, 1}, Provenance::Loaded,
                 false};
    CHECK(verify_sender(s).verdict == sender_truth(s));
    ++random_checked;
  }
}

TEST_CASE("sender refutations") {
  SenderSpec k6{complete_graph(6), 0, complete_graph(6).require_edge(2, 3), Polarity::Positive, {2, k3, 1},
                Provenance::Loaded, false};
  auto c = verify_sender(k6);
  CHECK(c.verdict == GadgetVerdict::Refuted);
  CHECK(c.property == "S1");
  CHECK(sender_truth(k6) == GadgetVerdict::Refuted);

  const Graph matching(4, {{0, 1}, {2, 3}});
  SenderSpec m{matching, 0, 1, Polarity::Positive, {2, k3, 0}, Provenance::Loaded, false};
  c = verify_sender(m);
  CHECK(c.verdict == GadgetVerdict::Refuted);
  CHECK(c.property == "S2");
  REQUIRE(c.witness);
  CHECK((*c.witness)[0] != (*c.witness)[1]);

  SenderSpec close = builtin(Polarity::Positive);
  close.params.d = 5;
  c = verify_sender(close);
  CHECK(c.verdict == GadgetVerdict::Refuted);
  CHECK(c.property == "S3");

  CHECK_THROWS_AS(verify_sender(SenderSpec{matching, 0, 1, Polarity::Positive, {1, k3, 0}}), Error);
}

TEST_CASE("search_sender") {
  CHECK_FALSE(search_sender(2, k3, 1, Polarity::Negative, [] { return std::optional<Graph>(); }));
  CHECK_THROWS_AS(search_sender(1, k3, 1, Polarity::Negative, all_graphs_stream(4)), Error);
  // Stream the known positive sender after a few decoys.
  const SenderSpec pos = builtin(Polarity::Positive);
  std::vector<Graph> stream{complete_graph(6), cycle_graph(5), pos.graph};
  std::size_t at = 0;
  auto found = search_sender(2, k3, 2, Polarity::Positive, [&]() -> std::optional<Graph> {
    if (at == stream.size()) return std::nullopt;
    return stream[at++];
  });
  REQUIRE(found);
  CHECK(found->graph == pos.graph);
  CHECK(verify_sender(*found).verdict == GadgetVerdict::Verified);
  CHECK(sender_truth(*found) == GadgetVerdict::Verified);

  auto stream4 = all_graphs_stream(4);
  std::size_t count = 0;
  while (auto g = stream4()) {
    CHECK(g->isolated_count() == 0);
    ++count;
  }
  // labelled graphs without isolated vertices: 1 on 2 vertices, 4 on 3, 41 on 4
  CHECK(count == 46);
}

TEST_CASE("chaining senders") {
  const SenderSpec pos = builtin(Polarity::Positive);
  const SenderSpec neg = builtin(Polarity::Negative);
  const SenderSpec pp = chain_senders(pos, pos);
  CHECK(pp.polarity == Polarity::Positive);
  CHECK(pp.graph.m() == 2 * pos.graph.m() - 1);
  CHECK(pp.params.d >= 4);
  CHECK(verify_sender(pp).verdict == GadgetVerdict::Verified);
  const SenderSpec np = chain_senders(neg, pos);
  CHECK(np.polarity == Polarity::Negative);
  CHECK(verify_sender(np).verdict == GadgetVerdict::Verified);

  CorpusSenderProvider corpus(builtin_k3_senders());
  for (std::size_t d : {1u, 4u, 6u})
    for (Polarity p : {Polarity::Positive, Polarity::Negative}) {
      SenderSpec s = corpus.sender(p, 2, k3, d);
      CHECK(s.polarity == p);
      CHECK(sender_structure_problems(s).empty());
      CHECK(distance(s.graph, s.graph.edge(s.e), s.graph.edge(s.f)) >= d);
    }
  CHECK_THROWS_AS(corpus.sender(Polarity::Positive, 3, k3, 2), Error);
}

TEST_CASE("join_by_sender") {
  const SenderSpec pos = builtin(Polarity::Positive);
  const Graph two(4, {{0, 1}, {2, 3}});
  auto j = join_by_sender(two, 0, 1, pos);
  CHECK(j.graph.n() == pos.graph.n());
  CHECK(j.graph.m() == pos.graph.m());
  auto twice = join_by_sender(j.graph, 0, j.graph.require_edge(2, 3), pos);
  CHECK(twice.graph.n() == 2 * pos.graph.n() - 4);
  CHECK(twice.graph.m() == 2 * pos.graph.m() - 2);
  std::vector<Vertex> first = j.sender_map, second = twice.sender_map;
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  std::vector<Vertex> shared;
  std::set_intersection(first.begin(), first.end(), second.begin(), second.end(), std::back_inserter(shared));
  CHECK(shared == std::vector<Vertex>{0, 1, 2, 3});
  CHECK_THROWS_AS(join_by_sender(two, 0, 0, pos), Error);
  CHECK_THROWS_AS(join_by_sender(path_graph(3), 0, 1, pos), Error);
}

TEST_CASE("mock provider stubs") {
  MockSenderProvider mock;
  for (std::size_t d : {1u, 4u, 5u}) {
    SenderSpec s = mock.sender(Polarity::Negative, 3, k4, d);
    CHECK(s.provenance == Provenance::Mock);
    CHECK(sender_structure_problems(s).empty());
    CHECK(distance(s.graph, s.graph.edge(s.e), s.graph.edge(s.f)) == d);
    CHECK(contains_copy(s.graph, k4));
  }
}

TEST_CASE("structural suite with mock senders") {
  MockSenderProvider mock;
  const std::vector<Graph> fs{complete_graph(2), Graph(4, {{0, 1}, {2, 3}}), path_graph(3), path_graph(4)};
  for (std::size_t q : {2u, 3u, 4u})
    for (const Graph& h : {k3, k4}) {
      CAPTURE(q);
      auto m = build_matching_indicator(h, q, 0, mock);
      CHECK(m.matching);
      CHECK(indicator_structure_problems(m).empty());
      CHECK(copy_locality_violations(m.graph, m.parts, h).empty());
      CHECK(verify_indicator(m).verdict == GadgetVerdict::StructuralOnly);
      CHECK(m.params.d == h.n() + 1);
      CHECK(count_roles(m.parts, "H_") == q - 1);
      CHECK(count_roles(m.parts, "(i) ") == q - 1);
      CHECK(count_roles(m.parts, "(ii) ") == (q - 1) * (q - 2) / 2);
      CHECK(count_roles(m.parts, "(iii) ") == (q - 1) * (h.m() - 1));
      for (const Graph& f : fs) {
        auto ind = build_indicator(h, f, q, 0, mock);
        CHECK(indicator_structure_problems(ind).empty());
        CHECK(copy_locality_violations(ind.graph, ind.parts, h).empty());
        CHECK(verify_indicator(ind).verdict == GadgetVerdict::StructuralOnly);
        CHECK(is_induced_image(ind.graph, f, ind.f_image));
      }
    }
}

TEST_CASE("indicator recursion shape") {
  MockSenderProvider mock;
  auto single = build_indicator(k3, complete_graph(2), 2, 0, mock);
  CHECK(count_roles(single.parts, "S+") == 1);
  CHECK(count_roles(single.parts, "matching-indicator") == 0);
  auto p3 = build_indicator(k3, path_graph(3), 2, 0, mock);
  CHECK(count_roles(p3.parts, "G1") == 1);
  CHECK(count_roles(p3.parts, "G2") == 1);
  CHECK(count_roles(p3.parts, "matching-indicator") == 1);
  auto p4 = build_indicator(k3, path_graph(4), 2, 0, mock);
  CHECK(count_roles(p4.parts, "matching-indicator") == 2);

  CHECK_THROWS_AS(build_indicator(k3, k3, 2, 0, mock), Error);
  CHECK_THROWS_AS(build_indicator(k3, Graph(3, {{0, 1}}), 2, 0, mock), Error);
  CHECK_THROWS_AS(build_matching_indicator(Graph(3), 2, 0, mock), Error);
  CHECK_THROWS_AS(build_matching_indicator(k3, 1, 0, mock), Error);
}

TEST_CASE("structural checker catches broken decompositions") {
  MockSenderProvider mock;
  auto ind = build_matching_indicator(k3, 2, 0, mock);
  auto broken = ind;
  broken.t[0] = broken.t[1];
  CHECK_FALSE(indicator_structure_problems(broken).empty());
  broken = ind;
  broken.t[1].edges.clear();
  CHECK_FALSE(indicator_structure_problems(broken).empty());
  broken = ind;
  broken.params.d = 1000;
  CHECK_FALSE(indicator_structure_problems(broken).empty());
  // A copy of H spanning two parts is reported.
  Graph bridged = ind.graph.with_edges(std::vector<Edge>{{ind.f_image[0], ind.graph.edge(ind.e).u},
                                                         {ind.f_image[1], ind.graph.edge(ind.e).u}});
  CHECK(copy_locality_violations(bridged, ind.parts, k3).empty() == false);
}

TEST_CASE("micro semantic suite: indicators against enumeration") {
  const SenderSpec pos = builtin(Polarity::Positive);
  const Graph two(4, {{0, 1}, {2, 3}});
  SUBCASE("single-edge indicator from the positive sender") {
    auto j = join_by_sender(two, 0, 1, pos);
    auto ind = single_edge_indicator(j.graph, 0, j.graph.require_edge(2, 3), 2);
    CHECK(verify_indicator(ind).verdict == GadgetVerdict::Verified);
    check_against_oracle(ind);
  }
  SUBCASE("sender replaced by a bare edge") {
    const Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
    auto ind = single_edge_indicator(g, 0, 2, 1);
    auto c = verify_indicator(ind);
    CHECK(c.verdict == GadgetVerdict::Refuted);
    CHECK(c.property == "I2");
    REQUIRE(c.witness);
    CHECK((*c.witness)[0] != (*c.witness)[2]);
    check_against_oracle(ind);
  }
  SUBCASE("random single-edge candidates") {
    std::mt19937_64 rng(5);
    int done = 0;
    while (done < 120) {
      Graph g = oracle::random_graph(rng, 5 + rng() % 4, 0.5);
      if (g.m() < 2 || g.m() > 16) continue;
      const auto f = static_cast<EdgeId>(rng() % g.m());
      const auto e = static_cast<EdgeId>(rng() % g.m());
      if (g.edge(f).shares_vertex(g.edge(e))) continue;
      check_against_oracle(single_edge_indicator(g, f, e, 1));
      ++done;
    }
  }
  SUBCASE("random matching candidates") {
    // f1 = 01, f2 = 23, e = 45; T_f1 lives on {0,1,4,5,6,7}, T_f2 on {2,3,4,5,8,9}.
    std::mt19937_64 rng(6);
    const std::vector<Vertex> side_a{0, 1, 4, 5, 6, 7}, side_b{2, 3, 4, 5, 8, 9};
    int done = 0, verified = 0;
    while (done < 60) {
      std::vector<Edge> es{{0, 1}, {2, 3}, {4, 5}};
      std::set<Edge> a_edges{{0, 1}, {4, 5}}, b_edges{{2, 3}, {4, 5}};
      std::bernoulli_distribution coin(0.45);
      for (const auto* side : {&side_a, &side_b})
        for (std::size_t i = 0; i < side->size(); ++i)
          for (std::size_t j = i + 1; j < side->size(); ++j) {
            const Edge x((*side)[i], (*side)[j]);
            if (x == Edge(0, 1) || x == Edge(2, 3) || x == Edge(4, 5)) continue;
            if (coin(rng)) {
              es.push_back(x);
              (side == &side_a ? a_edges : b_edges).insert(x);
            }
          }
      const Graph g(10, es);
      if (g.m() > 18 || g.isolated_count() > 0) continue;
      IndicatorSpec ind;
      ind.graph = g;
      ind.f = two;
      ind.f_image = {0, 1, 2, 3};
      ind.f_edges = {g.require_edge(0, 1), g.require_edge(2, 3)};
      ind.e = g.require_edge(4, 5);
      ind.params = {2, k3, 1};
      for (const auto& [side, edges] : {std::pair{&side_a, &a_edges}, std::pair{&side_b, &b_edges}}) {
        TPiece t;
        t.vertices = *side;
        std::sort(t.vertices.begin(), t.vertices.end());
        for (const Edge& x : *edges) t.edges.push_back(g.require_edge(x.u, x.v));
        std::sort(t.edges.begin(), t.edges.end());
        ind.t.push_back(t);
      }
      ind.matching = true;
      ind.concrete = true;
      check_against_oracle(ind);
      verified += indicator_truth(ind).empty();
      ++done;
    }
    MESSAGE("random matching candidates passing all properties: " << verified);
  }
}

TEST_CASE("concrete indicators at two colours") {
  CorpusSenderProvider corpus(builtin_k3_senders());
  auto single = build_indicator(k3, complete_graph(2), 2, 0, corpus);
  CHECK(single.concrete);
  CHECK(indicator_structure_problems(single).empty());
  CHECK(verify_indicator(single).verdict == GadgetVerdict::Verified);

  // With q = 2 there is a single auxiliary edge and nothing is attached to f2,
  // so every H-free colouring gives e the colour of f1 and (I3') fails for l = 1.
  auto m = build_matching_indicator(k3, 2, 0, corpus);
  CHECK(m.concrete);
  CHECK(indicator_structure_problems(m).empty());
  CHECK(copy_locality_violations(m.graph, m.parts, k3).empty());
  auto c = verify_indicator(m);
  CHECK(c.verdict == GadgetVerdict::Refuted);
  CHECK(c.property == "I3' (l=1, j=2)");
  {
    ColourConstraintSet cs = ColourConstraintSet::uniform(m.graph, k3, 2);
    cs.pin(m.f_edges[0], 1);
    cs.link(m.f_edges[0], m.e, false);
    CHECK(solve(m.graph, cs).verdict == Verdict::Arrow);
    ColourConstraintSet ok = ColourConstraintSet::uniform(m.graph, k3, 2);
    ok.pin(m.f_edges[1], 1);
    ok.pin(m.f_edges[0], 2);
    ok.pin(m.e, 2);
    CHECK(solve(m.graph, ok).verdict == Verdict::NotArrow);
  }

  // The recursion inherits the defect through G2.
  auto p3 = build_indicator(k3, path_graph(3), 2, 0, corpus);
  CHECK(indicator_structure_problems(p3).empty());
  CHECK(copy_locality_violations(p3.graph, p3.parts, k3).empty());
  c = verify_indicator(p3);
  CHECK(c.verdict == GadgetVerdict::Refuted);
  CHECK(c.property.rfind("I3 ", 0) == 0);
}

TEST_CASE("dennis distinguisher") {
  MockSenderProvider mock;
  auto d = build_dennis_distinguisher(k3, k3, 2, mock);
  CHECK_FALSE(d.concrete);
  CHECK(count_roles(d.parts, "S+") == 3);
  const SenderSpec stub = mock.sender(Polarity::Positive, 2, k3, 4);
  CHECK(d.graph.m() == 3 + 1 + 3 * (stub.graph.m() - 2));
  auto single = build_dennis_distinguisher(k3, complete_graph(2), 2, mock);
  CHECK(count_roles(single.parts, "S+") == 1);

  CorpusSenderProvider corpus(builtin_k3_senders());
  auto real = build_dennis_distinguisher(complete_graph(2), k3, 2, corpus);
  CHECK(real.concrete);
  CHECK(copy_locality_violations(real.graph, real.parts, k3).empty());
  CHECK(arrow(real.graph, k3, 2).verdict == Verdict::Arrow);
}

TEST_CASE("containment construction") {
  MockSenderProvider mock;
  const Graph p3 = path_graph(3);
  SUBCASE("q=3 shape") {
    const Graph f(6, {{0, 1}, {2, 3}, {4, 5}});
    EdgeColouring c(3, std::vector<Colour>{1, 2, 3});
    auto r = build_theorem12_graph(k3, f, 3, c, mock);
    CHECK(r.r.size() == 3);
    CHECK(count_top(r.parts, "(i) ") == 3);
    CHECK(count_top(r.parts, "(ii) ") == 3);
    CHECK(count_top(r.parts, "(iii) ") == 3);
    CHECK(count_top(r.parts, "(iv) ") == 3);
    CHECK(count_top(r.parts, "(v) ") == 2);
    CHECK(r.d == 4);
    CHECK(copy_locality_violations(r.graph, r.parts, k3).empty());
    CHECK(r.criticality.size() == 3);
    for (const auto& cc : r.criticality) CHECK_FALSE(cc.complete);
  }
  SUBCASE("empty class skips its indicator") {
    EdgeColouring c(2, std::vector<Colour>{1, 1});
    auto r = build_theorem12_graph(k3, p3, 2, c, mock);
    CHECK(count_top(r.parts, "(iii) ") == 1);
    CHECK(count_top(r.parts, "(ii) ") == 2);
  }
  SUBCASE("colouring must be H-free") {
    EdgeColouring c(2, std::vector<Colour>{1, 1, 1});
    CHECK_THROWS_AS(build_theorem12_graph(k3, k3, 2, c, mock), Error);
  }
  SUBCASE("concrete gadgets give validated criticality colourings") {
    CorpusSenderProvider corpus(builtin_k3_senders());
    EdgeColouring c(2, std::vector<Colour>{1, 2});
    auto r = build_theorem12_graph(k3, p3, 2, c, corpus);
    CHECK(r.concrete);
    CHECK(copy_locality_violations(r.graph, r.parts, k3).empty());
    REQUIRE(r.criticality.size() == 2);
    for (const auto& cc : r.criticality) {
      CHECK(cc.complete);
      CHECK(cc.validated);
      CHECK_FALSE(check_colouring(cc.host, ColourConstraintSet::uniform(cc.host, k3, 2), cc.colouring));
    }
    CHECK(arrow(r.graph, k3, 2).verdict == Verdict::Arrow);
  }
}

TEST_CASE("growth sequence") {
  CorpusSenderProvider corpus(builtin_k3_senders());
  const Graph two(4, {{0, 1}, {2, 3}});
  CHECK(grow_minimal_sequence(k3, 2, two, 0, corpus).steps.empty());
  CHECK_THROWS_AS(grow_minimal_sequence(k3, 2, complete_graph(2), 1, corpus), Error);
  CHECK_THROWS_AS(grow_minimal_sequence(k3, 2, complete_graph(6), 1, corpus), Error);
  auto r = grow_minimal_sequence(k3, 2, two, 1, corpus);
  REQUIRE(r.steps.size() == 1);
  const GrowthStep& s = r.steps[0];
  CHECK(s.copies_of_f == 1);
  CHECK(s.minimal.isolated_count() == 0);
  CHECK(is_induced_image(s.minimal, two, s.f_image));
  CHECK(arrow(s.minimal, k3, 2).verdict == Verdict::Arrow);
  auto one = grow_minimal_sequence(k3, 2, two, 1, corpus, {1000, 1});
  CHECK(one.steps.empty());
  CHECK(one.stopped.find("budget") != std::string::npos);
}

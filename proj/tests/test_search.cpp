#include <random>

#include "arrowlab/arrow.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arrowlab;

namespace {

bool validates(const Graph& host, const Graph& target, const ArrowCertificate& cert, std::size_t q) {
  if (!cert.witness) return false;
  return !check_colouring(host, ColourConstraintSet::uniform(host, target, q), *cert.witness);
}

}  // namespace

TEST_CASE("small arrows") {
  auto k6 = arrow(complete_graph(6), complete_graph(3), 2);
  CHECK(k6.verdict == Verdict::Arrow);
  auto k5 = arrow(complete_graph(5), complete_graph(3), 2);
  REQUIRE(k5.verdict == Verdict::NotArrow);
  CHECK(validates(complete_graph(5), complete_graph(3), k5, 2));
  // both colour classes are 5-cycles
  for (Colour c = 1; c <= 2; ++c) {
    Graph cls = colour_class_graph(complete_graph(5), *k5.witness, c);
    CHECK(cls.m() == 5);
    for (Vertex v = 0; v < 5; ++v) CHECK(cls.degree(v) == 2);
    CHECK(is_connected(cls));
  }
  const Graph k3k2 = *named_graph("K3+K2");
  auto s = arrow(complete_graph(6), k3k2, 2);
  CHECK(s.verdict == Verdict::NotArrow);
  CHECK(validates(complete_graph(6), k3k2, s, 2));

  CHECK(arrow(complete_graph(2), complete_graph(3), 2).verdict == Verdict::NotArrow);
  CHECK(arrow(complete_graph(4), complete_graph(4), 1).verdict == Verdict::Arrow);
  CHECK(arrow(cycle_graph(8), complete_graph(4), 1).verdict == Verdict::NotArrow);
}

TEST_CASE("solver agrees with enumeration on random instances") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 120) {
    const std::size_t q = 1 + rng() % 3;
    Graph host = oracle::random_graph(rng, 3 + rng() % 5, 0.6);
    std::size_t space = 1;
    for (std::size_t i = 0; i < host.m() && space <= (1u << 16); ++i) space *= q;
    if (space > (1u << 16)) continue;
    oracle::Constraints oc;
    std::vector<Graph> targets;
    for (std::size_t c = 0; c < q; ++c) {
      Graph t = oracle::random_graph(rng, 2 + rng() % 3, 0.7);
      if (t.m() == 0) t = complete_graph(2);
      targets.push_back(t);
    }
    oc.forbidden = targets;
    ColourConstraintSet cs = ColourConstraintSet::per_colour(host, targets);
    if (host.m() >= 2 && rng() % 2) {
      const auto e = static_cast<EdgeId>(rng() % host.m());
      const auto c = static_cast<Colour>(1 + rng() % q);
      cs.pin(e, c);
      oc.pins.emplace_back(e, c);
      const auto a = static_cast<EdgeId>(rng() % host.m()), b = static_cast<EdgeId>(rng() % host.m());
      const bool same = rng() % 2;
      cs.link(a, b, same);
      oc.links.push_back({a, b, same});
    }
    auto expected = oracle::first_colouring(host, oc);
    auto cert = solve(host, cs);
    CHECK((cert.verdict == Verdict::NotArrow) == expected.has_value());
    if (expected) {
      REQUIRE(cert.witness);
      CHECK(cert.witness->colours() == *expected);
    }
    ++tested;
  }
}

TEST_CASE("witness and counts do not depend on workers") {
  const Graph host = complete_graph(7).without_edge(3);
  for (const Graph& target : {complete_graph(3), *named_graph("K3+K2")}) {
    auto one = arrow(host, target, 2, {kNoBudget, 1});
    for (unsigned w : {2u, 3u, 8u}) {
      auto many = arrow(host, target, 2, {kNoBudget, w});
      CHECK(one.verdict == many.verdict);
      CHECK(one.witness == many.witness);
      CHECK(one.stats.nodes == many.stats.nodes);
    }
  }
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(arrow(complete_graph(6), complete_graph(3), 2, {5, 1}), BudgetExceeded);
  CHECK_THROWS_AS(arrow(complete_graph(6), complete_graph(3), 2, {5, 4}), BudgetExceeded);
  auto full = arrow(complete_graph(6), complete_graph(3), 2);
  CHECK_NOTHROW(arrow(complete_graph(6), complete_graph(3), 2, {full.stats.nodes, 1}));
  CHECK_THROWS_AS(arrow(complete_graph(6), complete_graph(3), 2, {full.stats.nodes - 1, 1}), BudgetExceeded);
}

TEST_CASE("minimality") {
  auto k6 = is_minimal(complete_graph(6), complete_graph(3), 2);
  CHECK(k6.minimal);
  CHECK(k6.deletions.size() == 15);
  for (const auto& d : k6.deletions) {
    REQUIRE(d.certificate.witness);
    Graph smaller = complete_graph(6).without_edge(d.edge);
    CHECK_FALSE(check_colouring(smaller, ColourConstraintSet::uniform(smaller, complete_graph(3), 2),
                                *d.certificate.witness));
  }
  CHECK_FALSE(is_minimal(complete_graph(7), complete_graph(3), 2).minimal);
  CHECK_FALSE(is_minimal(complete_graph(5), complete_graph(3), 2).minimal);
}

TEST_CASE("shrink") {
  Graph g = shrink_to_minimal(complete_graph(7), complete_graph(3), 2);
  CHECK(is_minimal(g, complete_graph(3), 2).minimal);
  CHECK(shrink_to_minimal(complete_graph(6), complete_graph(3), 2) == complete_graph(6));
  CHECK(shrink_to_minimal(complete_graph(3), complete_graph(3), 1) == complete_graph(3));
  CHECK_THROWS_AS(shrink_to_minimal(complete_graph(5), complete_graph(3), 2), Error);
}

TEST_CASE("ramsey numbers") {
  auto r33 = ramsey_number({3, 3}, 10);
  CHECK(r33.value == std::size_t{6});
  CHECK(r33.lower_witness);
  CHECK(ramsey_number({2, 5}, 10).value == std::size_t{5});
  CHECK(ramsey_number({3, 3}, 5).unresolved_reason.size() > 0);
}

TEST_CASE("split lift") {
  std::mt19937_64 rng(9);
  const Graph k6 = complete_graph(6);
  for (int i = 0; i < 10; ++i) {
    EdgeColouring c(2, k6.m());
    for (EdgeId e = 0; e < k6.m(); ++e) c.set(e, static_cast<Colour>(1 + rng() % 2));
    auto rep = split_lift_check(k6, c, complete_graph(3), 1, 1, true);
    CHECK(rep.consistent);
    CHECK((*rep.first_arrows || *rep.second_arrows));
  }
}

#include "arrowlab/arrow.hpp"

#include <string>

namespace arrowlab {

ArrowCertificate arrow(const Graph& host, const Graph& target, std::size_t q, const SolveOptions& options) {
  return solve(host, ColourConstraintSet::uniform(host, target, q), options);
}

MinimalityReport is_minimal(const Graph& host, const Graph& target, std::size_t q, const SolveOptions& options) {
  MinimalityReport report;
  report.host = arrow(host, target, q, options);
  if (report.host.verdict != Verdict::Arrow) return report;
  report.minimal = true;
  for (EdgeId e = 0; e < host.m(); ++e) {
    Graph smaller = host.without_edge(e);
    EdgeDeletion d{e, host.edge(e), arrow(smaller, target, q, options)};
    if (d.certificate.verdict == Verdict::Arrow) report.minimal = false;
    report.deletions.push_back(std::move(d));
  }
  return report;
}

Graph shrink_to_minimal(const Graph& host, const Graph& target, std::size_t q, const SolveOptions& options) {
  if (arrow(host, target, q, options).verdict != Verdict::Arrow)
    throw Error("shrink_to_minimal: host does not arrow the target");
  // Walk the original edges in order; deleting an edge is kept whenever the
  // remainder still arrows. One pass suffices: if G_t - e fails to arrow, so
  // does every subgraph of it.
  std::vector<Edge> kept = host.edges();
  std::size_t i = 0;
  while (i < kept.size()) {
    std::vector<Edge> trial = kept;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    Graph candidate(host.n(), trial);
    if (arrow(candidate, target, q, options).verdict == Verdict::Arrow) {
      kept = std::move(trial);
    } else {
      ++i;
    }
  }
  return Graph(host.n(), kept);
}

RamseyResult ramsey_number(const std::vector<std::size_t>& clique_sizes, std::size_t n_max,
                           const SolveOptions& options) {
  if (clique_sizes.empty()) throw Error("ramsey_number: need at least one colour");
  std::vector<Graph> targets;
  for (std::size_t k : clique_sizes) {
    if (k < 2) throw Error("ramsey_number: clique sizes must be at least 2");
    targets.push_back(complete_graph(k));
  }
  RamseyResult result;
  std::optional<EdgeColouring> previous;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Graph host = complete_graph(n);
    ArrowCertificate cert;
    try {
      cert = solve(host, ColourConstraintSet::per_colour(host, targets), options);
    } catch (const BudgetExceeded& ex) {
      result.unresolved_reason = "budget exceeded at n=" + std::to_string(n);
      result.steps.push_back({n, Verdict::NotArrow, ex.stats()});
      return result;
    }
    result.steps.push_back({n, cert.verdict, cert.stats});
    if (cert.verdict == Verdict::Arrow) {
      result.value = n;
      result.lower_witness = previous;
      return result;
    }
    previous = cert.witness;
  }
  result.unresolved_reason = "no arrow up to n_max=" + std::to_string(n_max);
  return result;
}

SplitReport split_lift_check(const Graph& host, const EdgeColouring& colouring, const Graph& target,
                             std::size_t q, std::size_t n, bool check_host, const SolveOptions& options) {
  if (q == 0 || n == 0) throw Error("split_lift_check: both parts need at least one colour");
  if (colouring.size() != host.m() || !colouring.is_total())
    throw Error("split_lift_check: colouring must be total on the host");
  if (colouring.q() != q + n) throw Error("split_lift_check: colouring must use q+n colours");

  std::vector<EdgeId> first_ids;
  std::vector<EdgeId> second_ids;
  for (EdgeId e = 0; e < host.m(); ++e) (colouring[e] <= q ? first_ids : second_ids).push_back(e);

  SplitReport report;
  report.first = host.edge_subgraph(first_ids);
  report.second = host.edge_subgraph(second_ids);

  auto decide = [&](const Graph& g, std::size_t colours) -> std::pair<std::optional<bool>, std::optional<EdgeColouring>> {
    try {
      auto cert = arrow(g, target, colours, options);
      return {cert.verdict == Verdict::Arrow, cert.witness};
    } catch (const BudgetExceeded&) {
      return {std::nullopt, std::nullopt};
    }
  };
  auto [a1, w1] = decide(report.first, q);
  auto [a2, w2] = decide(report.second, n);
  report.first_arrows = a1;
  report.second_arrows = a2;

  if (a1 == false && a2 == false) {
    // Edge ids of an edge subgraph follow the host's order restricted to it.
    EdgeColouring lifted(q + n, host.m());
    for (std::size_t i = 0; i < first_ids.size(); ++i) lifted.set(first_ids[i], (*w1)[static_cast<EdgeId>(i)]);
    for (std::size_t i = 0; i < second_ids.size(); ++i)
      lifted.set(second_ids[i], static_cast<Colour>((*w2)[static_cast<EdgeId>(i)] + q));
    report.lifted = std::move(lifted);
  }
  if (check_host) report.host_arrows = decide(host, q + n).first;

  if (report.lifted) {
    auto cs = ColourConstraintSet::uniform(host, target, q + n);
    if (check_colouring(host, cs, *report.lifted)) report.consistent = false;
    if (report.host_arrows == true) report.consistent = false;
  }
  return report;
}

}  // namespace arrowlab

#pragma once

#include <optional>
#include <vector>

#include "arrowlab/colouring.hpp"

namespace arrowlab {

/// G -> (H)_q: the same target forbidden in every colour.
ArrowCertificate arrow(const Graph& host, const Graph& target, std::size_t q,
                       const SolveOptions& options = {});

struct EdgeDeletion {
  EdgeId edge = 0;
  Edge endpoints;
  ArrowCertificate certificate;  // for host - edge
};

struct MinimalityReport {
  bool minimal = false;
  ArrowCertificate host;
  /// One entry per host edge; empty when the host does not arrow.
  std::vector<EdgeDeletion> deletions;
};

/// Edge-wise q-Ramsey-minimality. Isolated vertices are ignored.
MinimalityReport is_minimal(const Graph& host, const Graph& target, std::size_t q,
                            const SolveOptions& options = {});

/// Greedy deletion in edge-id order. The result keeps the host's vertex set.
/// Throws Error if the host does not arrow.
Graph shrink_to_minimal(const Graph& host, const Graph& target, std::size_t q,
                        const SolveOptions& options = {});

struct RamseyScanStep {
  std::size_t n = 0;
  Verdict verdict = Verdict::NotArrow;
  SearchStats stats;
};

struct RamseyResult {
  std::optional<std::size_t> value;
  std::optional<EdgeColouring> lower_witness;  // colouring of K_{value-1}
  std::vector<RamseyScanStep> steps;
  std::string unresolved_reason;
};

/// Smallest n with K_n -> (K_{k_1}, ..., K_{k_q}), scanning n = 1..n_max.
RamseyResult ramsey_number(const std::vector<std::size_t>& clique_sizes, std::size_t n_max,
                           const SolveOptions& options = {});

struct SplitReport {
  Graph first;   // colours 1..q
  Graph second;  // colours q+1..q+n
  std::optional<bool> first_arrows;
  std::optional<bool> second_arrows;
  std::optional<bool> host_arrows;
  /// When neither part arrows, their witnesses combined into a host colouring.
  std::optional<EdgeColouring> lifted;
  bool consistent = true;
};

/// Splits a total (q+n)-colouring into the uncoloured graphs of its first q and
/// last n classes and decides both arrows. When `check_host` is set the host's
/// own (q+n)-arrow is decided too; a budget overrun on any part leaves that
/// field empty.
SplitReport split_lift_check(const Graph& host, const EdgeColouring& colouring, const Graph& target,
                             std::size_t q, std::size_t n, bool check_host,
                             const SolveOptions& options = {});

}  // namespace arrowlab

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arrowlab/copies.hpp"
#include "arrowlab/graph.hpp"

namespace arrowlab {

/// Colours are 1..q; 0 marks an unassigned edge.
using Colour = std::uint8_t;
inline constexpr std::size_t kMaxColours = 16;

class EdgeColouring {
 public:
  EdgeColouring() = default;
  EdgeColouring(std::size_t q, std::size_t m);
  EdgeColouring(std::size_t q, std::vector<Colour> colours);

  [[nodiscard]] std::size_t q() const { return q_; }
  [[nodiscard]] std::size_t size() const { return colours_.size(); }
  [[nodiscard]] Colour operator[](EdgeId e) const { return colours_.at(e); }
  [[nodiscard]] bool assigned(EdgeId e) const { return colours_.at(e) != 0; }
  [[nodiscard]] bool is_total() const;
  [[nodiscard]] const std::vector<Colour>& colours() const { return colours_; }
  void set(EdgeId e, Colour c);
  void clear(EdgeId e) { colours_.at(e) = 0; }
  /// Edge ids carrying colour c.
  [[nodiscard]] std::vector<EdgeId> colour_class(Colour c) const;

  friend bool operator==(const EdgeColouring&, const EdgeColouring&) = default;

 private:
  std::size_t q_ = 0;
  std::vector<Colour> colours_;
};

/// The subgraph of `host` formed by the edges of colour c (same vertex set).
Graph colour_class_graph(const Graph& host, const EdgeColouring& colouring, Colour c);

struct Link {
  EdgeId a = 0;
  EdgeId b = 0;
  bool same = true;  // c(a) == c(b) if true, c(a) != c(b) otherwise
};

/// Constraints on a q-colouring of one host graph.
///
/// Colour i (1-based) may not contain a monochromatic copy from forbidden[i-1];
/// a null entry leaves that colour unrestricted.
struct ColourConstraintSet {
  std::vector<std::shared_ptr<const CopyList>> forbidden;
  std::vector<std::pair<EdgeId, Colour>> pins;
  std::vector<Link> links;

  [[nodiscard]] std::size_t q() const { return forbidden.size(); }

  /// Same target forbidden in every colour; the copy list is shared.
  static ColourConstraintSet uniform(const Graph& host, const Graph& target, std::size_t q);
  /// targets[i] forbidden in colour i+1. Equal targets share one copy list.
  static ColourConstraintSet per_colour(const Graph& host, std::span<const Graph> targets);

  void pin(EdgeId e, Colour c);
  void link(EdgeId a, EdgeId b, bool same) { links.push_back({a, b, same}); }
  /// Checks ids and colour ranges against a host with m edges.
  void validate(std::size_t m) const;
};

struct Violation {
  enum class Kind { Size, Unassigned, ColourRange, Pin, Link, MonochromaticCopy };
  Kind kind;
  std::string detail;
};

/// Constraint checker used to re-validate witnesses. It shares no code with the
/// search engine: monochromatic copies are detected by a plain backtracking
/// embedding test on each colour class.
std::optional<Violation> check_colouring(const Graph& host, const ColourConstraintSet& constraints,
                                         const EdgeColouring& colouring);

/// Naive subgraph containment test used by the checker.
bool naive_contains(const Graph& host, const Graph& target);

enum class Verdict { Arrow, NotArrow };

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  std::uint64_t subproblems = 0;
  double wall_ms = 0.0;
};

struct ArrowCertificate {
  Verdict verdict = Verdict::Arrow;
  std::optional<EdgeColouring> witness;  // present iff verdict == NotArrow
  SearchStats stats;
};

/// Raised when the node budget runs out before a verdict; carries partial stats.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(SearchStats stats)
      : Error("node budget exceeded"), stats_(stats) {}
  [[nodiscard]] const SearchStats& stats() const { return stats_; }

 private:
  SearchStats stats_;
};

inline constexpr std::uint64_t kNoBudget = std::numeric_limits<std::uint64_t>::max();

struct SolveOptions {
  std::uint64_t node_budget = kNoBudget;
  /// 0 selects default_workers().
  unsigned workers = 0;
};

/// Worker count from ARROWLAB_WORKERS, or 1.
unsigned default_workers();

/// Decides whether a total colouring meeting every constraint exists.
///
/// Verdict::NotArrow comes with the lexicographically least such colouring in
/// edge-id order; Verdict::Arrow means the search space was exhausted. The
/// verdict, witness and node counts do not depend on the worker count.
ArrowCertificate solve(const Graph& host, const ColourConstraintSet& constraints,
                       const SolveOptions& options = {});

}  // namespace arrowlab

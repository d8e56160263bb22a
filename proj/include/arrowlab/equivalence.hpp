#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arrowlab/gadgets.hpp"
#include "arrowlab/patterns.hpp"

namespace arrowlab {

/// H_i = K_{a_1} + ... + K_{a_i} for a nonincreasing list a_1 >= ... >= a_s >= 1.
struct CliqueSumFamily {
  std::vector<std::size_t> a;

  CliqueSumFamily() = default;
  /// Throws Error unless the list is nonincreasing and positive.
  explicit CliqueSumFamily(std::vector<std::size_t> sizes);

  [[nodiscard]] std::size_t s() const { return a.size(); }
  /// H_i for 0 <= i <= s; H_0 is the graph with no vertices.
  [[nodiscard]] Graph h(std::size_t i) const;
  /// v(H_i).
  [[nodiscard]] std::size_t order(std::size_t i) const;
};

// --- clique-sum recolouring ------------------------------------------------------

/// A colouring of K_order whose colour j class has no K_{clique_sizes[j-1]}.
struct InnerWitness {
  EdgeColouring colouring;  // complete_graph(order) edge order
  std::string source;
};

using InnerWitnessProvider =
    std::function<std::optional<InnerWitness>(std::size_t order, const std::vector<std::size_t>& clique_sizes)>;

/// Fixed colourings only: a colour whose bound exceeds the order takes every
/// edge; otherwise colours with bound 2 stay empty and the remaining colours,
/// all with bound 3, get the pentagon (two colours) or GF(16) (three colours)
/// colouring.
InnerWitnessProvider library_inner_provider();
/// Runs the search engine on K_order.
InnerWitnessProvider solver_inner_provider(const SolveOptions& options = {});
/// Library first, then the solver.
InnerWitnessProvider default_inner_provider(const SolveOptions& options = {});

struct SelectedSet {
  Colour colour = 1;
  std::size_t index = 0;             // i_j: the set hosts a copy of H_{i_j} in this colour
  std::vector<Vertex> vertices;      // sorted
};

struct RecolourTrace {
  std::vector<SelectedSet> selected;  // S_1 .. S_q
  std::vector<Vertex> inner;          // S_1 u ... u S_q, sorted
  std::size_t bound = 0;              // q (a_1 + ... + a_{s-1})
  std::vector<std::size_t> inner_sizes;  // (a_1 - a_s + 1, a_1, ..., a_1)
  InnerWitness witness;               // colouring of K_bound supplied by the provider
  EdgeColouring output;
};

/// The clique-sum recolouring. c must be a total q-colouring (q >= 2) with a
/// copy of H_{s-1} in colour 1 and no monochromatic H_s. The provider is asked
/// once, for a colouring of K_bound; failing that the strict Ramsey inequality
/// is not witnessed and Error is raised. Each S_j is the lexicographically
/// least vertex set of a largest H_i in colour j on the remaining vertices.
/// The output is checked to have no monochromatic K_{a_1}.
RecolourTrace recolour_theorem41(const Graph& g, const EdgeColouring& c, const CliqueSumFamily& fam,
                                 const InnerWitnessProvider& provider);

/// Lexicographically least sorted vertex set, inside `allowed`, spanning
/// vertex-disjoint cliques of the given sizes in g.
std::optional<std::vector<Vertex>> least_clique_sum(const Graph& g, const std::vector<std::size_t>& sizes,
                                                    const std::vector<bool>& allowed);

// --- focusing --------------------------------------------------------------------

struct FocusResult {
  std::vector<Vertex> subset;        // B', in the order of B
  std::vector<Colour> colour_of_a;   // the common colour from each a to B'
};

/// colours[i][j] is the colour of a[i] b[j]. Refines B over a in order, keeping
/// the largest colour class each time (ties to the smaller colour).
FocusResult focus(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                  const std::vector<std::vector<Colour>>& colours, std::size_t q);

// --- triangle plus edge ----------------------------------------------------------

struct TrianglePlusEdge {
  Colour colour = 1;
  std::array<Vertex, 3> triangle{};
  EdgeId edge = 0;
};

/// First monochromatic triangle with a vertex-disjoint edge of its colour:
/// colours ascending, triangles in lexicographic order, edges by id.
std::optional<TrianglePlusEdge> find_mono_HplusK2(const Graph& g, const EdgeColouring& c);

struct Theorem43Check {
  bool arrows_k3 = false;
  bool arrows_k3_k2 = false;
  bool contains_k6 = false;
  bool consistent = true;  // false would mean G -> K3, G -/-> K3+K2 and no K6
  SearchStats stats;
};

/// Decides both 2-colour arrows and K6 containment. Propagates BudgetExceeded.
Theorem43Check check_theorem43_predicate(const Graph& g, const SolveOptions& options = {});

struct Theorem17Result {
  EdgeColouring colouring;                          // 1 red, 2 blue, 3 yellow
  std::optional<std::array<Vertex, 3>> mono_triangle;
  bool outside_triangle = false;                    // G - S has a triangle
};

/// The three-colouring around a K6 on `s` with apex v: red and blue 5-cycles on
/// S - v, yellow from v into S, blue inside G - S, yellow between S - v and
/// G - S, red between v and G - S. Throws Error if s is not a 6-clique of g
/// containing v.
Theorem17Result theorem17_colouring(const Graph& g, const std::vector<Vertex>& s, Vertex v);

// --- non-equivalence tower -----------------------------------------------------------

struct TowerOptions {
  /// Replaces r = q^(v(Gq) + q k^2) + 1 when checking the pattern.
  std::optional<std::size_t> r_override;
  /// K_k.K_2-free q-colouring of Gq; searched for when absent.
  std::optional<EdgeColouring> gq_colouring;
  bool emit_colouring = true;
  SolveOptions solve;
};

struct TowerResult {
  Graph graph;
  std::vector<std::vector<Vertex>> levels;  // V_0 .. V_{k-2}
  std::vector<EdgeId> matching;             // e_1 .. e_q
  std::vector<Part> parts;
  std::string r_formula;                    // the exact r with its value or exponent
  std::size_t r_used = 0;
  bool pattern_certified = false;           // members critical at r_used
  bool structural_only = true;              // pattern or senders not checked semantically
  bool concrete = false;                    // no mock sender inside
  std::vector<std::string> problems;        // structural findings; empty when sound
  std::optional<EdgeColouring> colouring;   // (q+1)-colouring without monochromatic K_k.K_2
  bool colouring_validated = false;
};

/// G_{q+1} from G_q: a copy of Gq on V_0, pattern copies on V_1..V_{k-2}, all
/// edges between different V_i, a matching e_1..e_q, negative senders between
/// matching edges and a positive sender from every class-i pattern edge to e_i.
/// Senders are S+-(q+1, K_k, k). The pattern needs at least q members on a
/// common vertex set; the first q are used.
TowerResult build_nonequiv_tower(const Graph& gq, std::size_t k, std::size_t q, const ColourPattern& pattern,
                                 SenderProvider& provider, const TowerOptions& options = {});

}  // namespace arrowlab

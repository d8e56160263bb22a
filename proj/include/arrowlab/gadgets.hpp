#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "arrowlab/arrow.hpp"

namespace arrowlab {

enum class Polarity { Negative, Positive };
enum class Provenance { Searched, Loaded, Mock };

const char* to_string(Polarity p);
const char* to_string(Provenance p);

struct GadgetParams {
  std::size_t q = 2;
  Graph h;
  std::size_t d = 0;
};

struct SenderSpec {
  Graph graph;
  EdgeId e = 0;
  EdgeId f = 0;
  Polarity polarity = Polarity::Positive;
  GadgetParams params;
  Provenance provenance = Provenance::Mock;
  bool verified = false;
};

/// Vertex-disjointness of the signal edges and (S3). Empty when fine.
std::vector<std::string> sender_structure_problems(const SenderSpec& s);

// --- assembly bookkeeping ------------------------------------------------------

/// A named region of a composed graph: one gadget copy, one designated copy of
/// H, or the embedded F. Leaf parts are the regions every copy of H must fit in.
struct Part {
  std::string role;
  int parent = -1;
  bool leaf = true;
  bool mock = false;
  std::vector<Vertex> vertices;  // sorted
  std::vector<EdgeId> edges;     // sorted
};

struct TPiece {
  std::vector<Vertex> vertices;  // sorted
  std::vector<EdgeId> edges;     // sorted
};

struct IndicatorSpec {
  Graph graph;
  Graph f;                          // the abstract F
  std::vector<Vertex> f_image;      // F vertex -> graph vertex (the induced copy)
  std::vector<EdgeId> f_edges;      // F edge id -> graph edge id
  EdgeId e = 0;
  GadgetParams params;
  std::vector<TPiece> t;            // indexed by F edge id
  std::vector<Part> parts;
  bool matching = false;            // built by the matching construction; (I3') applies
  bool concrete = false;            // no mock gadget inside
};

/// Checks dist(F~, e), that F~ is induced, and (T1)-(T3). Empty when fine.
std::vector<std::string> indicator_structure_problems(const IndicatorSpec& ind);

/// Copies of h in `g` not contained in a single leaf part, as edge-id sets.
std::vector<std::vector<EdgeId>> copy_locality_violations(const Graph& g, const std::vector<Part>& parts,
                                                          const Graph& h);

// --- sender providers ----------------------------------------------------------

class SenderProvider {
 public:
  virtual ~SenderProvider() = default;
  /// A sender for (q, h) with signal distance at least d. Throws Error on failure.
  virtual SenderSpec sender(Polarity polarity, std::size_t q, const Graph& h, std::size_t d) = 0;
};

/// Contract-only stubs: a path of length d between the signal edges with a copy
/// of h hanging off its middle vertex. Optionally returns a fixed user stub.
class MockSenderProvider : public SenderProvider {
 public:
  MockSenderProvider() = default;
  explicit MockSenderProvider(SenderSpec stub) : stub_(std::move(stub)) {}
  SenderSpec sender(Polarity polarity, std::size_t q, const Graph& h, std::size_t d) override;

 private:
  std::optional<SenderSpec> stub_;
};

/// Concrete senders from a seed list. Requests are met by chaining seeds end to
/// end: distances add up, and the polarity is negative iff an odd number of
/// negative seeds is used.
class CorpusSenderProvider : public SenderProvider {
 public:
  explicit CorpusSenderProvider(std::vector<SenderSpec> seeds);
  SenderSpec sender(Polarity polarity, std::size_t q, const Graph& h, std::size_t d) override;
  [[nodiscard]] const std::vector<SenderSpec>& seeds() const { return seeds_; }

 private:
  std::vector<SenderSpec> seeds_;
  std::map<std::tuple<int, std::size_t, std::string, std::size_t>, SenderSpec> cache_;
};

/// Small verified K3 senders for two colours (one of each polarity).
std::vector<SenderSpec> builtin_k3_senders();

/// Joins s.e to `a` and s.f to `b` in series; the result has signal edges a.e, b.f.
SenderSpec chain_senders(const SenderSpec& a, const SenderSpec& b);

// --- verification --------------------------------------------------------------

enum class GadgetVerdict { Verified, Refuted, StructuralOnly };
const char* to_string(GadgetVerdict v);

struct GadgetCheck {
  GadgetVerdict verdict = GadgetVerdict::StructuralOnly;
  std::string property;                 // failing property on refutation, e.g. "S2", "I3"
  std::optional<EdgeColouring> witness;  // violating colouring when one exists
  std::vector<std::string> problems;    // structural findings
  SearchStats stats;
};

GadgetCheck verify_sender(const SenderSpec& s, const SolveOptions& options = {});

/// (I1), (I2) and (I3) at representative colours 1 and 2; matching indicators
/// are checked for (I3') instead of (I3). Mock-built indicators only get the
/// structural checks.
GadgetCheck verify_indicator(const IndicatorSpec& ind, const SolveOptions& options = {});

/// Tries each candidate host with every vertex-disjoint edge pair at distance
/// >= d, in order, and returns the first pair passing verify_sender.
std::optional<SenderSpec> search_sender(std::size_t q, const Graph& h, std::size_t d, Polarity polarity,
                                        const std::function<std::optional<Graph>()>& candidates,
                                        const SolveOptions& options = {});

/// Candidate stream of every labelled graph on n vertices, 2 <= n <= max_vertices,
/// without isolated vertices, built by adding one vertex at a time.
std::function<std::optional<Graph>()> all_graphs_stream(std::size_t max_vertices);

// --- constructions --------------------------------------------------------------

struct JoinResult {
  Graph graph;
  std::vector<Vertex> sender_map;  // sender vertex -> output vertex
};

/// Adds a copy of s with s.e identified onto e1 and s.f onto e2 (lower endpoint
/// to lower endpoint). Throws if e1 and e2 share a vertex or edges would merge.
JoinResult join_by_sender(const Graph& g, EdgeId e1, EdgeId e2, const SenderSpec& s);

struct DennisResult {
  Graph graph;
  std::vector<Vertex> h_image;  // H' vertex -> graph vertex
  EdgeId e = 0;
  std::vector<Part> parts;
  bool concrete = false;
};

/// A copy of hprime plus a disjoint edge e, with a positive sender
/// S+(q, hprime, v(h)+1) from e to every edge of the copy.
DennisResult build_dennis_distinguisher(const Graph& h, const Graph& hprime, std::size_t q,
                                        SenderProvider& provider);

/// Indicator for a two-edge matching F = {f1, f2}.
IndicatorSpec build_matching_indicator(const Graph& h, std::size_t q, std::size_t d, SenderProvider& provider);

/// Indicator for F by recursion on e(F). F may not contain h and may not have
/// isolated vertices. d is raised to v(h)+1 when smaller.
IndicatorSpec build_indicator(const Graph& h, const Graph& f, std::size_t q, std::size_t d,
                              SenderProvider& provider);

struct CriticalityColouring {
  EdgeId f = 0;                  // edge id of F~ in the construction
  Graph host;                    // construction minus f
  EdgeColouring colouring;       // on host; partial when gadgets are mock
  bool complete = false;
  bool validated = false;        // passed the constraint checker
};

struct Theorem12Result {
  Graph graph;
  std::vector<Vertex> f_image;   // F vertex -> graph vertex
  std::vector<EdgeId> f_edges;   // F edge id -> graph edge id
  std::vector<EdgeId> r, e, f;   // the matching edges r_k, e_k, f_k
  std::vector<Part> parts;
  std::size_t d = 0;
  bool concrete = false;
  std::vector<CriticalityColouring> criticality;
};

/// The containment construction for F with the given H-free colouring of F.
/// When `criticality` is set, the per-edge colourings of G - f are built too.
Theorem12Result build_theorem12_graph(const Graph& h, const Graph& f, std::size_t q,
                                      const EdgeColouring& free_colouring, SenderProvider& provider,
                                      bool criticality = true, const SolveOptions& options = {});

struct GrowthStep {
  Graph construction;
  Graph minimal;                 // isolated vertices removed
  std::size_t copies_of_f = 0;
  std::vector<Vertex> f_image;   // vertex of the copies of F0 -> vertex of minimal
};

struct GrowthResult {
  std::vector<GrowthStep> steps;
  std::string stopped;  // non-empty when a budget cut the sequence short
};

/// Replays the growth loop: F_0 = f0, then F_i = v(G_{i-1}) disjoint copies of
/// f0; each construction is shrunk to a minimal subgraph. Every colour class of
/// the free colouring must be non-empty, otherwise the construction need not
/// arrow; Error is raised in that case.
GrowthResult grow_minimal_sequence(const Graph& h, std::size_t q, const Graph& f0, std::size_t iterations,
                                   SenderProvider& provider, const SolveOptions& options = {});

/// H-free colouring of f that uses every colour when possible (first edges
/// pinned to distinct colours), otherwise any H-free colouring.
std::optional<EdgeColouring> spread_free_colouring(const Graph& f, const Graph& h, std::size_t q,
                                                   const SolveOptions& options = {});

}  // namespace arrowlab

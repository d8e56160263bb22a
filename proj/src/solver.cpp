// Exact search for constrained q-colourings of a host's edges.
//
// Variables are host edges with domains held as colour bitmasks. Constraints:
//   * forbidden copies: for colour c and each copy K of its target, not every
//     edge of K may take c. Once |K|-1 edges of K carry c, c is removed from
//     the last edge's domain (unit propagation over copies).
//   * pins: root-level domain restriction.
//   * links: same/different propagate as soon as one side is assigned.
//
// Branching always picks the lowest unassigned edge id and tries colours in
// increasing order, so the first solution found is the lexicographically least
// one that survives symmetry breaking.
//
// Backjumping: every domain removal records the assigned edges that caused it.
// On a conflict the implication graph is walked back to decision levels, and a
// refuted subtree whose conflict set misses the current level is skipped along
// with the remaining values at that level. Only subtrees without solutions are
// skipped, so the witness is unchanged. Values cut by symmetry breaking depend
// on every earlier assignment and add all earlier levels.
//
// Symmetry breaking: colours c < c' are interchangeable when they forbid equal
// targets and neither appears in a pin (links are colour-agnostic). Within a
// class c_1 < c_2 < ..., branching may give c_{k+1} to the current edge only if
// c_k already occurs in the partial assignment. Soundness: for any solution s,
// permuting each class so that first occurrences (in edge order) are increasing
// yields a solution s' that this rule never prunes, since when the search
// branches on edge e every smaller edge is already assigned. The lexicographically
// least solution already has this shape (otherwise swapping two colours of a
// class would make it smaller), so witnesses stay canonical.
//
// Parallelism: the tree is cut at a fixed decision depth that depends only on q,
// giving an ordered list of subproblems. Subproblems are solved independently
// and combined in order; node counts, budget decisions and the witness therefore
// do not depend on how many workers ran them.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <thread>

#include "arrowlab/colouring.hpp"

namespace arrowlab {
namespace {

using Mask = std::uint32_t;

constexpr Mask bit(Colour c) { return Mask{1} << (c - 1); }

struct CopyTable {
  std::vector<std::uint32_t> offsets;  // copy k occupies edges[offsets[k]..offsets[k+1])
  std::vector<EdgeId> edges;
  std::vector<std::uint32_t> edge_offsets;  // host edge e -> slice of edge_copies
  std::vector<std::uint32_t> edge_copies;

  [[nodiscard]] std::size_t copy_count() const { return offsets.size() - 1; }
};

CopyTable flatten(const CopyList& list) {
  CopyTable t;
  t.offsets.push_back(0);
  for (const auto& copy : list.copies) {
    t.edges.insert(t.edges.end(), copy.edge_set.begin(), copy.edge_set.end());
    t.offsets.push_back(static_cast<std::uint32_t>(t.edges.size()));
  }
  t.edge_offsets.push_back(0);
  for (const auto& idx : list.per_edge_index) {
    for (std::size_t k : idx) t.edge_copies.push_back(static_cast<std::uint32_t>(k));
    t.edge_offsets.push_back(static_cast<std::uint32_t>(t.edge_copies.size()));
  }
  return t;
}

struct Problem {
  std::size_t m = 0;
  std::size_t q = 0;
  std::vector<Mask> root_domain;
  std::vector<int> table_of_colour;  // index into tables, -1 when unrestricted
  std::vector<CopyTable> tables;
  std::vector<std::vector<std::pair<EdgeId, bool>>> links_of;
  std::vector<int> symmetry_prev;  // previous colour (1-based) in its class, or 0
  bool trivially_infeasible = false;
};

Problem build_problem(const Graph& host, const ColourConstraintSet& cs) {
  Problem p;
  p.m = host.m();
  p.q = cs.q();
  const Mask full = (p.q == 32) ? ~Mask{0} : ((Mask{1} << p.q) - 1);
  p.root_domain.assign(p.m, full);
  for (const auto& [e, c] : cs.pins) p.root_domain[e] &= bit(c);

  std::vector<const CopyList*> seen;
  p.table_of_colour.assign(p.q, -1);
  for (std::size_t i = 0; i < p.q; ++i) {
    const CopyList* list = cs.forbidden[i].get();
    if (!list) continue;
    auto it = std::find(seen.begin(), seen.end(), list);
    if (it == seen.end()) {
      seen.push_back(list);
      p.tables.push_back(flatten(*list));
      it = seen.end() - 1;
    }
    p.table_of_colour[i] = static_cast<int>(it - seen.begin());
  }

  p.links_of.resize(p.m);
  for (const Link& l : cs.links) {
    if (l.a == l.b) {
      if (!l.same) p.trivially_infeasible = true;
      continue;
    }
    p.links_of[l.a].emplace_back(l.b, l.same);
    p.links_of[l.b].emplace_back(l.a, l.same);
  }

  std::vector<char> pinned(p.q + 1, 0);
  for (const auto& pin : cs.pins) pinned[pin.second] = 1;
  auto same_target = [&](std::size_t a, std::size_t b) {
    const auto& la = cs.forbidden[a];
    const auto& lb = cs.forbidden[b];
    if (!la || !lb) return !la && !lb;
    return la == lb || la->target == lb->target;
  };
  p.symmetry_prev.assign(p.q + 1, 0);
  for (std::size_t c = 2; c <= p.q; ++c) {
    if (pinned[c]) continue;
    for (std::size_t prev = c - 1; prev >= 1; --prev) {
      if (!pinned[prev] && same_target(prev - 1, c - 1)) {
        p.symmetry_prev[c] = static_cast<int>(prev);
        break;
      }
    }
  }
  return p;
}

using Bits = std::vector<std::uint64_t>;

inline void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
inline bool test_bit(const Bits& b, std::size_t i) { return b[i >> 6] >> (i & 63) & 1; }

class State {
 public:
  explicit State(const Problem& p) : p_(&p) {
    domain_.assign(p.m, 0);
    value_.assign(p.m, 0);
    count_.resize(p.q);
    for (std::size_t c = 0; c < p.q; ++c)
      if (p.table_of_colour[c] >= 0) count_[c].assign(p.tables[p.table_of_colour[c]].copy_count(), 0);
    used_.assign(p.q + 1, 0);
    reason_start_.assign(p.m * p.q, 0);
    reason_len_.assign(p.m * p.q, 0);
    level_.assign(p.m, 0);
    decision_.assign(p.m, 0);
    stamp_.assign(p.m, 0);
  }

  bool init() {
    if (p_->trivially_infeasible) return false;
    domain_ = p_->root_domain;
    for (std::size_t c = 1; c <= p_->q; ++c) {
      const int t = p_->table_of_colour[c - 1];
      if (t < 0) continue;
      const CopyTable& table = p_->tables[t];
      for (std::size_t k = 0; k < table.copy_count(); ++k)
        if (table.offsets[k + 1] - table.offsets[k] == 1)
          domain_[table.edges[table.offsets[k]]] &= ~bit(static_cast<Colour>(c));
    }
    for (EdgeId e = 0; e < p_->m; ++e) {
      if (domain_[e] == 0) return false;
      if (std::has_single_bit(domain_[e])) pending_.push_back(e);
    }
    trail_.clear();
    return propagate();
  }

  /// Decision e = c at the given level (>= 1).
  bool decide(EdgeId e, Colour c, std::uint32_t level) {
    if (!(domain_[e] & bit(c))) return false;
    level_now_ = level;
    decision_[e] = 1;
    // After propagation every singleton domain is assigned, so an unassigned
    // edge has at least two colours left and restrict() queues it.
    if (!restrict(e, bit(c), &e, 1)) return fail();
    return propagate();
  }

  [[nodiscard]] std::size_t mark() const { return trail_.size(); }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const Entry entry = trail_.back();
      trail_.pop_back();
      pool_.resize(entry.pool);
      if (entry.assign) {
        const Colour c = value_[entry.edge];
        value_[entry.edge] = 0;
        decision_[entry.edge] = 0;
        --used_[c];
        const int t = p_->table_of_colour[c - 1];
        if (t >= 0) {
          const CopyTable& table = p_->tables[t];
          auto& cnt = count_[c - 1];
          for (auto i = table.edge_offsets[entry.edge]; i < table.edge_offsets[entry.edge + 1]; ++i)
            --cnt[table.edge_copies[i]];
        }
      } else {
        domain_[entry.edge] = entry.old_domain;
      }
    }
  }

  /// Decision levels behind the last failure.
  void explain_failure(Bits& out) {
    stack_.clear();
    if (conflict_copy_) {
      stack_.insert(stack_.end(), conflict_copy_, conflict_copy_ + conflict_copy_len_);
    } else {
      push_removed(conflict_edge_, 0);
    }
    resolve(out);
  }

  /// Decision levels behind the removal of c from e's domain.
  void explain_removal(EdgeId e, Colour c, Bits& out) {
    stack_.clear();
    push_reason(e, c);
    resolve(out);
  }

  [[nodiscard]] Mask domain(EdgeId e) const { return domain_[e]; }
  [[nodiscard]] Colour value(EdgeId e) const { return value_[e]; }
  [[nodiscard]] std::uint64_t used(Colour c) const { return used_[c]; }
  [[nodiscard]] std::uint64_t propagations() const { return propagations_; }
  [[nodiscard]] const std::vector<Colour>& values() const { return value_; }

 private:
  struct Entry {
    EdgeId edge;
    bool assign;
    Mask old_domain;
    std::uint32_t pool;
  };

  bool fail() {
    pending_.clear();
    return false;
  }

  void push_reason(EdgeId e, Colour c) {
    const std::size_t slot = e * p_->q + (c - 1);
    const std::uint32_t start = reason_start_[slot];
    stack_.insert(stack_.end(), pool_.begin() + start, pool_.begin() + start + reason_len_[slot]);
  }

  /// Reasons for every colour missing from e's domain except `keep`.
  void push_removed(EdgeId e, Colour keep) {
    for (Colour c = 1; c <= p_->q; ++c)
      if (c != keep && !(domain_[e] & bit(c))) push_reason(e, c);
  }

  void resolve(Bits& out) {
    ++stamp_now_;
    while (!stack_.empty()) {
      const EdgeId y = stack_.back();
      stack_.pop_back();
      if (stamp_[y] == stamp_now_) continue;
      stamp_[y] = stamp_now_;
      if (value_[y] == 0) {
        push_removed(y, 0);
      } else if (level_[y] == 0) {
        continue;
      } else if (decision_[y]) {
        set_bit(out, level_[y]);
      } else {
        push_removed(y, value_[y]);
      }
    }
  }

  bool restrict(EdgeId e, Mask keep, const EdgeId* reason, std::size_t reason_len) {
    const Mask old = domain_[e];
    const Mask nd = old & keep;
    if (nd == old) return true;
    const auto start = static_cast<std::uint32_t>(pool_.size());
    trail_.push_back({e, false, old, start});
    pool_.insert(pool_.end(), reason, reason + reason_len);
    for (Mask removed = old & ~nd; removed; removed &= removed - 1) {
      const std::size_t slot = e * p_->q + std::countr_zero(removed);
      reason_start_[slot] = start;
      reason_len_[slot] = static_cast<std::uint32_t>(reason_len);
    }
    domain_[e] = nd;
    ++propagations_;
    if (nd == 0) {
      conflict_copy_ = nullptr;
      conflict_edge_ = e;
      return false;
    }
    if (value_[e] == 0 && std::has_single_bit(nd)) pending_.push_back(e);
    return true;
  }

  bool assign(EdgeId e) {
    const auto c = static_cast<Colour>(std::countr_zero(domain_[e]) + 1);
    value_[e] = c;
    level_[e] = level_now_;
    ++used_[c];
    trail_.push_back({e, true, 0, static_cast<std::uint32_t>(pool_.size())});

    const int t = p_->table_of_colour[c - 1];
    if (t >= 0) {
      const CopyTable& table = p_->tables[t];
      auto& cnt = count_[c - 1];
      // All counters move first so that undo() stays exact after a conflict.
      for (auto i = table.edge_offsets[e]; i < table.edge_offsets[e + 1]; ++i) ++cnt[table.edge_copies[i]];
      for (auto i = table.edge_offsets[e]; i < table.edge_offsets[e + 1]; ++i) {
        const std::uint32_t k = table.edge_copies[i];
        const std::uint32_t size = table.offsets[k + 1] - table.offsets[k];
        const std::uint32_t now = cnt[k];
        if (now == size) {
          conflict_copy_ = table.edges.data() + table.offsets[k];
          conflict_copy_len_ = size;
          return false;
        }
        if (now + 1 == size) {
          for (auto j = table.offsets[k]; j < table.offsets[k + 1]; ++j) {
            const EdgeId x = table.edges[j];
            if (value_[x] == c) continue;
            if (value_[x] == 0) {
              scratch_.clear();
              for (auto l = table.offsets[k]; l < table.offsets[k + 1]; ++l)
                if (table.edges[l] != x) scratch_.push_back(table.edges[l]);
              if (!restrict(x, ~bit(c), scratch_.data(), scratch_.size())) return false;
            }
            break;
          }
        }
      }
    }
    for (const auto& [other, same] : p_->links_of[e]) {
      if (!restrict(other, same ? bit(c) : ~bit(c), &e, 1)) return false;
    }
    return true;
  }

  bool propagate() {
    while (!pending_.empty()) {
      const EdgeId e = pending_.back();
      pending_.pop_back();
      if (value_[e] != 0) continue;
      if (!assign(e)) return fail();
    }
    return true;
  }

  const Problem* p_;
  std::vector<Mask> domain_;
  std::vector<Colour> value_;
  std::vector<std::vector<std::uint32_t>> count_;
  std::vector<std::uint64_t> used_;
  std::vector<Entry> trail_;
  std::vector<EdgeId> pending_;
  std::uint64_t propagations_ = 0;

  // Explanations: pool_ slices indexed by (edge, colour) slot.
  std::vector<EdgeId> pool_;
  std::vector<std::uint32_t> reason_start_;
  std::vector<std::uint32_t> reason_len_;
  std::vector<std::uint32_t> level_;
  std::vector<char> decision_;
  std::uint32_t level_now_ = 0;
  const EdgeId* conflict_copy_ = nullptr;
  std::uint32_t conflict_copy_len_ = 0;
  EdgeId conflict_edge_ = 0;
  std::vector<EdgeId> stack_;
  std::vector<EdgeId> scratch_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t stamp_now_ = 0;
};

using Decision = std::pair<EdgeId, Colour>;

enum class Outcome { Refuted, Found, Budget, Cancelled };

class Runner {
 public:
  Runner(const Problem& p, const State& root)
      : p_(p), st_(root), words_(p.m / 64 + 2), frames_(p.m + 2, Bits(words_, 0)) {}

  std::uint64_t cap = kNoBudget;
  std::uint64_t nodes = 0;
  // Collection mode: stop at this depth and record the decision path.
  std::size_t split_depth = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<Decision>>* frontier = nullptr;
  const std::atomic<std::size_t>* first_found = nullptr;
  std::size_t index = 0;

  Outcome run(EdgeId from) { return dfs(from, base_depth_); }

  /// Replays a recorded decision path; returns the edge to continue from.
  EdgeId replay(const std::vector<Decision>& path) {
    EdgeId from = 0;
    for (const auto& [e, c] : path) {
      st_.decide(e, c, static_cast<std::uint32_t>(++base_depth_));
      from = e + 1;
    }
    return from;
  }

  [[nodiscard]] const State& state() const { return st_; }

 private:
  Bits& frame(std::size_t depth) {
    Bits& b = frames_[depth];
    b.assign(words_, 0);
    return b;
  }

  void all_levels_upto(Bits& b, std::size_t depth) {
    for (std::size_t l = 1; l <= depth; ++l) set_bit(b, l);
  }

  /// Folds a refuted child's conflict set into `acc`. Returns false when the
  /// child's conflict does not involve `level`, i.e. the search may jump back.
  bool absorb(Bits& acc, const Bits& child, std::size_t level) {
    if (!test_bit(child, level)) return false;
    for (std::size_t w = 0; w < words_; ++w) acc[w] |= child[w];
    acc[level >> 6] &= ~(std::uint64_t{1} << (level & 63));
    return true;
  }

  Outcome dfs(EdgeId from, std::size_t depth) {
    EdgeId e = from;
    while (e < p_.m && st_.value(e) != 0) ++e;
    if (frontier && (depth == split_depth || e == p_.m)) {
      frontier->push_back(path_);
      conflict_.assign(words_, ~std::uint64_t{0});
      return Outcome::Refuted;
    }
    if (e == p_.m) return Outcome::Found;

    const std::size_t level = depth + 1;
    Bits& acc = frame(depth);
    bool chronological = false;
    const Mask dom = st_.domain(e);
    for (Colour c = 1; c <= p_.q; ++c) {
      if (!(dom & bit(c))) {
        st_.explain_removal(e, c, acc);
        continue;
      }
      const int prev = p_.symmetry_prev[c];
      if (prev > 0 && st_.used(static_cast<Colour>(prev)) == 0) {
        chronological = true;
        continue;
      }
      if (++nodes > cap) return Outcome::Budget;
      if (first_found && (nodes & 1023) == 0 && first_found->load(std::memory_order_relaxed) < index)
        return Outcome::Cancelled;
      const std::size_t mark = st_.mark();
      if (st_.decide(e, c, static_cast<std::uint32_t>(level))) {
        if (frontier) path_.emplace_back(e, c);
        const Outcome r = dfs(e + 1, depth + 1);
        if (frontier) path_.pop_back();
        if (r != Outcome::Refuted) return r;
      } else {
        conflict_.assign(words_, 0);
        st_.explain_failure(conflict_);
      }
      st_.undo(mark);
      if (!absorb(acc, conflict_, level)) return Outcome::Refuted;  // conflict_ already holds the reason
    }
    if (chronological) all_levels_upto(acc, depth);
    conflict_ = acc;
    return Outcome::Refuted;
  }

  const Problem& p_;
  State st_;
  std::size_t words_;
  std::size_t base_depth_ = 0;
  std::vector<Bits> frames_;
  Bits conflict_;
  std::vector<Decision> path_;
};

std::size_t split_depth_for(std::size_t q) {
  if (q <= 1) return 0;
  std::size_t depth = 0;
  for (std::size_t reach = q; reach <= 256; reach *= q) ++depth;
  return depth;
}

struct SubResult {
  Outcome outcome = Outcome::Cancelled;
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  std::vector<Colour> witness;
};

SubResult run_subproblem(const Problem& p, const State& root, const std::vector<Decision>& path,
                         std::uint64_t cap, const std::atomic<std::size_t>* first_found, std::size_t index) {
  Runner runner(p, root);
  const EdgeId from = runner.replay(path);
  const std::uint64_t replayed = runner.state().propagations();
  runner.cap = cap;
  runner.first_found = first_found;
  runner.index = index;
  SubResult r;
  r.outcome = runner.run(from);
  r.nodes = runner.nodes;
  r.propagations = runner.state().propagations() - replayed;
  if (r.outcome == Outcome::Found) r.witness = runner.state().values();
  return r;
}

}  // namespace

ArrowCertificate solve(const Graph& host, const ColourConstraintSet& constraints, const SolveOptions& options) {
  constraints.validate(host.m());
  const auto started = std::chrono::steady_clock::now();
  const Problem problem = build_problem(host, constraints);
  const unsigned workers = options.workers == 0 ? default_workers() : options.workers;

  ArrowCertificate cert;
  auto finish = [&]() {
    cert.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  };

  State root(problem);
  if (!root.init()) {
    cert.verdict = Verdict::Arrow;
    cert.stats.propagations = root.propagations();
    finish();
    return cert;
  }

  // Collect the ordered frontier.
  std::vector<std::vector<Decision>> frontier;
  {
    Runner collector(problem, root);
    collector.cap = options.node_budget;
    collector.split_depth = split_depth_for(problem.q);
    collector.frontier = &frontier;
    const Outcome r = collector.run(0);
    cert.stats.nodes = collector.nodes;
    if (r == Outcome::Budget) {
      cert.stats.nodes = options.node_budget;
      finish();
      throw BudgetExceeded(cert.stats);
    }
  }
  cert.stats.propagations = root.propagations();
  cert.stats.subproblems = frontier.size();
  const std::uint64_t root_nodes = cert.stats.nodes;
  const std::uint64_t cap = options.node_budget == kNoBudget ? kNoBudget : options.node_budget - root_nodes;

  std::vector<SubResult> results(frontier.size());
  std::atomic<std::size_t> first_found{std::numeric_limits<std::size_t>::max()};

  if (workers <= 1 || frontier.size() <= 1) {
    std::uint64_t spent = root_nodes;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      results[i] = run_subproblem(problem, root, frontier[i], cap, nullptr, i);
      spent += results[i].nodes;
      if (results[i].outcome != Outcome::Refuted) break;
      if (options.node_budget != kNoBudget && spent > options.node_budget) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= frontier.size()) return;
        if (first_found.load() < i) continue;
        results[i] = run_subproblem(problem, root, frontier[i], cap, &first_found, i);
        if (results[i].outcome == Outcome::Found) {
          std::size_t cur = first_found.load();
          while (i < cur && !first_found.compare_exchange_weak(cur, i)) {
          }
        }
      }
    };
    std::vector<std::jthread> pool;
    const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(frontier.size()));
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  }

  // Deterministic in-order reduction.
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const SubResult& r = results[i];
    if (r.outcome == Outcome::Budget || r.outcome == Outcome::Cancelled) {
      cert.stats.nodes = options.node_budget;
      finish();
      throw BudgetExceeded(cert.stats);
    }
    cert.stats.nodes += r.nodes;
    cert.stats.propagations += r.propagations;
    if (options.node_budget != kNoBudget && cert.stats.nodes > options.node_budget) {
      cert.stats.nodes = options.node_budget;
      finish();
      throw BudgetExceeded(cert.stats);
    }
    if (r.outcome == Outcome::Found) {
      cert.verdict = Verdict::NotArrow;
      cert.witness = EdgeColouring(problem.q, r.witness);
      finish();
      if (auto bad = check_colouring(host, constraints, *cert.witness))
        throw std::logic_error("solver produced an invalid witness: " + bad->detail);
      return cert;
    }
  }
  cert.verdict = Verdict::Arrow;
  finish();
  return cert;
}

}  // namespace arrowlab

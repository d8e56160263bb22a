#include "arrowlab/patterns.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "arrowlab/copies.hpp"

namespace arrowlab {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  if (g.n() > 64) throw Error("patterns: graphs are limited to 64 vertices");
  std::vector<Mask> adj(g.n(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  }
  return adj;
}

bool has_clique(const std::vector<Mask>& adj, Mask mask, std::size_t t) {
  if (t == 0) return true;
  if (static_cast<std::size_t>(std::popcount(mask)) < t) return false;
  while (mask) {
    const int v = std::countr_zero(mask);
    mask &= mask - 1;
    if (has_clique(adj, mask & adj[v], t - 1)) return true;
  }
  return false;
}

class FreeSetSearch {
 public:
  FreeSetSearch(const Graph& g, std::size_t k) : adj_(adjacency_masks(g)), k_(k) {}

  Mask run() {
    const Mask all = adj_.size() == 64 ? ~Mask{0} : (Mask{1} << adj_.size()) - 1;
    branch(0, all);
    return best_;
  }

 private:
  // Vertices of a clique contribute at most k-1 to any K_k-free set.
  std::size_t cover_bound(Mask p) const {
    std::size_t bound = 0;
    while (p) {
      Mask clique = 0;
      Mask cand = p;
      while (cand) {
        const int v = std::countr_zero(cand);
        clique |= Mask{1} << v;
        cand &= adj_[v] & ~(Mask{1} << v);
      }
      p &= ~clique;
      bound += std::min<std::size_t>(std::popcount(clique), k_ - 1);
    }
    return bound;
  }

  void branch(Mask chosen, Mask p) {
    const auto size = static_cast<std::size_t>(std::popcount(chosen));
    if (size > best_size_) {
      best_size_ = size;
      best_ = chosen;
    }
    if (!p || size + cover_bound(p) <= best_size_) return;
    const int v = std::countr_zero(p);
    const Mask rest = p & ~(Mask{1} << v);
    const Mask with_v = chosen | (Mask{1} << v);
    Mask keep = 0;
    for (Mask it = rest; it;) {
      const int u = std::countr_zero(it);
      it &= it - 1;
      // A new K_k through u must also use v.
      if (!(adj_[u] >> v & 1) || !has_clique(adj_, adj_[u] & adj_[v] & with_v, k_ - 2)) keep |= Mask{1} << u;
    }
    branch(with_v, keep);
    branch(chosen, rest);
  }

  std::vector<Mask> adj_;
  std::size_t k_;
  Mask best_ = 0;
  std::size_t best_size_ = 0;
};

std::vector<Vertex> to_vertices(Mask m) {
  std::vector<Vertex> out;
  while (m) {
    out.push_back(static_cast<Vertex>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

// Unbiased draw from [0, bound); std distributions differ between library vendors.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

std::optional<ColourPattern> try_trial(std::size_t r, std::size_t k, std::size_t n, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  const Graph kn = complete_graph(n);
  std::vector<Edge> order = kn.edges();
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[bounded(rng, i)]);
  std::vector<std::vector<Edge>> classes(r);
  for (std::size_t i = 0; i < order.size(); ++i) classes[i % r].push_back(order[i]);
  ColourPattern p{n, {}, r, k};
  for (const auto& cls : classes) {
    Graph member(n, cls);
    if (!is_critical(member, n, r, k).critical) return std::nullopt;
    p.members.push_back(std::move(member));
  }
  return p;
}

}  // namespace

std::vector<Vertex> max_kclique_free_subset(const Graph& g, std::size_t k) {
  if (k == 0) throw Error("max_kclique_free_subset: k must be at least 1");
  if (k == 1) return {};
  return to_vertices(FreeSetSearch(g, k).run());
}

CriticalityReport is_critical(const Graph& g, std::size_t n, std::size_t r, std::size_t k) {
  if (g.n() != n) throw Error("is_critical: graph has " + std::to_string(g.n()) + " vertices, not " + std::to_string(n));
  if (r == 0 || k == 0) throw Error("is_critical: r and k must be positive");
  CriticalityReport rep;
  rep.threshold = n / r + (n % r != 0);
  if (auto copy = find_copy(g, complete_graph(k + 1))) rep.clique = copy->vertex_set();
  auto free = max_kclique_free_subset(g, k);
  rep.max_free = free.size();
  if (rep.max_free >= rep.threshold) {
    free.resize(rep.threshold);
    rep.free_set = std::move(free);
  }
  rep.critical = !rep.clique && !rep.free_set;
  return rep;
}

PatternReport check_pattern(const ColourPattern& pattern) {
  PatternReport rep;
  std::vector<Edge> seen;
  for (std::size_t i = 0; i < pattern.members.size(); ++i) {
    const Graph& g = pattern.members[i];
    if (g.n() != pattern.n) {
      rep.problems.push_back("member " + std::to_string(i) + " has " + std::to_string(g.n()) + " vertices");
      continue;
    }
    seen.insert(seen.end(), g.edges().begin(), g.edges().end());
  }
  std::sort(seen.begin(), seen.end());
  const auto dup = std::adjacent_find(seen.begin(), seen.end());
  rep.edge_disjoint = dup == seen.end();
  if (!rep.edge_disjoint)
    rep.problems.push_back("edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v) +
                           " lies in two members");
  bool all = true;
  for (const Graph& g : pattern.members) {
    if (g.n() != pattern.n) {
      all = false;
      continue;
    }
    rep.members.push_back(is_critical(g, pattern.n, pattern.r, pattern.k));
    all = all && rep.members.back().critical;
  }
  rep.certified = rep.edge_disjoint && all && rep.problems.empty();
  return rep;
}

PatternSearch random_critical_pattern(std::size_t r, std::size_t k, std::size_t n, std::size_t trials,
                                      std::uint64_t seed, unsigned workers) {
  if (r == 0 || k == 0) throw Error("random_critical_pattern: r and k must be positive");
  if (n > 64) throw Error("random_critical_pattern: n is limited to 64");
  PatternSearch out;
  if (r < 3) out.warnings.push_back("r < 3: random patterns are not guaranteed to exist");
  if (k < 2) out.warnings.push_back("k < 2: random patterns are not guaranteed to exist");

  std::mt19937_64 master(seed);
  std::vector<std::uint64_t> seeds(trials);
  for (auto& s : seeds) s = master();

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{trials};
  std::optional<ColourPattern> found;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= trials || t >= best.load()) return;
      auto p = try_trial(r, k, n, seeds[t]);
      if (!p) continue;
      std::lock_guard lock(mu);
      if (t < best.load()) {
        best = t;
        found = std::move(p);
      }
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (found) {
    out.trial = best.load();
    out.trials_run = *out.trial + 1;
    out.pattern = std::move(found);
  } else {
    out.trials_run = trials;
  }
  return out;
}

EdgeColouring classical_colouring(std::string_view name, std::size_t n) {
  const Graph kn = complete_graph(n);
  std::vector<Colour> colours;
  std::size_t q = 0;
  if (name == "pentagon2") {
    if (n > 5) throw Error("pentagon2 is defined for n <= 5");
    q = 2;
    for (const Edge& e : kn.edges()) {
      const auto diff = (e.v - e.u) % 5;
      colours.push_back(diff == 1 || diff == 4 ? 1 : 2);
    }
  } else if (name == "gf16-3") {
    if (n > 16) throw Error("gf16-3 is defined for n <= 16");
    q = 3;
    // GF(16) = GF(2)[x] / (x^4 + x + 1); x generates the multiplicative group.
    std::vector<unsigned> log(16, 0);
    unsigned a = 1;
    for (unsigned i = 0; i < 15; ++i) {
      log[a] = i;
      a <<= 1;
      if (a & 0x10) a ^= 0x13;
    }
    for (const Edge& e : kn.edges()) colours.push_back(static_cast<Colour>(log[e.u ^ e.v] % 3 + 1));
  } else {
    throw Error("unknown classical colouring '" + std::string(name) + "'");
  }
  EdgeColouring c(q, std::move(colours));
  const Graph k3 = complete_graph(3);
  for (Colour col = 1; col <= q; ++col)
    if (contains_copy(colour_class_graph(kn, c, col), k3))
      throw std::logic_error("classical colouring has a monochromatic triangle");
  return c;
}

}  // namespace arrowlab

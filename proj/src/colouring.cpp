#include "arrowlab/colouring.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace arrowlab {

EdgeColouring::EdgeColouring(std::size_t q, std::size_t m) : q_(q), colours_(m, 0) {
  if (q == 0 || q > kMaxColours) throw Error("colour count must be in 1.." + std::to_string(kMaxColours));
}

EdgeColouring::EdgeColouring(std::size_t q, std::vector<Colour> colours) : q_(q), colours_(std::move(colours)) {
  if (q == 0 || q > kMaxColours) throw Error("colour count must be in 1.." + std::to_string(kMaxColours));
  for (Colour c : colours_)
    if (c > q) throw Error("colour " + std::to_string(c) + " outside 1.." + std::to_string(q));
}

bool EdgeColouring::is_total() const {
  return std::none_of(colours_.begin(), colours_.end(), [](Colour c) { return c == 0; });
}

void EdgeColouring::set(EdgeId e, Colour c) {
  if (c == 0 || c > q_) throw Error("colour " + std::to_string(c) + " outside 1.." + std::to_string(q_));
  colours_.at(e) = c;
}

std::vector<EdgeId> EdgeColouring::colour_class(Colour c) const {
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < colours_.size(); ++e)
    if (colours_[e] == c) ids.push_back(e);
  return ids;
}

Graph colour_class_graph(const Graph& host, const EdgeColouring& colouring, Colour c) {
  if (colouring.size() != host.m()) throw Error("colouring size does not match host");
  return host.edge_subgraph(colouring.colour_class(c));
}

ColourConstraintSet ColourConstraintSet::uniform(const Graph& host, const Graph& target, std::size_t q) {
  if (q == 0 || q > kMaxColours) throw Error("colour count must be in 1.." + std::to_string(kMaxColours));
  auto copies = std::make_shared<const CopyList>(enumerate_copies(host, target));
  ColourConstraintSet cs;
  cs.forbidden.assign(q, copies);
  return cs;
}

ColourConstraintSet ColourConstraintSet::per_colour(const Graph& host, std::span<const Graph> targets) {
  if (targets.empty() || targets.size() > kMaxColours)
    throw Error("colour count must be in 1.." + std::to_string(kMaxColours));
  ColourConstraintSet cs;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::shared_ptr<const CopyList> shared;
    for (std::size_t j = 0; j < i; ++j)
      if (targets[j] == targets[i]) shared = cs.forbidden[j];
    if (!shared) shared = std::make_shared<const CopyList>(enumerate_copies(host, targets[i]));
    cs.forbidden.push_back(shared);
  }
  return cs;
}

void ColourConstraintSet::pin(EdgeId e, Colour c) {
  for (const auto& [edge, colour] : pins)
    if (edge == e) {
      if (colour == c) return;
      throw Error("edge " + std::to_string(e) + " pinned twice");
    }
  pins.emplace_back(e, c);
}

void ColourConstraintSet::validate(std::size_t m) const {
  if (q() == 0 || q() > kMaxColours) throw Error("colour count must be in 1.." + std::to_string(kMaxColours));
  for (const auto& list : forbidden)
    if (list && list->host.m() != m) throw Error("forbidden copy list built for a different host");
  std::vector<char> pinned(m, 0);
  for (const auto& [e, c] : pins) {
    if (e >= m) throw Error("pin on unknown edge " + std::to_string(e));
    if (c == 0 || c > q()) throw Error("pin colour out of range");
    if (pinned[e]++) throw Error("edge " + std::to_string(e) + " pinned twice");
  }
  for (const Link& l : links)
    if (l.a >= m || l.b >= m) throw Error("link on unknown edge");
}

namespace {

bool naive_extend(const Graph& host, const Graph& target, std::vector<Vertex>& image,
                  std::vector<char>& used, Vertex next) {
  if (next == target.n()) return true;
  for (Vertex h = 0; h < host.n(); ++h) {
    if (used[h]) continue;
    bool ok = true;
    for (Vertex w : target.neighbours(next)) {
      if (w < next && !host.adjacent(image[w], h)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    image[next] = h;
    used[h] = 1;
    if (naive_extend(host, target, image, used, next + 1)) return true;
    used[h] = 0;
  }
  return false;
}

}  // namespace

bool naive_contains(const Graph& host, const Graph& target) {
  if (target.n() > host.n() || target.m() > host.m()) return false;
  // Isolated target vertices only need spare host vertices; drop them first.
  std::vector<Vertex> active;
  for (Vertex v = 0; v < target.n(); ++v)
    if (target.degree(v) > 0) active.push_back(v);
  Graph core = target.induced(active);
  std::vector<Vertex> image(core.n());
  std::vector<char> used(host.n(), 0);
  return naive_extend(host, core, image, used, 0);
}

std::optional<Violation> check_colouring(const Graph& host, const ColourConstraintSet& constraints,
                                         const EdgeColouring& colouring) {
  using K = Violation::Kind;
  if (colouring.size() != host.m()) return Violation{K::Size, "colouring size differs from edge count"};
  if (colouring.q() != constraints.q()) return Violation{K::Size, "colour count mismatch"};
  for (EdgeId e = 0; e < host.m(); ++e) {
    if (colouring[e] == 0) return Violation{K::Unassigned, "edge " + std::to_string(e) + " unassigned"};
    if (colouring[e] > constraints.q()) return Violation{K::ColourRange, "edge " + std::to_string(e)};
  }
  for (const auto& [e, c] : constraints.pins)
    if (colouring[e] != c) return Violation{K::Pin, "edge " + std::to_string(e) + " breaks its pin"};
  for (const Link& l : constraints.links)
    if ((colouring[l.a] == colouring[l.b]) != l.same)
      return Violation{K::Link, "edges " + std::to_string(l.a) + "," + std::to_string(l.b)};
  for (std::size_t i = 0; i < constraints.q(); ++i) {
    const auto& list = constraints.forbidden[i];
    if (!list) continue;
    const auto c = static_cast<Colour>(i + 1);
    Graph cls = colour_class_graph(host, colouring, c);
    if (naive_contains(cls, list->target))
      return Violation{K::MonochromaticCopy, "monochromatic copy in colour " + std::to_string(c)};
  }
  return std::nullopt;
}

unsigned default_workers() {
  if (const char* env = std::getenv("ARROWLAB_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace arrowlab

#include "arrowlab/copies.hpp"

#include <algorithm>
#include <set>

namespace arrowlab {

std::vector<Vertex> EmbeddedCopy::vertex_set() const {
  std::vector<Vertex> vs = vertex_image;
  std::sort(vs.begin(), vs.end());
  return vs;
}

namespace {

constexpr Vertex kUnmapped = std::numeric_limits<Vertex>::max();

// Matching order over the non-isolated target vertices: greedily prefer the
// vertex with the most already-ordered neighbours, then the highest degree.
std::vector<Vertex> matching_order(const Graph& target) {
  std::vector<Vertex> order;
  std::vector<char> placed(target.n(), 0);
  std::vector<std::size_t> links(target.n(), 0);
  std::size_t active = 0;
  for (Vertex v = 0; v < target.n(); ++v)
    if (target.degree(v) > 0) ++active;
  while (order.size() < active) {
    Vertex best = kUnmapped;
    for (Vertex v = 0; v < target.n(); ++v) {
      if (placed[v] || target.degree(v) == 0) continue;
      if (best == kUnmapped || links[v] > links[best] ||
          (links[v] == links[best] && target.degree(v) > target.degree(best)))
        best = v;
    }
    placed[best] = 1;
    order.push_back(best);
    for (Vertex w : target.neighbours(best)) ++links[w];
  }
  return order;
}

class Embedder {
 public:
  Embedder(const Graph& host, const Graph& target,
           const std::function<bool(const std::vector<Vertex>&)>& visit)
      : host_(host), target_(target), visit_(visit), order_(matching_order(target)),
        image_(target.n(), kUnmapped), used_(host.n(), 0) {
    isolated_ = target.n() - order_.size();
    // For each ordered vertex, its neighbours placed earlier.
    std::vector<std::size_t> position(target.n(), kUnmapped);
    for (std::size_t i = 0; i < order_.size(); ++i) position[order_[i]] = i;
    back_links_.resize(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i)
      for (Vertex w : target.neighbours(order_[i]))
        if (position[w] < i) back_links_[i].push_back(w);
  }

  void run() {
    if (order_.size() + isolated_ > host_.n()) return;
    extend(0);
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return finish();
    const Vertex tv = order_[depth];
    const auto& back = back_links_[depth];
    auto try_vertex = [&](Vertex hv) -> bool {
      if (used_[hv] || host_.degree(hv) < target_.degree(tv)) return true;
      for (Vertex w : back)
        if (!host_.adjacent(image_[w], hv)) return true;
      image_[tv] = hv;
      used_[hv] = 1;
      bool keep_going = extend(depth + 1);
      used_[hv] = 0;
      image_[tv] = kUnmapped;
      return keep_going;
    };
    if (!back.empty()) {
      // Candidates restricted to neighbours of an already-mapped neighbour.
      for (Vertex hv : host_.neighbours(image_[back.front()]))
        if (!try_vertex(hv)) return false;
    } else {
      for (Vertex hv = 0; hv < host_.n(); ++hv)
        if (!try_vertex(hv)) return false;
    }
    return true;
  }

  bool finish() {
    if (isolated_ == 0) return visit_(image_);
    std::vector<Vertex> full = image_;
    Vertex next = 0;
    for (Vertex tv = 0; tv < target_.n(); ++tv) {
      if (full[tv] != kUnmapped) continue;
      while (used_[next]) ++next;
      full[tv] = next++;
    }
    return visit_(full);
  }

  const Graph& host_;
  const Graph& target_;
  const std::function<bool(const std::vector<Vertex>&)>& visit_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> back_links_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
  std::size_t isolated_ = 0;
};

std::vector<EdgeId> image_edges(const Graph& host, const Graph& target, const std::vector<Vertex>& image) {
  std::vector<EdgeId> ids;
  ids.reserve(target.m());
  for (const Edge& e : target.edges()) ids.push_back(host.require_edge(image[e.u], image[e.v]));
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

void for_each_embedding(const Graph& host, const Graph& target,
                        const std::function<bool(const std::vector<Vertex>&)>& visit) {
  Embedder(host, target, visit).run();
}

CopyList enumerate_copies(const Graph& host, const Graph& target) {
  if (target.m() == 0) throw Error("enumerate_copies: target must have at least one edge");
  CopyList list{target, host, {}, std::vector<std::vector<std::size_t>>(host.m())};
  std::set<std::vector<EdgeId>> seen;
  for_each_embedding(host, target, [&](const std::vector<Vertex>& image) {
    auto ids = image_edges(host, target, image);
    if (seen.insert(ids).second) list.copies.push_back(EmbeddedCopy{image, std::move(ids)});
    return true;
  });
  std::sort(list.copies.begin(), list.copies.end(),
            [](const EmbeddedCopy& a, const EmbeddedCopy& b) { return a.edge_set < b.edge_set; });
  for (std::size_t k = 0; k < list.copies.size(); ++k)
    for (EdgeId id : list.copies[k].edge_set) list.per_edge_index[id].push_back(k);
  return list;
}

std::optional<EmbeddedCopy> find_copy(const Graph& host, const Graph& target) {
  std::optional<EmbeddedCopy> found;
  if (target.m() == 0) {
    if (target.n() > host.n()) return std::nullopt;
    std::vector<Vertex> image(target.n());
    for (Vertex v = 0; v < target.n(); ++v) image[v] = v;
    return EmbeddedCopy{image, {}};
  }
  for_each_embedding(host, target, [&](const std::vector<Vertex>& image) {
    found = EmbeddedCopy{image, image_edges(host, target, image)};
    return false;
  });
  return found;
}

bool is_induced_image(const Graph& host, const Graph& sub, const std::vector<Vertex>& image) {
  if (image.size() != sub.n()) return false;
  for (Vertex a = 0; a < sub.n(); ++a)
    for (Vertex b = a + 1; b < sub.n(); ++b)
      if (sub.adjacent(a, b) != host.adjacent(image[a], image[b])) return false;
  return true;
}

}  // namespace arrowlab

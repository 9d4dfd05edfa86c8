#include "segdoc/raster.hpp"

#include <algorithm>
#include <numeric>

namespace segdoc {

namespace {

// Union-find over provisional labels, path halving.
struct DisjointSet {
  std::vector<std::int32_t> parent;

  std::int32_t make() {
    parent.push_back(std::int32_t(parent.size()));
    return std::int32_t(parent.size() - 1);
  }

  std::int32_t find(std::int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

Labeling label_image(const BinaryImage& img, Connectivity conn) {
  const Eigen::Index h = img.rows();
  const Eigen::Index w = img.cols();

  Labeling result;
  result.labels = Raster<std::int32_t>::Zero(h, w);
  if (h == 0 || w == 0) return result;

  const bool eight = conn == Connectivity::Eight;
  DisjointSet sets;
  sets.parent.reserve(1024);

  // First pass: provisional labels from the already-scanned neighbors
  // (W, NW, N, NE). Provisional label 0 is reserved for background.
  sets.make();
  auto& labels = result.labels;
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      if (!img(y, x)) continue;
      std::int32_t neigh[4];
      int n = 0;
      if (x > 0 && img(y, x - 1)) neigh[n++] = labels(y, x - 1);
      if (y > 0) {
        if (eight && x > 0 && img(y - 1, x - 1)) neigh[n++] = labels(y - 1, x - 1);
        if (img(y - 1, x)) neigh[n++] = labels(y - 1, x);
        if (eight && x + 1 < w && img(y - 1, x + 1)) neigh[n++] = labels(y - 1, x + 1);
      }
      if (n == 0) {
        labels(y, x) = sets.make();
        continue;
      }
      std::int32_t min_label = neigh[0];
      for (int i = 1; i < n; ++i) min_label = std::min(min_label, neigh[i]);
      labels(y, x) = min_label;
      for (int i = 0; i < n; ++i) sets.unite(min_label, neigh[i]);
    }
  }

  // Resolve roots and accumulate per-component stats in scan order.
  std::vector<std::int32_t> root_slot(sets.parent.size(), -1);
  std::vector<Component> comps;
  std::vector<std::int32_t> min_x, max_x, min_y, max_y;
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      std::int32_t lbl = labels(y, x);
      if (lbl == 0) continue;
      std::int32_t root = sets.find(lbl);
      std::int32_t slot = root_slot[root];
      if (slot < 0) {
        slot = std::int32_t(comps.size());
        root_slot[root] = slot;
        comps.push_back({});
        min_x.push_back(std::int32_t(x));
        max_x.push_back(std::int32_t(x));
        min_y.push_back(std::int32_t(y));
        max_y.push_back(std::int32_t(y));
      }
      labels(y, x) = slot + 1;
      comps[slot].area += 1;
      min_x[slot] = std::min(min_x[slot], std::int32_t(x));
      max_x[slot] = std::max(max_x[slot], std::int32_t(x));
      min_y[slot] = std::min(min_y[slot], std::int32_t(y));
      max_y[slot] = std::max(max_y[slot], std::int32_t(y));
    }
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    comps[i].bbox = BoundingBox::from_extents(min_x[i], min_y[i], max_x[i], max_y[i]);
  }

  // Reading order: (bbox.y, bbox.x), discovery order as the final tie-break.
  std::vector<std::int32_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    if (comps[a].bbox.y != comps[b].bbox.y) return comps[a].bbox.y < comps[b].bbox.y;
    return comps[a].bbox.x < comps[b].bbox.x;
  });

  std::vector<std::int32_t> new_label(comps.size());
  result.components.resize(comps.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    new_label[order[rank]] = std::int32_t(rank + 1);
    result.components[rank] = comps[order[rank]];
    result.components[rank].label = std::int32_t(rank + 1);
  }
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      std::int32_t lbl = labels(y, x);
      if (lbl != 0) labels(y, x) = new_label[lbl - 1];
    }
  }
  return result;
}

std::vector<Component> label_components(const BinaryImage& img, Connectivity conn) {
  return label_image(img, conn).components;
}

}  // namespace segdoc

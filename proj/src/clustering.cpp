#include "corrsc/clustering.hpp"

#include <limits>
#include <string>

#include "corrsc/error.hpp"

namespace corrsc {

std::vector<int> complete_linkage(const Points& points, std::size_t n_clusters) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (n_clusters < 1) throw InvalidArgument("complete_linkage: need at least one cluster");
  if (n_clusters > n) {
    throw InvalidArgument("complete_linkage: " + std::to_string(n_clusters) +
                          " clusters requested from " + std::to_string(n) + " points");
  }

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double dij = (points.row(static_cast<Eigen::Index>(i)) -
                          points.row(static_cast<Eigen::Index>(j)))
                             .norm();
      dist[i * n + j] = dist[j * n + i] = dij;
    }
  }

  // Each cluster is represented by its smallest member index.
  std::vector<bool> active(n, true);
  std::vector<std::size_t> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = i;
  std::vector<std::size_t> nearest(n, 0);
  std::vector<double> nearest_dist(n, std::numeric_limits<double>::infinity());

  auto refresh = [&](std::size_t i) {
    nearest_dist[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      if (dist[i * n + j] < nearest_dist[i]) {
        nearest_dist[i] = dist[i * n + j];
        nearest[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  for (std::size_t clusters = n; clusters > n_clusters; --clusters) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i] && (best == n || nearest_dist[i] < nearest_dist[best])) best = i;
    }
    const std::size_t a = std::min(best, nearest[best]);
    const std::size_t b = std::max(best, nearest[best]);
    active[b] = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      const double merged = std::max(dist[a * n + k], dist[b * n + k]);
      dist[a * n + k] = dist[k * n + a] = merged;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (root[k] == b) root[k] = a;
    }
    // Complete-linkage distances never shrink, so only clusters whose nearest
    // neighbour was a or b need a rescan.
    refresh(a);
    for (std::size_t k = 0; k < n; ++k) {
      if (active[k] && k != a && (nearest[k] == a || nearest[k] == b)) refresh(k);
    }
  }

  std::vector<int> label_of_root(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) label_of_root[i] = next++;
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = label_of_root[root[i]];
  return labels;
}

Points cluster_centroids(const Points& points, const std::vector<int>& labels,
                         std::size_t n_clusters) {
  if (labels.size() != static_cast<std::size_t>(points.rows())) {
    throw InvalidArgument("cluster_centroids: one label per point required");
  }
  Points centroids = Points::Zero(static_cast<Eigen::Index>(n_clusters), points.cols());
  std::vector<std::size_t> counts(n_clusters, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    centroids.row(static_cast<Eigen::Index>(c)) += points.row(static_cast<Eigen::Index>(i));
    ++counts[c];
  }
  for (std::size_t c = 0; c < n_clusters; ++c) {
    if (counts[c] == 0) throw InvalidArgument("cluster_centroids: empty cluster");
    centroids.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
  }
  return centroids;
}

}  // namespace corrsc

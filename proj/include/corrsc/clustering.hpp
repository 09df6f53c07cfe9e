#pragma once

#include <vector>

#include "corrsc/distribution.hpp"

namespace corrsc {

/// Agglomerative complete-linkage clustering (Euclidean metric) of the rows
/// of `points` down to `n_clusters` clusters.
///
/// Returns a label in [0, n_clusters) for every point. Clusters are numbered
/// by their smallest member index and ties in merge distance are broken by
/// the lowest cluster index, so the result is deterministic.
std::vector<int> complete_linkage(const Points& points, std::size_t n_clusters);

/// Component-wise mean of each cluster, one row per label.
Points cluster_centroids(const Points& points, const std::vector<int>& labels,
                         std::size_t n_clusters);

}  // namespace corrsc

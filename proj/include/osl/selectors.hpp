#pragma once

#include <cstddef>
#include <vector>

#include "osl/linkage.hpp"

namespace osl {

/// Final labeling: 0 is the outlier pool, k >= 1 the k-th largest cluster at
/// `chosen_radius` in `order_clusters` order. If fewer than m components
/// exist at that radius, the surplus labels are simply unused.
struct Clustering {
    std::size_t m = 0;
    std::vector<std::size_t> labels;
    double chosen_radius = 0.0;
};

struct LevelRecord {
    double radius;
    std::size_t cluster_count;
    std::size_t mth_size;  // 0 when cluster_count < m
};

/// Audit record of a radius selection.
struct SelectionTrace {
    std::size_t m = 0;
    std::vector<LevelRecord> levels;
    std::vector<double> argmax;  // levels attaining the maximal m-th size, ascending
    double chosen_radius = 0.0;  // argmax.back()
};

/// Outlier-robust rule: the largest level maximizing the size of the m-th
/// largest cluster. Throws InvalidInput unless 1 <= m <= n.
SelectionTrace osl_select(const Dendrogram& d, std::size_t m);

/// Classical rule: the largest level with at least m clusters.
/// Throws InvalidInput unless 1 <= m <= n, NoValidRadius if the data hold
/// fewer than m distinct points.
double sl_select(const Dendrogram& d, std::size_t m);

/// Keep the m largest clusters at radius r, pool the rest under label 0.
Clustering assign(const Dendrogram& d, double r, std::size_t m);

Clustering cluster_osl(const PointSet& points, std::size_t m);
Clustering cluster_sl(const PointSet& points, std::size_t m);

}  // namespace osl

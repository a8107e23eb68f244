#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace osl {

/// A set of n points in D-dimensional Euclidean space, stored row-major.
///
/// Points are identified by their 0-based position in the input; that
/// position is the stable identifier used for cluster tie-breaking.
class PointSet {
  public:
    PointSet() = default;

    /// Throws InvalidInput if `dim == 0`, the coordinate count is not a
    /// multiple of `dim`, the set is empty, or any coordinate is non-finite.
    PointSet(std::size_t dim, std::vector<double> coords);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }

    std::span<const double> operator[](std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }

    const std::vector<double>& coords() const noexcept { return coords_; }

    /// Copy of the points at `indices`, in that order.
    PointSet subset(std::span<const std::size_t> indices) const;

  private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// Euclidean distance. Every distance the library compares goes through this
/// function, so equal geometric distances compare equal bit-for-bit.
double euclidean_distance(std::span<const double> x, std::span<const double> y) noexcept;

/// One single-linkage merge. Cluster ids follow the linkage-matrix
/// convention: ids below n are points, id n + k is the cluster created by
/// merge k.
struct Merge {
    double radius;
    std::size_t left;
    std::size_t right;
    std::size_t size;
};

/// Full single-linkage merge structure.
///
/// Invariants: exactly n - 1 merges sorted by nondecreasing radius;
/// `levels()` strictly increasing with `levels()[0] == 0`; cutting at the
/// last level yields one component.
class Dendrogram {
  public:
    Dendrogram(std::size_t n, std::vector<Merge> merges);

    std::size_t n() const noexcept { return n_; }
    const std::vector<Merge>& merges() const noexcept { return merges_; }

    /// Distinct merge radii prefixed by 0.
    const std::vector<double>& levels() const noexcept { return levels_; }

    /// Number of merges with radius <= r.
    std::size_t merges_up_to(double r) const noexcept;

  private:
    std::size_t n_;
    std::vector<Merge> merges_;
    std::vector<double> levels_;
};

/// Connected components of the threshold graph {(x, y) : |x - y| <= radius}.
/// Each cluster holds sorted point indices; clusters are listed in order of
/// their smallest member.
struct Partition {
    std::vector<std::vector<std::size_t>> clusters;
    double radius = 0.0;
};

/// Single-linkage dendrogram via Prim's O(n^2) minimum spanning tree.
/// Throws InvalidInput on an empty point set.
Dendrogram build_dendrogram(const PointSet& points);

/// Per-point component id (0-based, numbered by first appearance) at radius r.
std::vector<std::size_t> component_labels(const Dendrogram& d, double r);

/// Throws InvalidInput for negative or NaN r.
Partition clusters_at_radius(const Dendrogram& d, double r);

/// Clusters sorted by size descending, then by smallest member ascending.
std::vector<std::vector<std::size_t>> order_clusters(const Partition& p);

}  // namespace osl

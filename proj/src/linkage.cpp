#include "osl/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "osl/errors.hpp"

namespace osl {

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_{dim}, coords_{std::move(coords)} {
    if (dim_ == 0) {
        throw InvalidInput("point dimension must be positive");
    }
    if (coords_.empty()) {
        throw InvalidInput("point set is empty");
    }
    if (coords_.size() % dim_ != 0) {
        throw InvalidInput("coordinate count is not a multiple of the dimension");
    }
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (!std::isfinite(coords_[k])) {
            throw InvalidInput("non-finite coordinate at point " + std::to_string(k / dim_) + ", axis " +
                               std::to_string(k % dim_));
        }
    }
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
    std::vector<double> out;
    out.reserve(indices.size() * dim_);
    for (auto i : indices) {
        auto p = (*this)[i];
        out.insert(out.end(), p.begin(), p.end());
    }
    return PointSet{dim_, std::move(out)};
}

double euclidean_distance(std::span<const double> x, std::span<const double> y) noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double diff = x[k] - y[k];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

Dendrogram::Dendrogram(std::size_t n, std::vector<Merge> merges) : n_{n}, merges_{std::move(merges)} {
    if (n_ == 0) {
        throw InvalidInput("dendrogram needs at least one point");
    }
    if (merges_.size() != n_ - 1) {
        throw InvalidInput("dendrogram needs exactly n - 1 merges");
    }
    levels_.push_back(0.0);
    for (std::size_t k = 0; k < merges_.size(); ++k) {
        const double r = merges_[k].radius;
        if (!(r >= 0.0) || (k > 0 && r < merges_[k - 1].radius)) {
            throw InvalidInput("merge radii must be nonnegative and sorted");
        }
        if (r > levels_.back()) {
            levels_.push_back(r);
        }
    }
}

std::size_t Dendrogram::merges_up_to(double r) const noexcept {
    auto it = std::upper_bound(merges_.begin(), merges_.end(), r,
                               [](double value, const Merge& m) { return value < m.radius; });
    return static_cast<std::size_t>(it - merges_.begin());
}

namespace {

struct MstEdge {
    std::size_t a;
    std::size_t b;
    double weight;
};

std::vector<MstEdge> prim_mst(const PointSet& points) {
    const std::size_t n = points.size();
    std::vector<MstEdge> edges;
    edges.reserve(n - 1);

    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> from(n, 0);
    std::vector<char> in_tree(n, 0);

    std::size_t current = 0;
    in_tree[0] = 1;
    for (std::size_t step = 1; step < n; ++step) {
        const auto x = points[current];
        std::size_t next = n;
        double next_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (in_tree[j]) {
                continue;
            }
            const double dist = euclidean_distance(x, points[j]);
            if (dist < best[j]) {
                best[j] = dist;
                from[j] = current;
            }
            if (next == n || best[j] < next_dist) {
                next = j;
                next_dist = best[j];
            }
        }
        in_tree[next] = 1;
        edges.push_back({from[next], next, next_dist});
        current = next;
    }
    return edges;
}

}  // namespace

Dendrogram build_dendrogram(const PointSet& points) {
    const std::size_t n = points.size();
    if (n == 0) {
        throw InvalidInput("point set is empty");
    }
    auto edges = prim_mst(points);
    std::stable_sort(edges.begin(), edges.end(),
                     [](const MstEdge& l, const MstEdge& r) { return l.weight < r.weight; });

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::vector<std::size_t> cluster_id(n);
    std::iota(cluster_id.begin(), cluster_id.end(), std::size_t{0});
    std::vector<std::size_t> size(n, 1);

    auto find = [&parent](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };

    std::vector<Merge> merges;
    merges.reserve(n - 1);
    for (const auto& e : edges) {
        auto ra = find(e.a);
        auto rb = find(e.b);
        const auto left = std::min(cluster_id[ra], cluster_id[rb]);
        const auto right = std::max(cluster_id[ra], cluster_id[rb]);
        if (size[ra] < size[rb]) {
            std::swap(ra, rb);
        }
        parent[rb] = ra;
        size[ra] += size[rb];
        cluster_id[ra] = n + merges.size();
        merges.push_back({e.weight, left, right, size[ra]});
    }
    return Dendrogram{n, std::move(merges)};
}

std::vector<std::size_t> component_labels(const Dendrogram& d, double r) {
    if (!(r >= 0.0)) {
        throw InvalidInput("cut radius must be nonnegative");
    }
    const std::size_t n = d.n();
    const std::size_t k = d.merges_up_to(r);
    const auto& merges = d.merges();

    // parent[id] for every node of the truncated merge forest; roots point to themselves
    std::vector<std::size_t> parent(n + k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t j = 0; j < k; ++j) {
        parent[merges[j].left] = n + j;
        parent[merges[j].right] = n + j;
    }
    // Children always have smaller ids than their parent, so a descending
    // sweep resolves every node's root in one pass.
    for (std::size_t id = n + k; id-- > 0;) {
        parent[id] = parent[parent[id]];
    }

    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> root_label(n + k, unset);
    std::vector<std::size_t> labels(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto& slot = root_label[parent[i]];
        if (slot == unset) {
            slot = next++;
        }
        labels[i] = slot;
    }
    return labels;
}

Partition clusters_at_radius(const Dendrogram& d, double r) {
    const auto labels = component_labels(d, r);
    Partition p;
    p.radius = r;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == p.clusters.size()) {
            p.clusters.emplace_back();
        }
        p.clusters[labels[i]].push_back(i);
    }
    return p;
}

std::vector<std::vector<std::size_t>> order_clusters(const Partition& p) {
    auto clusters = p.clusters;
    for (auto& c : clusters) {
        std::sort(c.begin(), c.end());
    }
    std::sort(clusters.begin(), clusters.end(), [](const auto& l, const auto& r) {
        if (l.size() != r.size()) {
            return l.size() > r.size();
        }
        return l.front() < r.front();
    });
    return clusters;
}

}  // namespace osl

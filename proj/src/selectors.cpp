#include "osl/selectors.hpp"

#include <algorithm>
#include <string>

#include "osl/errors.hpp"

namespace osl {

namespace {

void check_target(const Dendrogram& d, std::size_t m) {
    if (m < 1 || m > d.n()) {
        throw InvalidInput("cluster count m=" + std::to_string(m) + " must lie in [1, " + std::to_string(d.n()) +
                           "]");
    }
}

// Multiset of component sizes in 1..n answering "k-th largest" in O(log n).
// Slot i of the Fenwick tree counts components of size n + 1 - i, so prefix
// sums count components at least a given size.
class SizeCounter {
  public:
    explicit SizeCounter(std::size_t n) : n_{n}, tree_(n + 1, 0) {}

    void add(std::size_t size, long delta) {
        for (std::size_t i = n_ + 1 - size; i <= n_; i += i & (~i + 1)) {
            tree_[i] += delta;
        }
    }

    // Size of the k-th largest component; requires k <= component count.
    std::size_t kth_largest(std::size_t k) const {
        std::size_t pos = 0;
        long remaining = static_cast<long>(k);
        std::size_t step = 1;
        while (step * 2 <= n_) {
            step *= 2;
        }
        for (; step > 0; step /= 2) {
            if (pos + step <= n_ && tree_[pos + step] < remaining) {
                pos += step;
                remaining -= tree_[pos];
            }
        }
        return n_ + 1 - (pos + 1);
    }

  private:
    std::size_t n_;
    std::vector<long> tree_;
};

}  // namespace

SelectionTrace osl_select(const Dendrogram& d, std::size_t m) {
    check_target(d, m);
    const std::size_t n = d.n();
    const auto& merges = d.merges();
    const auto& levels = d.levels();

    auto size_of = [&](std::size_t id) { return id < n ? std::size_t{1} : merges[id - n].size; };

    SizeCounter sizes(n);
    sizes.add(1, static_cast<long>(n));

    SelectionTrace trace;
    trace.m = m;
    trace.levels.reserve(levels.size());

    std::size_t done = 0;
    std::size_t best = 0;
    for (double level : levels) {
        while (done < merges.size() && merges[done].radius <= level) {
            const auto& mg = merges[done];
            sizes.add(size_of(mg.left), -1);
            sizes.add(size_of(mg.right), -1);
            sizes.add(mg.size, +1);
            ++done;
        }
        const std::size_t count = n - done;
        const std::size_t mth = count >= m ? sizes.kth_largest(m) : 0;
        trace.levels.push_back({level, count, mth});
        best = std::max(best, mth);
    }
    for (const auto& rec : trace.levels) {
        if (rec.mth_size == best) {
            trace.argmax.push_back(rec.radius);
        }
    }
    trace.chosen_radius = trace.argmax.back();
    return trace;
}

double sl_select(const Dendrogram& d, std::size_t m) {
    check_target(d, m);
    const std::size_t n = d.n();
    double chosen = -1.0;
    for (double level : d.levels()) {
        if (n - d.merges_up_to(level) >= m) {
            chosen = level;
        } else {
            break;
        }
    }
    if (chosen < 0.0) {
        throw NoValidRadius("fewer than m=" + std::to_string(m) + " distinct points; no level has m clusters");
    }
    return chosen;
}

Clustering assign(const Dendrogram& d, double r, std::size_t m) {
    check_target(d, m);
    const auto ordered = order_clusters(clusters_at_radius(d, r));
    Clustering c;
    c.m = m;
    c.chosen_radius = r;
    c.labels.assign(d.n(), 0);
    for (std::size_t k = 0; k < ordered.size() && k < m; ++k) {
        for (auto i : ordered[k]) {
            c.labels[i] = k + 1;
        }
    }
    return c;
}

Clustering cluster_osl(const PointSet& points, std::size_t m) {
    const auto d = build_dendrogram(points);
    return assign(d, osl_select(d, m).chosen_radius, m);
}

Clustering cluster_sl(const PointSet& points, std::size_t m) {
    const auto d = build_dendrogram(points);
    return assign(d, sl_select(d, m), m);
}

}  // namespace osl

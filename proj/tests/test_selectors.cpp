#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "osl/errors.hpp"
#include "osl/selectors.hpp"

using namespace osl;

namespace {

PointSet line(std::vector<double> xs) { return PointSet(1, std::move(xs)); }

const std::vector<double> kSeven{0, 0.1, 0.2, 1.0, 1.1, 1.2, 0.55};
const std::vector<double> kSevenInt{0, 2, 4, 20, 22, 24, 11};
const std::vector<double> kFar{0, 0.1, 0.2, 1.0, 1.1, 1.2, 5.0};
const std::vector<double> kFarInt{0, 2, 4, 20, 22, 24, 100};

std::vector<std::size_t> mth_sizes(const SelectionTrace& t) {
    std::vector<std::size_t> out;
    for (const auto& rec : t.levels) {
        out.push_back(rec.mth_size);
    }
    return out;
}

}  // namespace

TEST_CASE("osl on the seven-point line") {
    const auto exact = osl_select(build_dendrogram(line(kSevenInt)), 2);
    CHECK(mth_sizes(exact) == std::vector<std::size_t>{1, 3, 3, 0});
    CHECK(exact.argmax == std::vector<double>{2, 7});
    CHECK(exact.chosen_radius == 7.0);

    const auto t = osl_select(build_dendrogram(line(kSeven)), 2);
    CHECK(t.chosen_radius == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(t.chosen_radius == t.argmax.back());
}

TEST_CASE("osl drops a far outlier that single linkage isolates") {
    const auto d = build_dendrogram(line(kFarInt));
    const auto t = osl_select(d, 2);
    CHECK(d.levels() == std::vector<double>{0, 2, 16, 76});
    CHECK(mth_sizes(t) == std::vector<std::size_t>{1, 3, 1, 0});
    CHECK(t.chosen_radius == 2.0);
    CHECK(sl_select(d, 2) == 16.0);

    const auto c = assign(d, t.chosen_radius, 2);
    CHECK(c.labels == std::vector<std::size_t>{1, 1, 1, 2, 2, 2, 0});

    const auto dd = build_dendrogram(line(kFar));
    CHECK(osl_select(dd, 2).chosen_radius == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(sl_select(dd, 2) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(cluster_osl(line(kFar), 2).labels == std::vector<std::size_t>{1, 1, 1, 2, 2, 2, 0});
    const auto sl = cluster_sl(line(kFar), 2);
    CHECK(sl.labels == std::vector<std::size_t>{1, 1, 1, 1, 1, 1, 2});
}

TEST_CASE("single linkage on the seven-point line") {
    CHECK(sl_select(build_dendrogram(line(kSevenInt)), 2) == 7.0);
    CHECK(sl_select(build_dendrogram(line(kSeven)), 2) == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("boundary targets") {
    const auto d = build_dendrogram(line(kSeven));
    CHECK(osl_select(d, 1).chosen_radius == d.levels().back());
    CHECK(sl_select(d, 7) == 0.0);
    CHECK_THROWS_AS(osl_select(d, 0), InvalidInput);
    CHECK_THROWS_AS(osl_select(d, 8), InvalidInput);
    CHECK_THROWS_AS(sl_select(d, 0), InvalidInput);
    CHECK_THROWS_AS(assign(d, 0.1, 0), InvalidInput);

    const auto dup = build_dendrogram(line({1, 1, 1}));
    CHECK_THROWS_AS(sl_select(dup, 2), NoValidRadius);
    CHECK(osl_select(dup, 2).chosen_radius == 0.0);  // every level has m-th size 0
}

TEST_CASE("assign labels the top clusters") {
    const auto d = build_dendrogram(line(kSevenInt));
    const auto all = assign(d, d.levels().back(), 1);
    CHECK(all.labels == std::vector<std::size_t>(7, 1));
    const auto short_of_m = assign(d, 9.0, 2);
    CHECK(short_of_m.labels == std::vector<std::size_t>(7, 1));
    const auto at7 = assign(d, 7.0, 2);
    CHECK(at7.labels == std::vector<std::size_t>{1, 1, 1, 2, 2, 2, 1});
    CHECK(at7.chosen_radius == 7.0);
    CHECK(at7.m == 2);
}

TEST_CASE("property: selectors agree with exhaustive scans") {
    std::mt19937_64 gen(31337);
    for (int trial = 0; trial < 120; ++trial) {
        const auto p = oracle::random_points(gen, 25, 3);
        const auto d = build_dendrogram(p);
        for (std::size_t m = 1; m <= p.size(); ++m) {
            const auto t = osl_select(d, m);
            REQUIRE(t.chosen_radius == oracle::osl_radius(p, m));
            for (const auto& rec : t.levels) {
                REQUIRE(rec.mth_size == oracle::mth_size(p, rec.radius, m));
            }
            const auto sl = oracle::sl_radius(p, m);
            if (sl) {
                REQUIRE(sl_select(d, m) == *sl);
            } else {
                REQUIRE_THROWS_AS(sl_select(d, m), NoValidRadius);
            }
        }
    }
}

TEST_CASE("property: optimality, candidate set and label structure") {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = oracle::random_points(gen);
        const auto d = build_dendrogram(p);
        std::uniform_int_distribution<std::size_t> pick(1, p.size());
        const std::size_t m = pick(gen);
        const auto t = osl_select(d, m);
        std::size_t best = 0;
        for (const auto& rec : t.levels) {
            best = std::max(best, rec.mth_size);
        }
        std::size_t chosen_size = 0;
        for (const auto& rec : t.levels) {
            if (rec.radius == t.chosen_radius) {
                chosen_size = rec.mth_size;
            }
            if (rec.radius > t.chosen_radius) {
                REQUIRE(rec.mth_size < best);
            }
        }
        REQUIRE(chosen_size == best);
        REQUIRE(std::find(d.levels().begin(), d.levels().end(), t.chosen_radius) != d.levels().end());

        const auto c = assign(d, t.chosen_radius, m);
        std::vector<std::size_t> sizes(m + 1, 0);
        for (auto l : c.labels) {
            REQUIRE(l <= m);
            ++sizes[l];
        }
        for (std::size_t k = 1; k < m; ++k) {
            REQUIRE(sizes[k] >= sizes[k + 1]);
        }
        // each nonzero label is exactly one component at the chosen radius
        const auto comp = component_labels(d, t.chosen_radius);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (std::size_t j = 0; j < comp.size(); ++j) {
                if (c.labels[i] != 0 && c.labels[i] == c.labels[j]) {
                    REQUIRE(comp[i] == comp[j]);
                }
                if (comp[i] == comp[j]) {
                    REQUIRE(c.labels[i] == c.labels[j]);
                }
            }
        }
    }
}

TEST_CASE("property: decisions are scale invariant") {
    std::mt19937_64 gen(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = oracle::random_points(gen);
        std::vector<double> xs = p.coords();
        for (auto& x : xs) {
            x *= 4.0;
        }
        const PointSet q(p.dim(), xs);
        const std::size_t m = 1 + static_cast<std::size_t>(trial) % p.size();
        const auto a = cluster_osl(p, m);
        const auto b = cluster_osl(q, m);
        REQUIRE(b.chosen_radius == 4.0 * a.chosen_radius);
        REQUIRE(a.labels == b.labels);
        if (oracle::sl_radius(p, m)) {
            const auto sa = cluster_sl(p, m);
            const auto sb = cluster_sl(q, m);
            REQUIRE(sb.chosen_radius == 4.0 * sa.chosen_radius);
            REQUIRE(sa.labels == sb.labels);
        }
    }
}

TEST_CASE("property: well separated equal-size groups give the same partition under both rules") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> jitter(0.0, 0.2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + trial % 4;
        std::vector<double> xs;
        for (std::size_t g = 0; g < m; ++g) {
            const std::size_t count = 3 + trial % 5;
            for (std::size_t k = 0; k < count; ++k) {
                xs.push_back(10.0 * static_cast<double>(g) + jitter(gen));
                xs.push_back(jitter(gen));
            }
        }
        const PointSet p(2, xs);
        const auto o = cluster_osl(p, m);
        const auto s = cluster_sl(p, m);
        REQUIRE(o.labels == s.labels);
        REQUIRE(std::count(o.labels.begin(), o.labels.end(), 0u) == 0);
    }
}

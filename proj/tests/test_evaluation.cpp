#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "osl/errors.hpp"
#include "osl/evaluation.hpp"

using namespace osl;

using Labels = std::vector<std::size_t>;

TEST_CASE("exact recovery") {
    CHECK(exact_recovery(Labels{1, 1, 2, 2, 0}, Labels{2, 2, 1, 1, 1}));
    CHECK_FALSE(exact_recovery(Labels{1, 1, 2, 2}, Labels{1, 1, 1, 1}));
    CHECK_FALSE(exact_recovery(Labels{1, 1, 2, 2}, Labels{1, 0, 2, 2}));
    CHECK_FALSE(exact_recovery(Labels{1, 1, 2, 2}, Labels{1, 2, 2, 2}));
    CHECK(exact_recovery(Labels{0, 0}, Labels{0, 1}));
    CHECK(exact_recovery(Labels{}, Labels{}));
    CHECK_THROWS_AS(exact_recovery(Labels{1}, Labels{1, 1}), InvalidInput);
}

TEST_CASE("property: exact recovery ignores relabeling") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 2 + trial % 4;
        const std::size_t n = 5 + trial % 20;
        std::uniform_int_distribution<std::size_t> lab(0, m);
        Labels truth(n);
        Labels pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = lab(gen);
            // mostly consistent predictions so both outcomes occur
            pred[i] = std::bernoulli_distribution(0.9)(gen) ? (truth[i] == 0 ? lab(gen) : truth[i]) : lab(gen);
        }
        const bool base = exact_recovery(truth, pred);
        std::vector<std::size_t> perm(m + 1);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin() + 1, perm.end(), gen);
        Labels pred2(n);
        Labels truth2(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred2[i] = perm[pred[i]];
        }
        std::shuffle(perm.begin() + 1, perm.end(), gen);
        for (std::size_t i = 0; i < n; ++i) {
            truth2[i] = perm[truth[i]];
        }
        REQUIRE(exact_recovery(truth, pred2) == base);
        REQUIRE(exact_recovery(truth2, pred) == base);
    }
}

TEST_CASE("adjusted Rand index examples") {
    CHECK(adjusted_rand_index(Labels{1, 1, 2, 2, 3}, Labels{1, 1, 2, 2, 3}) == doctest::Approx(1.0));
    CHECK(adjusted_rand_index(Labels{1, 1, 1, 2, 2, 2}, Labels{1, 1, 2, 2, 2, 2}) ==
          doctest::Approx(0.32432432432432434).epsilon(1e-12));
    CHECK(adjusted_rand_index(Labels{1, 1, 2, 2, 3, 3}, Labels{7, 7, 7, 7, 7, 7}) == 0.0);
    CHECK(adjusted_rand_index(Labels{4, 4, 4}, Labels{0, 0, 0}) == 1.0);
    CHECK(adjusted_rand_index(Labels{1}, Labels{2}) == 1.0);
    CHECK_THROWS_AS(adjusted_rand_index(Labels{1, 2}, Labels{1}), InvalidInput);
}

TEST_CASE("property: ARI matches pair counting, is symmetric and label-blind") {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 40;
        std::uniform_int_distribution<std::size_t> la(0, 1 + trial % 5);
        std::uniform_int_distribution<std::size_t> lb(0, 1 + trial % 3);
        Labels a(n);
        Labels b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = la(gen);
            b[i] = std::bernoulli_distribution(0.5)(gen) ? a[i] : lb(gen);
        }
        const double v = adjusted_rand_index(a, b);
        REQUIRE(v == doctest::Approx(oracle::ari_pairs(a, b)).epsilon(1e-10).scale(1.0));
        REQUIRE(v == doctest::Approx(adjusted_rand_index(b, a)).epsilon(1e-12).scale(1.0));
        REQUIRE(v <= 1.0 + 1e-12);
        Labels a2(n);
        for (std::size_t i = 0; i < n; ++i) {
            a2[i] = 100 - 3 * a[i];
        }
        REQUIRE(adjusted_rand_index(a2, b) == doctest::Approx(v).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("property: ARI of independent labelings is near zero") {
    std::mt19937_64 gen(13);
    std::uniform_int_distribution<std::size_t> lab(0, 3);
    double sum = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        Labels a(200);
        Labels b(200);
        for (std::size_t i = 0; i < 200; ++i) {
            a[i] = lab(gen);
            b[i] = lab(gen);
        }
        sum += adjusted_rand_index(a, b);
    }
    CHECK(std::abs(sum / 1000.0) < 0.05);
}

TEST_CASE("risk estimate arithmetic") {
    const auto r = make_risk_estimate(25, 100);
    CHECK(r.risk == 0.25);
    CHECK(r.standard_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
    CHECK(make_risk_estimate(0, 10).standard_error == 0.0);
}

TEST_CASE("risk harness with stub clusterers") {
    const Clusterer truth = [](const LabeledSample& s, std::size_t) { return s.truth; };
    const Clusterer lump = [](const LabeledSample& s, std::size_t) { return Labels(s.truth.size(), 1); };
    for (const auto& model : {squares_model(DeltaCase::tricky, 0.1), circles_model(DeltaCase::easy, 0.05),
                              example2_model(0.1)}) {
        CAPTURE(model.name);
        CHECK(estimate_risk(model, truth, model.groups(), 100, {50, 1, 1}).risk == 0.0);
        CHECK(estimate_risk(model, lump, model.groups(), 100, {50, 1, 2}).risk == 1.0);
    }
    CHECK_THROWS_AS(estimate_risk(example2_model(0.1), truth, 2, 10, {0, 1, 1}), InvalidInput);
}

TEST_CASE("risk does not depend on the thread count") {
    const auto model = sine_model(DeltaCase::tricky, 0.2);
    const auto one = estimate_risk(model, Algorithm::osl, 3, 150, {60, 99, 1});
    const auto four = estimate_risk(model, Algorithm::osl, 3, 150, {60, 99, 4});
    CHECK(one.failures == four.failures);
    CHECK(one.risk == four.risk);
    CHECK(one.failures > 0);
    CHECK(one.failures < 60);
}

TEST_CASE("replication errors carry the lowest failing index") {
    const auto model = example2_model(0.5);
    const std::size_t n = 20;
    // fail whenever the first sampled point is an outlier
    const Clusterer picky = [](const LabeledSample& s, std::size_t) -> Labels {
        if (s.truth[0] == 0) {
            throw std::runtime_error("boom");
        }
        return s.truth;
    };
    std::size_t expected = 0;
    for (;; ++expected) {
        auto rng = stream(5, expected);
        if (sample(model, n, rng).truth[0] == 0) {
            break;
        }
    }
    for (std::size_t threads : {1, 3}) {
        try {
            estimate_risk(model, picky, 2, n, {40, 5, threads});
            FAIL("expected a replication error");
        } catch (const ReplicationError& e) {
            CHECK(e.replication() == expected);
            CHECK(std::string(e.what()).find("boom") != std::string::npos);
        }
    }
}

TEST_CASE("subsampling without replacement") {
    auto rng = stream(1, 0);
    const auto idx = sample_without_replacement(50, 20, rng);
    CHECK(idx.size() == 20);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
    CHECK(idx.back() < 50);
    auto rng2 = stream(1, 0);
    CHECK(sample_without_replacement(50, 20, rng2) == idx);
    CHECK(sample_without_replacement(5, 5, rng).size() == 5);
    CHECK_THROWS_AS(sample_without_replacement(3, 4, rng), InvalidInput);
}

TEST_CASE("subsample bench") {
    const auto data = sample(squares_model(DeltaCase::easy, 0.1), 300, 8);
    const auto osl = clusterer_for(Algorithm::osl);

    const auto full = subsample_bench(data, osl, 3, {5, 1.0, 2});
    REQUIRE(full.ari.size() == 5);
    for (double v : full.ari) {
        CHECK(v == full.ari.front());
    }
    CHECK(full.sd < 1e-12);

    const auto part = subsample_bench(data, osl, 3, {10, 0.75, 2});
    CHECK(part.subsample_size == 225);
    CHECK(part.ari.size() == 10);
    CHECK(part.seconds.size() == 10);
    CHECK(part.mean == doctest::Approx(std::accumulate(part.ari.begin(), part.ari.end(), 0.0) / 10.0));
    CHECK(part.standard_error == doctest::Approx(part.sd / std::sqrt(10.0)));
    const auto again = subsample_bench(data, osl, 3, {10, 0.75, 2});
    CHECK(again.ari == part.ari);

    const auto tiny = subsample_bench(data, osl, 3, {4, 0.005, 2});
    CHECK(tiny.subsample_size == 1);
    CHECK(tiny.skipped == 4);
    CHECK(tiny.ari.empty());

    CHECK_THROWS_AS(subsample_bench(data, osl, 3, {4, 0.0, 2}), InvalidInput);
    CHECK_THROWS_AS(subsample_bench(data, osl, 3, {4, 1.5, 2}), InvalidInput);
}

TEST_CASE("algorithm names") {
    CHECK(parse_algorithm("osl") == Algorithm::osl);
    CHECK(parse_algorithm("sl") == Algorithm::sl);
    CHECK(to_string(Algorithm::sl) == "sl");
    CHECK_THROWS_AS(parse_algorithm("kmeans"), InvalidInput);
}

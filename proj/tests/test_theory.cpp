#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "osl/errors.hpp"
#include "osl/theory.hpp"

using namespace osl;
using namespace osl::theory;

namespace {

constexpr double kPi = std::numbers::pi;

BoundParams example_params() {
    BoundParams p;
    p.lambda = 1.0;
    p.d = 1.0;
    p.big_d = 2.0;
    p.a = 1.0;
    p.b = 1.0;
    p.delta = 1.0;
    p.epsilon = 0.0;
    p.n = 100.0;
    p.m = 2.0;
    p.eta = 0.1;
    p.gamma_bar = 1.0 / 6.0;
    return p;
}

}  // namespace

TEST_CASE("unit-ball volumes") {
    CHECK(std::abs(ball_volume(0) - 1.0) < 1e-12);
    CHECK(std::abs(ball_volume(1) - 2.0) < 1e-12);
    CHECK(std::abs(ball_volume(2) - kPi) < 1e-12);
    CHECK(std::abs(ball_volume(3) - 4.0 * kPi / 3.0) < 1e-12);
    CHECK(std::abs(ball_volume(4) - kPi * kPi / 2.0) < 1e-12);
    // reference value from a 30-digit evaluation of pi^1.25 / Gamma(2.25)
    CHECK(ball_volume(2.5) == doctest::Approx(3.6915286568649614).epsilon(1e-13));
    CHECK(std::isfinite(ball_volume(400.0)));
    CHECK(ball_volume(400.0) > 0.0);
    CHECK_THROWS_AS(ball_volume(-1.0), InvalidInput);
}

TEST_CASE("psi") {
    CHECK(std::abs(psi(1.0) - (2.0 * std::log(2.0) - 1.0)) < 1e-12);
    CHECK(psi(std::numbers::e - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi(1e-9) < 1e-15);
    CHECK(psi(1e-9) == doctest::Approx(4.99999999833262650835887e-19).epsilon(1e-12));
    CHECK(psi(1e-5) == doctest::Approx(4.99998333341666616667e-11).epsilon(1e-12));
    CHECK(psi(1e-3) == doctest::Approx(4.99833416616699976208e-7).epsilon(1e-12));
    CHECK(psi(0.1) == doctest::Approx(0.00484119778475734604834).epsilon(1e-12));
    CHECK_THROWS_AS(psi(0.0), InvalidInput);
    CHECK_THROWS_AS(psi(-0.5), InvalidInput);
}

TEST_CASE("property: psi is positive, increasing and convex") {
    double prev = 0.0;
    double prev_slope = 0.0;
    double prev_x = 0.0;
    for (int k = -80; k <= 30; ++k) {
        const double x = std::pow(10.0, k / 10.0);
        const double v = psi(x);
        REQUIRE(v > 0.0);
        REQUIRE(v > prev);
        const double slope = (v - prev) / (x - prev_x);
        if (k > -80) {
            REQUIRE(slope > prev_slope);
        }
        prev_slope = slope;
        prev = v;
        prev_x = x;
    }
    // continuity across the small-argument branch
    CHECK(psi(1e-4 * (1 - 1e-12)) == doctest::Approx(psi(1e-4 * (1 + 1e-12))).epsilon(1e-10));
}

TEST_CASE("size-balance condition") {
    const std::vector<double> thirds{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(check_size_balance(thirds, 0.1));
    CHECK_FALSE(check_size_balance(thirds, 0.2));
    CHECK(std::abs(size_balance_epsilon_bound(1.0 / 3, 1.0 / 3) - 1.0 / 7.0) < 1e-12);
    CHECK(std::abs(size_balance_epsilon_bound(0.4, 0.6) - 1.0 / 11.0) < 1e-12);
    const std::vector<double> circles{0.4, 0.6};
    CHECK(check_size_balance(circles, 0.09));
    CHECK_FALSE(check_size_balance(circles, 0.0915));
    const std::vector<double> skewed{0.25, 0.75};
    CHECK_FALSE(check_size_balance(skewed, 0.0));
    const std::vector<double> boundary{1.0 / 3, 2.0 / 3};
    CHECK_FALSE(check_size_balance(boundary, 0.0));
    CHECK_THROWS_AS(check_size_balance(std::vector<double>{0.5, 0.6}, 0.0), InvalidInput);
    CHECK_THROWS_AS(check_size_balance(std::vector<double>{}, 0.0), InvalidInput);
    CHECK_THROWS_AS(check_size_balance(std::vector<double>{1.5, -0.5}, 0.0), InvalidInput);
}

TEST_CASE("eta thresholds") {
    const std::vector<double> thirds{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto t = eta_thresholds(constants_from_weights(thirds, 0.0));
    CHECK(t.eta0 == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    CHECK(t.eta1 == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    const std::vector<double> boundary{1.0 / 3, 2.0 / 3};
    CHECK_THROWS_AS(eta_thresholds(constants_from_weights(boundary, 0.0)), InfeasibleModel);
    CHECK_THROWS_AS(eta_thresholds(constants_from_weights(thirds, 0.2)), InfeasibleModel);
}

TEST_CASE("complexity constants") {
    ModelConstants c;
    c.gamma_star = c.gamma_sup = 1.0 / 3.0;
    c.d = 2;
    c.big_d = 2;
    const auto [a, b] = constants_ab(c);
    CHECK(a == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
    CHECK(b == doctest::Approx(kPi).epsilon(1e-14));
    c.d = 0;
    CHECK(constants_ab(c).a == doctest::Approx((1.0 / 3.0) / (7.0 / 6.0)).epsilon(1e-14));
    c.kappa_c = 0.0;
    CHECK_THROWS_AS(constants_ab(c), InvalidInput);
}

TEST_CASE("risk bound at a reference point") {
    const auto p = example_params();
    // 2 e^-50 + 0 + 4 exp(-(100/6) psi(0.1)), evaluated to 30 digits
    CHECK(risk_bound(0.5, p) == doctest::Approx(3.68993089920334765).epsilon(1e-13));
    const auto t = bound_terms(0.5, p);
    CHECK(t.log_connectivity == doctest::Approx(std::log(2.0) - 50.0).epsilon(1e-14));
    CHECK(std::isinf(t.log_outlier_chain));
    CHECK(t.log_outlier_chain < 0);
    // the combined objective doubles only the tail term
    CHECK(combined_objective(0.5, p) ==
          doctest::Approx(2 * 3.68993089920334765 - 2 * std::exp(-50.0)).epsilon(1e-13));
}

TEST_CASE("bound domain checks and limits") {
    auto p = example_params();
    CHECK_THROWS_AS(risk_bound(0.0, p), InvalidInput);
    CHECK_THROWS_AS(risk_bound(1.0, p), InvalidInput);
    CHECK_THROWS_AS(risk_bound(-0.1, p), InvalidInput);
    p.eta = 0.5;  // beyond eta0 = 1/7
    CHECK_THROWS_AS(risk_bound(0.5, p), InvalidInput);
    p.eta = 0.0;
    CHECK_THROWS_AS(risk_bound(0.5, p), InvalidInput);

    // tail tends to 2M as eta -> 0
    p.eta = 1e-12;
    CHECK(std::exp(bound_terms(0.5, p).log_tail) == doctest::Approx(4.0).epsilon(1e-12));

    // epsilon = 0 kills the outlier term for every admissible r
    p = example_params();
    for (double r = 0.01; r < 1.0; r += 0.01) {
        REQUIRE(bound_terms(r, p).log_outlier_chain == -std::numeric_limits<double>::infinity());
    }

    // large n stays finite in log space
    p.n = 1e6;
    p.epsilon = 0.1;
    p.eta = 0.01;
    const double lb = log_risk_bound(0.5, p);
    CHECK(std::isfinite(lb));
}

TEST_CASE("bound from model constants") {
    ModelConstants c;
    c.gamma_star = c.gamma_sup = 1.0 / 3.0;
    c.epsilon = 0.05;
    c.d = 2;
    c.big_d = 2;
    c.delta = 0.35;
    c.n = 500;
    c.m = 3;
    c.eta = 0.05;
    const auto p = bound_params(c);
    CHECK(p.a == doctest::Approx(2.0 / 7.0));
    CHECK(p.gamma_bar == doctest::Approx(1.0 / 6.0));
    CHECK(risk_bound(0.1, c) == doctest::Approx(risk_bound(0.1, p)));
}

TEST_CASE("property: bound monotone in a, b and epsilon") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        BoundParams p;
        p.lambda = 0.1 + 5 * u(gen);
        p.d = 0.5 + 2 * u(gen);
        p.big_d = p.d + 2 * u(gen);
        p.a = 0.05 + u(gen);
        p.b = 0.05 + 4 * u(gen);
        p.delta = 0.2 + u(gen);
        p.epsilon = 0.05 * u(gen);
        p.n = std::floor(50 + 2000 * u(gen));
        p.m = 2 + std::floor(4 * u(gen));
        p.gamma_bar = 0.1 + 0.1 * u(gen);
        p.eta = 0.01 * u(gen) + 1e-4;
        const double r = p.delta * (0.02 + 0.96 * u(gen));
        const double base = log_risk_bound(r, p);

        auto q = p;
        q.a *= 1.5;
        REQUIRE(log_risk_bound(r, q) <= base + 1e-12);
        q = p;
        q.b *= 1.5;
        REQUIRE(log_risk_bound(r, q) >= base - 1e-12);
        q = p;
        q.epsilon += 0.01;
        REQUIRE(log_risk_bound(r, q) >= base - 1e-12);
    }
}

TEST_CASE("grid minimization") {
    auto p = example_params();
    const std::vector<double> single{0.3};
    CHECK(minimize_bound(p, single).r == 0.3);
    CHECK(minimize_bound(p, single).value == combined_objective(0.3, p));
    CHECK_THROWS_AS(minimize_bound(p, std::vector<double>{}), InvalidInput);
    CHECK_THROWS_AS(minimize_bound(p, std::vector<double>{0.5, 1.5}), InvalidInput);

    // epsilon = 0: the objective decreases in r, so the fine-grid minimizer is the largest radius
    const auto grid = linear_grid(0.001, 0.999, 1000);
    CHECK(grid.size() == 1000);
    CHECK(grid.back() == 0.999);
    CHECK(minimize_bound(p, grid).r == 0.999);

    // ties go to the larger radius: a huge tail swamps every other term
    p.n = 1.0;
    p.a = 0.0;
    p.lambda = 1e-300;
    const std::vector<double> tied{0.2, 0.4, 0.6};
    CHECK(minimize_bound(p, tied).r == 0.6);
}

TEST_CASE("grid minimizer is no worse than the rate-optimal radius") {
    ModelConstants c;
    c.gamma_star = c.gamma_sup = 1.0 / 3.0;
    c.epsilon = 0.05;
    c.d = 2;
    c.big_d = 2;
    c.delta = 0.35;
    c.n = 5000;
    c.m = 3;
    c.eta = 0.05;
    const auto p = bound_params(c);
    const double r_star = std::pow(p.big_d * std::log(p.n) / (p.a * p.d * p.n), 1.0 / p.d);
    REQUIRE(r_star < c.delta);
    auto grid = linear_grid(0.005, 0.345, 200);
    grid.push_back(r_star);
    const auto best = minimize_bound(p, grid);
    CHECK(best.value <= combined_objective(r_star, p));
}

TEST_CASE("linear grid") {
    CHECK(linear_grid(0.1, 0.5, 1) == std::vector<double>{0.1});
    const auto g = linear_grid(0.0, 1.0, 5);
    CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), InvalidInput);
}

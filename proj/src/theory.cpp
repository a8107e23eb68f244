#include "osl/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "osl/errors.hpp"

namespace osl::theory {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::initializer_list<double> logs) {
    double top = kNegInf;
    for (double v : logs) {
        top = std::max(top, v);
    }
    if (top == kNegInf) {
        return kNegInf;
    }
    if (std::isinf(top)) {
        return top;
    }
    double acc = 0.0;
    for (double v : logs) {
        acc += std::exp(v - top);
    }
    return top + std::log(acc);
}

void check_weights(std::span<const double> weights) {
    if (weights.empty()) {
        throw InvalidInput("weight vector is empty");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) {
            throw InvalidInput("weights must be positive");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidInput("weights must sum to 1");
    }
}

double eta0_of(double epsilon, double gamma_bar) { return 1.0 - 1.0 / ((1.0 - epsilon) * (1.0 + gamma_bar)); }

}  // namespace

ModelConstants constants_from_weights(std::span<const double> weights, double epsilon) {
    check_weights(weights);
    ModelConstants c;
    c.gamma_star = *std::min_element(weights.begin(), weights.end());
    c.gamma_sup = *std::max_element(weights.begin(), weights.end());
    c.epsilon = epsilon;
    c.m = weights.size();
    return c;
}

double ball_volume(double s) {
    if (!(s >= 0.0)) {
        throw InvalidInput("dimension must be nonnegative");
    }
    if (s < 300.0) {
        return std::pow(std::numbers::pi, 0.5 * s) / std::tgamma(1.0 + 0.5 * s);
    }
    return std::exp(0.5 * s * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * s));
}

double psi(double eta) {
    if (!(eta > 0.0)) {
        throw InvalidInput("psi is defined for eta > 0");
    }
    if (eta < 1e-4) {
        // sum_{k>=2} (-1)^k eta^k / (k (k - 1))
        const double e2 = eta * eta;
        return e2 / 2.0 - e2 * eta / 6.0 + e2 * e2 / 12.0 - e2 * e2 * eta / 20.0;
    }
    return (1.0 + eta) * std::log1p(eta) - eta;
}

double size_balance_epsilon_bound(double gamma_star, double gamma_sup) {
    const double gbar = gamma_star - gamma_sup / 2.0;
    return gbar / (1.0 + gbar);
}

bool check_size_balance(std::span<const double> weights, double epsilon) {
    const auto c = constants_from_weights(weights, epsilon);
    return check_size_balance(c);
}

bool check_size_balance(const ModelConstants& c) {
    if (!(c.gamma_sup < 2.0 * c.gamma_star)) {
        return false;
    }
    return c.epsilon >= 0.0 && c.epsilon < size_balance_epsilon_bound(c.gamma_star, c.gamma_sup);
}

EtaThresholds eta_thresholds(const ModelConstants& c) {
    if (!check_size_balance(c)) {
        throw InfeasibleModel("weights and outlier proportion violate the size-balance condition");
    }
    const double t = c.gamma_star / c.gamma_sup - 0.5;
    return {eta0_of(c.epsilon, c.gamma_bar()), t / (4.0 + t)};
}

ComplexityConstants constants_ab(const ModelConstants& c) {
    if (!(c.kappa0 > 0.0 && c.kappa_sup > 0.0 && c.kappa_c > 0.0)) {
        throw InvalidInput("kappa constants must be positive");
    }
    const double eta_star = std::min(1.0, ball_volume(c.d));
    const double a = c.gamma_star * eta_star / (c.kappa_sup * c.kappa_c * (1.0 + c.gamma_bar()));
    const double b = ball_volume(c.big_d) * c.kappa0;
    return {a, b};
}

BoundParams bound_params(const ModelConstants& c) {
    const auto [a, b] = constants_ab(c);
    BoundParams p;
    p.lambda = c.lambda;
    p.a = a;
    p.b = b;
    p.d = c.d;
    p.big_d = c.big_d;
    p.delta = c.delta;
    p.epsilon = c.epsilon;
    p.n = static_cast<double>(c.n);
    p.m = static_cast<double>(c.m);
    p.eta = c.eta;
    p.gamma_bar = c.gamma_bar();
    return p;
}

BoundTerms bound_terms(double r, const BoundParams& p) {
    if (!(r > 0.0 && r < p.delta)) {
        throw InvalidInput("radius must lie in (0, delta)");
    }
    const double eta0 = eta0_of(p.epsilon, p.gamma_bar);
    if (!(p.eta > 0.0 && p.eta < eta0)) {
        throw InvalidInput("eta must lie in (0, eta0)");
    }
    if (!(p.lambda > 0.0)) {
        throw InvalidInput("lambda must be positive");
    }
    BoundTerms t;
    t.log_connectivity = std::log(p.lambda) - p.d * std::log(r) - p.a * p.n * std::pow(r, p.d);

    const double hops = std::floor(p.delta / r);
    if (p.epsilon == 0.0 || p.n == 0.0 || p.b == 0.0) {
        t.log_outlier_chain = kNegInf;
    } else {
        const double log_base = std::log(p.b) + std::log(p.epsilon) + std::log(p.n) + p.big_d * std::log(r);
        t.log_outlier_chain = std::log(p.n) + std::log(p.epsilon) + hops * log_base;
    }

    t.log_tail = std::log(2.0 * p.m) - psi(p.eta) * (1.0 - p.epsilon) * p.gamma_bar * p.n;
    return t;
}

double log_risk_bound(double r, const BoundParams& p) {
    const auto t = bound_terms(r, p);
    return log_sum_exp({t.log_connectivity, t.log_outlier_chain, t.log_tail});
}

double risk_bound(double r, const BoundParams& p) { return std::exp(log_risk_bound(r, p)); }

double risk_bound(double r, const ModelConstants& c) { return risk_bound(r, bound_params(c)); }

double combined_objective(double r, const BoundParams& p) {
    const auto t = bound_terms(r, p);
    // the combined statement doubles the selection tail: 4m instead of 2m
    return std::exp(log_sum_exp({t.log_connectivity, t.log_outlier_chain, t.log_tail + std::log(2.0)}));
}

BoundMinimum minimize_bound(const BoundParams& p, std::span<const double> grid) {
    if (grid.empty()) {
        throw InvalidInput("radius grid is empty");
    }
    BoundMinimum best{0.0, std::numeric_limits<double>::infinity()};
    bool first = true;
    for (double r : grid) {
        const double v = combined_objective(r, p);
        if (first || v < best.value || (v == best.value && r > best.r)) {
            best = {r, v};
            first = false;
        }
    }
    return best;
}

BoundMinimum minimize_bound(const ModelConstants& c, std::span<const double> grid) {
    return minimize_bound(bound_params(c), grid);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
    if (steps == 0) {
        throw InvalidInput("grid needs at least one point");
    }
    if (steps == 1) {
        return {lo};
    }
    std::vector<double> g(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    g.back() = hi;
    return g;
}

}  // namespace osl::theory

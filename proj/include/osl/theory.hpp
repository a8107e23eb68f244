#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace osl::theory {

/// Model quantities entering the risk bounds.
struct ModelConstants {
    double gamma_star = 0.0;  // smallest group weight
    double gamma_sup = 0.0;   // largest group weight
    double epsilon = 0.0;
    double kappa0 = 1.0;      // outlier density bound
    double kappa_sup = 1.0;   // largest group density bound
    double kappa_c = 1.0;     // support regularity constant
    double d = 0.0;           // largest Hausdorff dimension of the supports
    double big_d = 0.0;       // ambient dimension
    double delta = 0.0;       // support separation
    std::size_t n = 0;
    std::size_t m = 0;
    double lambda = 1.0;      // covering constant; not computable, user supplied
    double eta = 0.0;

    /// gamma_star - gamma_sup / 2
    double gamma_bar() const noexcept { return gamma_star - gamma_sup / 2.0; }
};

/// Smallest and largest weight of a weight vector.
ModelConstants constants_from_weights(std::span<const double> weights, double epsilon);

/// Volume of the unit ball in (possibly fractional) dimension s:
/// pi^(s/2) / Gamma(1 + s/2).
double ball_volume(double s);

/// (1 + eta)(log(1 + eta) - 1) + 1, evaluated without cancellation.
/// Throws InvalidInput for eta <= 0.
double psi(double eta);

/// Upper limit on the outlier proportion: gamma_bar / (1 + gamma_bar).
double size_balance_epsilon_bound(double gamma_star, double gamma_sup);

/// gamma_sup < 2 gamma_star and 0 <= epsilon < gamma_bar / (1 + gamma_bar).
/// Throws InvalidInput unless the weights are positive and sum to 1.
bool check_size_balance(std::span<const double> weights, double epsilon);
bool check_size_balance(const ModelConstants& c);

struct EtaThresholds {
    double eta0;
    double eta1;
};

/// eta0 = 1 - 1 / ((1 - eps)(1 + gamma_bar)); eta1 = t / (4 + t) with
/// t = gamma_star / gamma_sup - 1/2. Throws InfeasibleModel when the
/// size-balance condition fails.
EtaThresholds eta_thresholds(const ModelConstants& c);

struct ComplexityConstants {
    double a;
    double b;
};

/// a = gamma_star eta_*(d) / (kappa_sup kappa_c (1 + gamma_bar)),
/// b = ball_volume(D) kappa0, with eta_*(d) = min(1, ball_volume(d)).
ComplexityConstants constants_ab(const ModelConstants& c);

/// Inputs of the single-radius bound, with the complexity constants given
/// directly.
struct BoundParams {
    double lambda = 1.0;
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double big_d = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double n = 0.0;
    double m = 0.0;
    double eta = 0.0;
    double gamma_bar = 0.0;
};

BoundParams bound_params(const ModelConstants& c);

struct BoundTerms {
    // natural logs of the three terms; -inf for an exactly zero term
    double log_connectivity;
    double log_outlier_chain;
    double log_tail;
};

/// Log-space terms of
///   lambda r^-d exp(-a n r^d) + n eps (b eps n r^D)^floor(delta / r)
///   + 2 m exp(-psi(eta)(1 - eps) gamma_bar n).
/// Throws InvalidInput unless 0 < r < delta and 0 < eta < eta0.
BoundTerms bound_terms(double r, const BoundParams& p);

/// Sum of the three terms (may overflow to +inf; use log_risk_bound then).
double risk_bound(double r, const BoundParams& p);
double risk_bound(double r, const ModelConstants& c);
double log_risk_bound(double r, const BoundParams& p);

/// First two single-radius terms plus the tail 4 m exp(-psi(eta)(1 - eps) gamma_bar n).
double combined_objective(double r, const BoundParams& p);

struct BoundMinimum {
    double r;
    double value;
};

/// Grid minimizer of `combined_objective`; ties go to the larger radius.
/// Throws InvalidInput for an empty grid or radii outside (0, delta).
BoundMinimum minimize_bound(const BoundParams& p, std::span<const double> grid);
BoundMinimum minimize_bound(const ModelConstants& c, std::span<const double> grid);

/// lo, lo + h, ..., hi with `steps` points (steps >= 1).
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

}  // namespace osl::theory

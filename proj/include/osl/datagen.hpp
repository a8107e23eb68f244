#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "osl/linkage.hpp"
#include "osl/rng.hpp"

namespace osl {

// ---------------------------------------------------------------------------
// Group supports
// ---------------------------------------------------------------------------

/// Axis-aligned box [lo, hi]; zero-width axes are allowed.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Planar annulus inner <= |x - center| <= outer.
struct Annulus {
    std::array<double, 2> center{0.0, 0.0};
    double inner = 0.0;
    double outer = 1.0;
};

/// Planar band {(t, y) : t in [t_min, t_max], |y - amplitude sin t| <= thickness / 2}.
/// With zero thickness this is the curve itself, sampled uniformly by arc length.
struct SineSegment {
    double t_min = 0.0;
    double t_max = 0.0;
    double amplitude = 1.0;
    double thickness = 0.0;
};

struct PointMass {
    std::vector<double> location;
};

/// One-dimensional interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

using SupportShape = std::variant<Box, Annulus, SineSegment, PointMass, Interval>;

/// A group support. The shape lives in the leading coordinates; every
/// coordinate past the shape's own dimension is pinned to `fixed_tail`, which
/// is how planar supports are embedded in a higher-dimensional ambient space.
struct SupportSpec {
    SupportShape shape;
    std::vector<double> fixed_tail;

    std::size_t dim() const;
};

std::size_t shape_dim(const SupportShape& shape);

/// Exact membership test. Point masses and pinned coordinates use exact
/// equality. Throws InvalidInput when x.size() != support.dim().
bool contains(const SupportSpec& support, std::span<const double> x);

/// Euclidean distance from x to the support (numerically refined for curves).
double distance_to(const SupportSpec& support, std::span<const double> x);

/// Minimum distance between two supports. Closed form for box/box,
/// concentric annuli, points and intervals; refined numeric minimization
/// for curve/box; dense boundary mesh otherwise.
double support_gap(const SupportSpec& a, const SupportSpec& b);

// ---------------------------------------------------------------------------
// Outlier distributions
// ---------------------------------------------------------------------------

/// Uniform on the box, minus the group supports.
struct UniformBoxOutliers {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Uniform on a planar open annulus, minus the group supports.
struct UniformAnnulusOutliers {
    std::array<double, 2> center{0.0, 0.0};
    double inner = 0.0;
    double outer = 1.0;
};

/// Bivariate normal with variances (var_x, var_y) and correlation rho,
/// truncated to the complement of the group supports. |rho| = 1 is allowed.
struct GaussianOutliers {
    std::array<double, 2> mean{0.0, 0.0};
    double var_x = 1.0;
    double var_y = 1.0;
    double rho = 0.0;
};

using OutlierShape = std::variant<UniformBoxOutliers, UniformAnnulusOutliers, GaussianOutliers>;

struct OutlierSpec {
    OutlierShape shape;
    std::vector<double> fixed_tail;

    std::size_t dim() const;
};

// ---------------------------------------------------------------------------
// Mixture model
// ---------------------------------------------------------------------------

/// Law epsilon * P0 + (1 - epsilon) * sum_i gamma_i * P_i with P_i uniform on
/// support i and P0 the outlier distribution.
struct MixtureModel {
    std::string name;
    double epsilon = 0.0;
    std::vector<double> weights;
    std::vector<SupportSpec> supports;
    OutlierSpec outliers;
    std::size_t ambient_dim = 2;
    double delta = 0.0;  // declared minimum gap between supports

    std::size_t groups() const noexcept { return supports.size(); }
};

/// Throws InvalidInput on inconsistent dimensions, weights that are not
/// positive and normalized, or epsilon outside [0, 1).
void validate(const MixtureModel& model);

/// Smallest pairwise support gap (infinity for a single group).
double min_support_gap(const MixtureModel& model);

struct LabeledSample {
    PointSet points;
    std::vector<std::size_t> truth;  // 0 = outlier, i >= 1 = group i
};

inline constexpr std::size_t kMaxRejections = 1'000'000;

/// n i.i.d. draws, deterministic in (model, n, seed). Throws DegenerateModel
/// if an outlier needs more than kMaxRejections proposals.
LabeledSample sample(const MixtureModel& model, std::size_t n, std::uint64_t seed);

/// Same as `sample` but drawing from an existing stream.
LabeledSample sample(const MixtureModel& model, std::size_t n, Philox& rng);

/// One Gaussian proposal before truncation.
std::array<double, 2> gaussian_proposal(const GaussianOutliers& g, Philox& rng);

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

enum class DeltaCase { easy, tricky };

DeltaCase parse_delta_case(const std::string& s);
std::string to_string(DeltaCase c);

/// Three equal-weight squares in a row. Gap 0.35 (easy) or 0.07 (tricky).
MixtureModel squares_model(DeltaCase c, double epsilon = 0.0);

/// Two concentric rings with weights (0.4, 0.6); outliers only between them.
/// Gap 2.6 (easy) or 1.6 (tricky).
MixtureModel circles_model(DeltaCase c, double epsilon = 0.0);

/// A sine curve and two unit squares, equal weights. Gap 1.18 (easy) or
/// 0.76 (tricky).
MixtureModel sine_model(DeltaCase c, double epsilon = 0.0);

/// Tricky sine geometry embedded in D >= 2 dimensions (extra coordinates
/// pinned to pi), outliers uniform on the D-dimensional box.
MixtureModel sine_highdim_model(std::size_t ambient_dim, double epsilon = 0.0);

/// Tricky sine geometry with truncated Gaussian outliers centered at (pi, 0),
/// variances (2 sigma2, sigma2) and correlation rho.
MixtureModel gaussian_noise_sine_model(double sigma2, double rho, double epsilon = 0.0);

/// Two atoms at -1 and +1 with equal weights and uniform outliers on [-3, 3].
MixtureModel example2_model(double epsilon);

/// Builds a scenario by name: squares, circles, sine, sine_highdim,
/// gaussian_sine, example2. Unused parameters are ignored.
struct ScenarioParams {
    DeltaCase delta_case = DeltaCase::easy;
    double epsilon = 0.0;
    std::size_t ambient_dim = 2;
    double sigma2 = 0.25;
    double rho = 0.0;
};
MixtureModel scenario_model(const std::string& name, const ScenarioParams& params);

}  // namespace osl

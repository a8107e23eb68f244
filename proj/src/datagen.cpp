#include "osl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "osl/errors.hpp"

namespace osl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double interval_gap(double lo1, double hi1, double lo2, double hi2) {
    return std::max({0.0, lo1 - hi2, lo2 - hi1});
}

double clamp_gap(double x, double lo, double hi) {
    return x < lo ? lo - x : (x > hi ? x - hi : 0.0);
}

// Squared distance contributed by the pinned tail coordinates.
double tail_sq(std::span<const double> x, std::size_t offset, const std::vector<double>& tail) {
    double acc = 0.0;
    for (std::size_t k = 0; k < tail.size(); ++k) {
        const double d = x[offset + k] - tail[k];
        acc += d * d;
    }
    return acc;
}

// Minimizes f over [lo, hi]: dense scan, then golden-section search around
// the best grid point.
double minimize_1d(const std::function<double(double)>& f, double lo, double hi, std::size_t grid = 4096) {
    std::size_t best_i = 0;
    double best = kInf;
    const double step = (hi - lo) / static_cast<double>(grid);
    for (std::size_t i = 0; i <= grid; ++i) {
        const double v = f(lo + step * static_cast<double>(i));
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    double a = lo + step * static_cast<double>(best_i == 0 ? 0 : best_i - 1);
    double b = lo + step * static_cast<double>(std::min(best_i + 1, grid));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::min({best, fc, fd});
}

// Vertical extent of a sine band at abscissa t.
std::pair<double, double> band_at(const SineSegment& s, double t) {
    const double y = s.amplitude * std::sin(t);
    return {y - s.thickness / 2.0, y + s.thickness / 2.0};
}

std::vector<std::vector<double>> boundary_mesh(const SupportSpec& support, std::size_t res) {
    std::vector<std::vector<double>> mesh;
    auto push = [&](std::vector<double> p) {
        p.insert(p.end(), support.fixed_tail.begin(), support.fixed_tail.end());
        mesh.push_back(std::move(p));
    };
    std::visit(Overloaded{
                   [&](const Box& b) {
                       const std::size_t dim = b.lo.size();
                       // every face of the box sampled on a res^(dim-1) grid
                       std::size_t total = 1;
                       for (std::size_t k = 0; k < dim; ++k) {
                           total *= res + 1;
                       }
                       std::vector<double> p(dim);
                       for (std::size_t idx = 0; idx < total; ++idx) {
                           std::size_t rem = idx;
                           bool on_face = false;
                           for (std::size_t k = 0; k < dim; ++k) {
                               const std::size_t step = rem % (res + 1);
                               rem /= res + 1;
                               on_face = on_face || step == 0 || step == res;
                               p[k] = b.lo[k] + (b.hi[k] - b.lo[k]) * static_cast<double>(step) /
                                                    static_cast<double>(res);
                           }
                           if (on_face) {
                               push(p);
                           }
                       }
                   },
                   [&](const Annulus& a) {
                       for (std::size_t i = 0; i < 8 * res; ++i) {
                           const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(8 * res);
                           for (double r : {a.inner, a.outer}) {
                               push({a.center[0] + r * std::cos(th), a.center[1] + r * std::sin(th)});
                           }
                       }
                   },
                   [&](const SineSegment& s) {
                       const std::size_t steps = 8 * res;
                       for (std::size_t i = 0; i <= steps; ++i) {
                           const double t =
                               s.t_min + (s.t_max - s.t_min) * static_cast<double>(i) / static_cast<double>(steps);
                           const auto [y0, y1] = band_at(s, t);
                           push({t, y0});
                           if (y1 != y0) {
                               push({t, y1});
                           }
                       }
                   },
                   [&](const PointMass& p) { push(p.location); },
                   [&](const Interval& iv) {
                       push({iv.lo});
                       push({iv.hi});
                   },
               },
               support.shape);
    return mesh;
}

std::vector<double> box_lo_full(const SupportSpec& s) {
    auto lo = std::get<Box>(s.shape).lo;
    lo.insert(lo.end(), s.fixed_tail.begin(), s.fixed_tail.end());
    return lo;
}
std::vector<double> box_hi_full(const SupportSpec& s) {
    auto hi = std::get<Box>(s.shape).hi;
    hi.insert(hi.end(), s.fixed_tail.begin(), s.fixed_tail.end());
    return hi;
}

double sine_box_gap(const SupportSpec& sine_support, const SupportSpec& box_support) {
    const auto& s = std::get<SineSegment>(sine_support.shape);
    const auto lo = box_lo_full(box_support);
    const auto hi = box_hi_full(box_support);
    double tail = 0.0;
    for (std::size_t k = 2; k < lo.size(); ++k) {
        const double t = sine_support.fixed_tail[k - 2];
        const double g = clamp_gap(t, lo[k], hi[k]);
        tail += g * g;
    }
    auto f = [&](double t) {
        const auto [y0, y1] = band_at(s, t);
        const double gx = clamp_gap(t, lo[0], hi[0]);
        const double gy = interval_gap(y0, y1, lo[1], hi[1]);
        return std::sqrt(gx * gx + gy * gy + tail);
    };
    return minimize_1d(f, s.t_min, s.t_max);
}

void check_declared_gap(const MixtureModel& model) {
    validate(model);
    // dense-mesh cross check of the separation assumption
    for (std::size_t i = 0; i < model.supports.size(); ++i) {
        for (std::size_t j = i + 1; j < model.supports.size(); ++j) {
            const auto& a = model.supports[i];
            const auto& b = model.supports[j];
            double gap = kInf;
            for (const auto& p : boundary_mesh(a, 64)) {
                gap = std::min(gap, distance_to(b, p));
            }
            for (const auto& p : boundary_mesh(b, 64)) {
                gap = std::min(gap, distance_to(a, p));
            }
            if (gap < model.delta - 1e-6) {
                throw std::logic_error("model '" + model.name + "' violates its declared separation");
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t shape_dim(const SupportShape& shape) {
    return std::visit(Overloaded{
                          [](const Box& b) { return b.lo.size(); },
                          [](const Annulus&) { return std::size_t{2}; },
                          [](const SineSegment&) { return std::size_t{2}; },
                          [](const PointMass& p) { return p.location.size(); },
                          [](const Interval&) { return std::size_t{1}; },
                      },
                      shape);
}

std::size_t SupportSpec::dim() const { return shape_dim(shape) + fixed_tail.size(); }

std::size_t OutlierSpec::dim() const {
    const std::size_t base = std::visit(Overloaded{
                                            [](const UniformBoxOutliers& b) { return b.lo.size(); },
                                            [](const UniformAnnulusOutliers&) { return std::size_t{2}; },
                                            [](const GaussianOutliers&) { return std::size_t{2}; },
                                        },
                                        shape);
    return base + fixed_tail.size();
}

bool contains(const SupportSpec& support, std::span<const double> x) {
    if (x.size() != support.dim()) {
        throw InvalidInput("point dimension " + std::to_string(x.size()) + " does not match support dimension " +
                           std::to_string(support.dim()));
    }
    const std::size_t base = shape_dim(support.shape);
    for (std::size_t k = 0; k < support.fixed_tail.size(); ++k) {
        if (x[base + k] != support.fixed_tail[k]) {
            return false;
        }
    }
    return std::visit(Overloaded{
                          [&](const Box& b) {
                              for (std::size_t k = 0; k < base; ++k) {
                                  if (x[k] < b.lo[k] || x[k] > b.hi[k]) {
                                      return false;
                                  }
                              }
                              return true;
                          },
                          [&](const Annulus& a) {
                              const double r = std::hypot(x[0] - a.center[0], x[1] - a.center[1]);
                              return r >= a.inner && r <= a.outer;
                          },
                          [&](const SineSegment& s) {
                              if (x[0] < s.t_min || x[0] > s.t_max) {
                                  return false;
                              }
                              return std::abs(x[1] - s.amplitude * std::sin(x[0])) <= s.thickness / 2.0;
                          },
                          [&](const PointMass& p) {
                              return std::equal(p.location.begin(), p.location.end(), x.begin());
                          },
                          [&](const Interval& iv) { return x[0] >= iv.lo && x[0] <= iv.hi; },
                      },
                      support.shape);
}

double distance_to(const SupportSpec& support, std::span<const double> x) {
    if (x.size() != support.dim()) {
        throw InvalidInput("point dimension does not match support dimension");
    }
    const std::size_t base = shape_dim(support.shape);
    const double tail = tail_sq(x, base, support.fixed_tail);
    const double head = std::visit(Overloaded{
                                       [&](const Box& b) {
                                           double acc = 0.0;
                                           for (std::size_t k = 0; k < base; ++k) {
                                               const double g = clamp_gap(x[k], b.lo[k], b.hi[k]);
                                               acc += g * g;
                                           }
                                           return acc;
                                       },
                                       [&](const Annulus& a) {
                                           const double r = std::hypot(x[0] - a.center[0], x[1] - a.center[1]);
                                           const double g = clamp_gap(r, a.inner, a.outer);
                                           return g * g;
                                       },
                                       [&](const SineSegment& s) {
                                           auto f = [&](double t) {
                                               const auto [y0, y1] = band_at(s, t);
                                               const double gx = x[0] - t;
                                               const double gy = clamp_gap(x[1], y0, y1);
                                               return gx * gx + gy * gy;
                                           };
                                           return minimize_1d(f, s.t_min, s.t_max, 1024);
                                       },
                                       [&](const PointMass& p) {
                                           double acc = 0.0;
                                           for (std::size_t k = 0; k < base; ++k) {
                                               const double d = x[k] - p.location[k];
                                               acc += d * d;
                                           }
                                           return acc;
                                       },
                                       [&](const Interval& iv) {
                                           const double g = clamp_gap(x[0], iv.lo, iv.hi);
                                           return g * g;
                                       },
                                   },
                                   support.shape);
    return std::sqrt(head + tail);
}

double support_gap(const SupportSpec& a, const SupportSpec& b) {
    if (a.dim() != b.dim()) {
        throw InvalidInput("supports live in different dimensions");
    }
    const bool a_box = std::holds_alternative<Box>(a.shape);
    const bool b_box = std::holds_alternative<Box>(b.shape);
    if (a_box && b_box) {
        const auto alo = box_lo_full(a), ahi = box_hi_full(a);
        const auto blo = box_lo_full(b), bhi = box_hi_full(b);
        double acc = 0.0;
        for (std::size_t k = 0; k < alo.size(); ++k) {
            const double g = interval_gap(alo[k], ahi[k], blo[k], bhi[k]);
            acc += g * g;
        }
        return std::sqrt(acc);
    }
    if (std::holds_alternative<SineSegment>(a.shape) && b_box) {
        return sine_box_gap(a, b);
    }
    if (a_box && std::holds_alternative<SineSegment>(b.shape)) {
        return sine_box_gap(b, a);
    }
    if (const auto* pa = std::get_if<PointMass>(&a.shape)) {
        std::vector<double> x = pa->location;
        x.insert(x.end(), a.fixed_tail.begin(), a.fixed_tail.end());
        return distance_to(b, x);
    }
    if (const auto* pb = std::get_if<PointMass>(&b.shape)) {
        std::vector<double> x = pb->location;
        x.insert(x.end(), b.fixed_tail.begin(), b.fixed_tail.end());
        return distance_to(a, x);
    }
    const auto* ia = std::get_if<Interval>(&a.shape);
    const auto* ib = std::get_if<Interval>(&b.shape);
    if (ia && ib) {
        return interval_gap(ia->lo, ia->hi, ib->lo, ib->hi);
    }
    const auto* ra = std::get_if<Annulus>(&a.shape);
    const auto* rb = std::get_if<Annulus>(&b.shape);
    if (ra && rb && ra->center == rb->center && a.fixed_tail == b.fixed_tail) {
        return interval_gap(ra->inner, ra->outer, rb->inner, rb->outer);
    }
    double gap = kInf;
    for (const auto& p : boundary_mesh(a, 256)) {
        gap = std::min(gap, distance_to(b, p));
    }
    for (const auto& p : boundary_mesh(b, 256)) {
        gap = std::min(gap, distance_to(a, p));
    }
    return gap;
}

// ---------------------------------------------------------------------------

void validate(const MixtureModel& model) {
    if (!(model.epsilon >= 0.0 && model.epsilon < 1.0)) {
        throw InvalidInput("outlier proportion must lie in [0, 1)");
    }
    if (model.supports.empty() || model.weights.size() != model.supports.size()) {
        throw InvalidInput("need one positive weight per group support");
    }
    double total = 0.0;
    for (double w : model.weights) {
        if (!(w > 0.0)) {
            throw InvalidInput("group weights must be positive");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidInput("group weights must sum to 1");
    }
    if (model.ambient_dim == 0) {
        throw InvalidInput("ambient dimension must be positive");
    }
    for (const auto& s : model.supports) {
        if (s.dim() != model.ambient_dim) {
            throw InvalidInput("support dimension does not match the ambient dimension");
        }
        if (const auto* b = std::get_if<Box>(&s.shape); b && b->lo.size() != b->hi.size()) {
            throw InvalidInput("box bounds have different lengths");
        }
    }
    if (model.outliers.dim() != model.ambient_dim) {
        throw InvalidInput("outlier dimension does not match the ambient dimension");
    }
    if (const auto* b = std::get_if<UniformBoxOutliers>(&model.outliers.shape); b && b->lo.size() != b->hi.size()) {
        throw InvalidInput("outlier box bounds have different lengths");
    }
    if (const auto* g = std::get_if<GaussianOutliers>(&model.outliers.shape)) {
        if (!(g->var_x > 0.0 && g->var_y > 0.0 && g->rho >= -1.0 && g->rho <= 1.0)) {
            throw InvalidInput("Gaussian outliers need positive variances and |rho| <= 1");
        }
    }
}

double min_support_gap(const MixtureModel& model) {
    double gap = kInf;
    for (std::size_t i = 0; i < model.supports.size(); ++i) {
        for (std::size_t j = i + 1; j < model.supports.size(); ++j) {
            gap = std::min(gap, support_gap(model.supports[i], model.supports[j]));
        }
    }
    return gap;
}

std::array<double, 2> gaussian_proposal(const GaussianOutliers& g, Philox& rng) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    const double sx = std::sqrt(g.var_x);
    const double sy = std::sqrt(g.var_y);
    // Cholesky factor of [[sx^2, rho sx sy], [rho sx sy, sy^2]]; for |rho| = 1
    // the second column vanishes and draws fall on the principal axis.
    const double orth = std::sqrt(std::max(0.0, 1.0 - g.rho * g.rho));
    return {g.mean[0] + sx * z1, g.mean[1] + sy * (g.rho * z1 + orth * z2)};
}

namespace {

void draw_support(const SupportSpec& s, Philox& rng, std::vector<double>& out) {
    std::visit(Overloaded{
                   [&](const Box& b) {
                       for (std::size_t k = 0; k < b.lo.size(); ++k) {
                           out.push_back(b.lo[k] == b.hi[k] ? b.lo[k] : rng.uniform(b.lo[k], b.hi[k]));
                       }
                   },
                   [&](const Annulus& a) {
                       const double u = rng.uniform01();
                       const double r = std::sqrt(a.inner * a.inner + u * (a.outer * a.outer - a.inner * a.inner));
                       const double th = 2.0 * kPi * rng.uniform01();
                       out.push_back(a.center[0] + r * std::cos(th));
                       out.push_back(a.center[1] + r * std::sin(th));
                   },
                   [&](const SineSegment& s) {
                       double t;
                       if (s.thickness == 0.0) {
                           // arc-length density sqrt(1 + A^2 cos^2 t), by rejection
                           const double bound = std::sqrt(1.0 + s.amplitude * s.amplitude);
                           do {
                               t = rng.uniform(s.t_min, s.t_max);
                           } while (rng.uniform01() * bound > std::hypot(1.0, s.amplitude * std::cos(t)));
                           out.push_back(t);
                           out.push_back(s.amplitude * std::sin(t));
                       } else {
                           t = rng.uniform(s.t_min, s.t_max);
                           out.push_back(t);
                           out.push_back(s.amplitude * std::sin(t) + s.thickness * (rng.uniform01() - 0.5));
                       }
                   },
                   [&](const PointMass& p) { out.insert(out.end(), p.location.begin(), p.location.end()); },
                   [&](const Interval& iv) { out.push_back(rng.uniform(iv.lo, iv.hi)); },
               },
               s.shape);
    out.insert(out.end(), s.fixed_tail.begin(), s.fixed_tail.end());
}

void draw_outlier_proposal(const OutlierSpec& o, Philox& rng, std::vector<double>& out) {
    std::visit(Overloaded{
                   [&](const UniformBoxOutliers& b) {
                       for (std::size_t k = 0; k < b.lo.size(); ++k) {
                           out.push_back(rng.uniform(b.lo[k], b.hi[k]));
                       }
                   },
                   [&](const UniformAnnulusOutliers& a) {
                       const double u = rng.uniform01();
                       const double r = std::sqrt(a.inner * a.inner + u * (a.outer * a.outer - a.inner * a.inner));
                       const double th = 2.0 * kPi * rng.uniform01();
                       out.push_back(a.center[0] + r * std::cos(th));
                       out.push_back(a.center[1] + r * std::sin(th));
                   },
                   [&](const GaussianOutliers& g) {
                       const auto p = gaussian_proposal(g, rng);
                       out.push_back(p[0]);
                       out.push_back(p[1]);
                   },
               },
               o.shape);
    out.insert(out.end(), o.fixed_tail.begin(), o.fixed_tail.end());
}

}  // namespace

LabeledSample sample(const MixtureModel& model, std::size_t n, Philox& rng) {
    validate(model);
    if (n == 0) {
        throw InvalidInput("sample size must be positive");
    }
    const std::size_t dim = model.ambient_dim;
    std::vector<double> cumulative(model.weights.size());
    std::partial_sum(model.weights.begin(), model.weights.end(), cumulative.begin());

    std::vector<double> coords;
    coords.reserve(n * dim);
    std::vector<std::size_t> truth(n);
    std::vector<double> point;
    point.reserve(dim);

    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        point.clear();
        if (u < model.epsilon) {
            truth[i] = 0;
            std::size_t attempts = 0;
            while (true) {
                if (++attempts > kMaxRejections) {
                    throw DegenerateModel("outlier rejection sampling exceeded " + std::to_string(kMaxRejections) +
                                          " proposals; supports nearly fill the outlier region");
                }
                point.clear();
                draw_outlier_proposal(model.outliers, rng, point);
                const bool inside = std::any_of(model.supports.begin(), model.supports.end(),
                                                [&](const SupportSpec& s) { return contains(s, point); });
                if (!inside) {
                    break;
                }
            }
        } else {
            const double v = (u - model.epsilon) / (1.0 - model.epsilon);
            std::size_t g = 0;
            while (g + 1 < cumulative.size() && v >= cumulative[g]) {
                ++g;
            }
            truth[i] = g + 1;
            draw_support(model.supports[g], rng, point);
        }
        coords.insert(coords.end(), point.begin(), point.end());
    }
    return {PointSet{dim, std::move(coords)}, std::move(truth)};
}

LabeledSample sample(const MixtureModel& model, std::size_t n, std::uint64_t seed) {
    Philox rng{seed};
    return sample(model, n, rng);
}

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

DeltaCase parse_delta_case(const std::string& s) {
    if (s == "easy") {
        return DeltaCase::easy;
    }
    if (s == "tricky") {
        return DeltaCase::tricky;
    }
    throw InvalidInput("unknown delta case '" + s + "' (expected easy or tricky)");
}

std::string to_string(DeltaCase c) { return c == DeltaCase::easy ? "easy" : "tricky"; }

namespace {

constexpr double kSquareSide = 0.1;

}  // namespace

MixtureModel squares_model(DeltaCase c, double epsilon) {
    const double delta = c == DeltaCase::easy ? 0.35 : 0.07;
    MixtureModel m;
    m.name = "squares";
    m.epsilon = epsilon;
    m.ambient_dim = 2;
    m.delta = delta;
    m.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    // row of squares centered in the unit box
    const double width = 3.0 * kSquareSide + 2.0 * delta;
    const double x0 = 0.5 - width / 2.0;
    const double y0 = 0.5 - kSquareSide / 2.0;
    for (int k = 0; k < 3; ++k) {
        const double left = x0 + k * (kSquareSide + delta);
        m.supports.push_back({Box{{left, y0}, {left + kSquareSide, y0 + kSquareSide}}, {}});
    }
    m.outliers = {UniformBoxOutliers{{0.0, 0.0}, {1.0, 1.0}}, {}};
    check_declared_gap(m);
    return m;
}

MixtureModel circles_model(DeltaCase c, double epsilon) {
    const double delta = c == DeltaCase::easy ? 2.6 : 1.6;
    MixtureModel m;
    m.name = "circles";
    m.epsilon = epsilon;
    m.ambient_dim = 2;
    m.delta = delta;
    m.weights = {0.4, 0.6};
    m.supports.push_back({Annulus{{0.0, 0.0}, 1.0, 2.0}, {}});
    m.supports.push_back({Annulus{{0.0, 0.0}, 2.0 + delta, 3.0 + delta}, {}});
    m.outliers = {UniformAnnulusOutliers{{0.0, 0.0}, 2.0, 2.0 + delta}, {}};
    check_declared_gap(m);
    return m;
}

namespace {

constexpr double kSineSquareSide = 1.75;

// Square under the first arch of sin on [0, 2 pi], lowered until its
// distance to the curve equals delta, plus its mirror image through (pi, 0).
std::vector<SupportSpec> sine_supports(double delta, std::size_t ambient_dim) {
    const std::vector<double> tail(ambient_dim - 2, kPi);
    const SupportSpec curve{SineSegment{0.0, 2.0 * kPi, 1.0, 0.0}, tail};
    const double cx = kPi / 2.0;
    const double side = kSineSquareSide;
    auto lower_square = [&](double top) {
        return SupportSpec{Box{{cx - side / 2, top - side}, {cx + side / 2, top}}, tail};
    };
    double hi = 1.0;    // square touches the arch
    double lo = -10.0;  // far below
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (support_gap(curve, lower_square(mid)) > delta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double top = 0.5 * (lo + hi);
    const SupportSpec upper{Box{{2.0 * kPi - cx - side / 2, -top}, {2.0 * kPi - cx + side / 2, side - top}}, tail};
    return {curve, lower_square(top), upper};
}

MixtureModel sine_base(DeltaCase c, double epsilon, std::size_t ambient_dim) {
    const double delta = c == DeltaCase::easy ? 1.18 : 0.76;
    MixtureModel m;
    m.name = "sine";
    m.epsilon = epsilon;
    m.ambient_dim = ambient_dim;
    m.delta = delta;
    m.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    m.supports = sine_supports(delta, ambient_dim);
    // outliers fill the bounding box of the three supports
    const double yb = std::get<Box>(m.supports[2].shape).hi[1];
    UniformBoxOutliers box{{0.0, -yb}, {2.0 * kPi, yb}};
    for (std::size_t k = 2; k < ambient_dim; ++k) {
        box.lo.push_back(0.0);
        box.hi.push_back(2.0 * kPi);
    }
    m.outliers = {box, {}};
    return m;
}

}  // namespace

MixtureModel sine_model(DeltaCase c, double epsilon) {
    auto m = sine_base(c, epsilon, 2);
    check_declared_gap(m);
    return m;
}

MixtureModel sine_highdim_model(std::size_t ambient_dim, double epsilon) {
    if (ambient_dim < 2) {
        throw InvalidInput("the sine model needs at least two dimensions");
    }
    auto m = sine_base(DeltaCase::tricky, epsilon, ambient_dim);
    m.name = "sine_highdim";
    check_declared_gap(m);
    return m;
}

MixtureModel gaussian_noise_sine_model(double sigma2, double rho, double epsilon) {
    if (!(sigma2 > 0.0)) {
        throw InvalidInput("sigma2 must be positive");
    }
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw InvalidInput("rho must lie in [-1, 1]");
    }
    auto m = sine_base(DeltaCase::tricky, epsilon, 2);
    m.name = "gaussian_sine";
    m.outliers = {GaussianOutliers{{kPi, 0.0}, 2.0 * sigma2, sigma2, rho}, {}};
    check_declared_gap(m);
    return m;
}

MixtureModel example2_model(double epsilon) {
    MixtureModel m;
    m.name = "example2";
    m.epsilon = epsilon;
    m.ambient_dim = 1;
    m.delta = 2.0;
    m.weights = {0.5, 0.5};
    m.supports.push_back({PointMass{{-1.0}}, {}});
    m.supports.push_back({PointMass{{1.0}}, {}});
    m.outliers = {UniformBoxOutliers{{-3.0}, {3.0}}, {}};
    validate(m);
    return m;
}

MixtureModel scenario_model(const std::string& name, const ScenarioParams& p) {
    if (name == "squares") {
        return squares_model(p.delta_case, p.epsilon);
    }
    if (name == "circles") {
        return circles_model(p.delta_case, p.epsilon);
    }
    if (name == "sine") {
        return sine_model(p.delta_case, p.epsilon);
    }
    if (name == "sine_highdim") {
        return sine_highdim_model(p.ambient_dim, p.epsilon);
    }
    if (name == "gaussian_sine") {
        return gaussian_noise_sine_model(p.sigma2, p.rho, p.epsilon);
    }
    if (name == "example2") {
        return example2_model(p.epsilon);
    }
    throw InvalidInput("unknown scenario '" + name + "'");
}

}  // namespace osl

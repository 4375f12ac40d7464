#ifndef STEKLOV_GEOMETRY_HPP
#define STEKLOV_GEOMETRY_HPP

/**
 * @file geometry.hpp
 * @brief Planar star-shaped bodies described by a truncated Fourier radial
 * function, and the integral-geometric quantities built on it.
 *
 * The boundary is p(theta) = rho(theta) (cos theta, sin theta). Every
 * integral over the boundary uses the uniform trapezoidal rule on the body's
 * M-point theta grid, which is spectrally accurate for the smooth periodic
 * integrands involved.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace steklov {

using Point2 = Eigen::Vector2d;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Value and first two angular derivatives of a radial function.
struct RadialSample {
    double rho = 0.0;
    double drho = 0.0;
    double d2rho = 0.0;
};

namespace detail {

inline bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

// Sum of a0 + sum_k (c_k cos k t + s_k sin k t) and two derivatives, using the
// angle-addition recurrence for cos k t, sin k t.
inline RadialSample eval_series(double a0, std::span<const double> c, std::span<const double> s, double t) {
    RadialSample out{a0, 0.0, 0.0};
    const double c1 = std::cos(t);
    const double s1 = std::sin(t);
    double ck = 1.0;
    double sk = 0.0;
    const std::size_t order = std::max(c.size(), s.size());
    for (std::size_t j = 0; j < order; ++j) {
        const double next_c = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = next_c;
        const double k = static_cast<double>(j + 1);
        const double a = j < c.size() ? c[j] : 0.0;
        const double b = j < s.size() ? s[j] : 0.0;
        out.rho += a * ck + b * sk;
        out.drho += k * (b * ck - a * sk);
        out.d2rho -= k * k * (a * ck + b * sk);
    }
    return out;
}

struct FourierCoefficients {
    double a0 = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
};

// Real DFT of uniform samples on [0, 2 pi), truncated at `order`.
inline FourierCoefficients fourier_analyze(std::span<const double> samples, int order) {
    const auto L = static_cast<int>(samples.size());
    FourierCoefficients out;
    out.cos_coeffs.assign(static_cast<std::size_t>(order), 0.0);
    out.sin_coeffs.assign(static_cast<std::size_t>(order), 0.0);
    double sum = 0.0;
    for (double v : samples) sum += v;
    out.a0 = sum / L;
    for (int i = 0; i < L; ++i) {
        const double t = two_pi * i / L;
        const double c1 = std::cos(t);
        const double s1 = std::sin(t);
        double ck = 1.0;
        double sk = 0.0;
        for (int k = 0; k < order; ++k) {
            const double next_c = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = next_c;
            out.cos_coeffs[k] += samples[i] * ck;
            out.sin_coeffs[k] += samples[i] * sk;
        }
    }
    for (int k = 0; k < order; ++k) {
        out.cos_coeffs[k] *= 2.0 / L;
        out.sin_coeffs[k] *= 2.0 / L;
    }
    return out;
}

}  // namespace detail

/**
 * @brief Body star-shaped about the origin with radial function
 * rho(theta) = a0 + sum_{k>=1} (c_k cos k theta + s_k sin k theta).
 *
 * Immutable. Samples of rho, rho', rho'' on the uniform M-point grid are
 * cached at construction. Positivity of rho is enforced; convexity is
 * reported by is_convex() so that non-convex star bodies can still be solved.
 */
class StarBody2D {
public:
    StarBody2D(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs, int M)
        : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)), M_(M) {
        if (!detail::is_power_of_two(M_) || M_ < 64) {
            throw std::invalid_argument("StarBody2D: quadrature size M must be a power of two >= 64, got " +
                                        std::to_string(M_));
        }
        const std::size_t order = std::max(cos_.size(), sin_.size());
        cos_.resize(order, 0.0);
        sin_.resize(order, 0.0);
        if (!std::isfinite(a0_) || std::any_of(cos_.begin(), cos_.end(), [](double v) { return !std::isfinite(v); }) ||
            std::any_of(sin_.begin(), sin_.end(), [](double v) { return !std::isfinite(v); })) {
            throw std::invalid_argument("StarBody2D: non-finite Fourier coefficient");
        }
        samples_.reserve(static_cast<std::size_t>(M_));
        for (int i = 0; i < M_; ++i) {
            samples_.push_back(detail::eval_series(a0_, cos_, sin_, theta(i)));
        }
        const auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end(),
                                                  [](const auto& a, const auto& b) { return a.rho < b.rho; });
        min_rho_ = lo->rho;
        max_rho_ = hi->rho;
        if (!(min_rho_ > 0.0)) {
            throw std::invalid_argument("StarBody2D: radial function must be positive (min rho = " +
                                        std::to_string(min_rho_) + ")");
        }
        double margin = std::numeric_limits<double>::infinity();
        for (const auto& r : samples_) {
            margin = std::min(margin, r.rho * r.rho + 2.0 * r.drho * r.drho - r.rho * r.d2rho);
        }
        curvature_margin_ = margin / (max_rho_ * max_rho_);
    }

    static StarBody2D circle(double radius, int M = 512) {
        return StarBody2D(radius, {}, {}, M);
    }

    double a0() const { return a0_; }
    std::span<const double> cos_coeffs() const { return cos_; }
    std::span<const double> sin_coeffs() const { return sin_; }
    int order() const { return static_cast<int>(cos_.size()); }
    int quadrature_size() const { return M_; }

    double theta(int i) const { return two_pi * i / M_; }
    double weight() const { return two_pi / M_; }
    std::span<const RadialSample> samples() const { return samples_; }

    RadialSample eval(double t) const { return detail::eval_series(a0_, cos_, sin_, t); }

    Point2 point(int i) const {
        const double t = theta(i);
        return samples_[i].rho * Point2(std::cos(t), std::sin(t));
    }

    double min_radius() const { return min_rho_; }
    double max_radius() const { return max_rho_; }

    /// min over the grid of (rho^2 + 2 rho'^2 - rho rho''), divided by max rho^2.
    double curvature_margin() const { return curvature_margin_; }
    bool is_convex(double tol = 1e-9) const { return curvature_margin_ >= -tol; }

    StarBody2D scaled(double t) const {
        std::vector<double> c(cos_), s(sin_);
        for (auto& v : c) v *= t;
        for (auto& v : s) v *= t;
        return StarBody2D(a0_ * t, std::move(c), std::move(s), M_);
    }

    StarBody2D with_quadrature(int M) const { return StarBody2D(a0_, cos_, sin_, M); }

    StarBody2D truncated(int order) const {
        const auto k = static_cast<std::size_t>(std::clamp(order, 0, this->order()));
        return StarBody2D(a0_, std::vector<double>(cos_.begin(), cos_.begin() + k),
                          std::vector<double>(sin_.begin(), sin_.begin() + k), M_);
    }

private:
    double a0_;
    std::vector<double> cos_;
    std::vector<double> sin_;
    int M_;
    std::vector<RadialSample> samples_;
    double min_rho_ = 0.0;
    double max_rho_ = 0.0;
    double curvature_margin_ = 0.0;
};

/// Annular domain: outer body minus the closed disk of radius R1.
struct AnnularDomain2D {
    AnnularDomain2D(double r1, StarBody2D body) : R1(r1), outer(std::move(body)) {
        if (!(R1 > 0.0)) throw std::invalid_argument("AnnularDomain2D: R1 must be positive");
        if (!(outer.min_radius() > R1)) {
            throw std::invalid_argument("AnnularDomain2D: inner disk must lie strictly inside the outer body (min rho = " +
                                        std::to_string(outer.min_radius()) + ", R1 = " + std::to_string(R1) + ")");
        }
    }

    AnnularDomain2D scaled(double t) const { return AnnularDomain2D(R1 * t, outer.scaled(t)); }

    double R1;
    StarBody2D outer;
};

inline RadialSample eval_rho(const StarBody2D& body, double theta) { return body.eval(theta); }

/// Fourier interpolation of an arbitrary positive radial function on M points (order M/2 - 1).
inline StarBody2D body_from_radial(const std::function<double(double)>& rho, int M) {
    if (!detail::is_power_of_two(M) || M < 64) {
        throw std::invalid_argument("body_from_radial: M must be a power of two >= 64");
    }
    std::vector<double> samples(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) samples[i] = rho(two_pi * i / M);
    auto fc = detail::fourier_analyze(samples, M / 2 - 1);
    return StarBody2D(fc.a0, std::move(fc.cos_coeffs), std::move(fc.sin_coeffs), M);
}

/// Ellipse with semi-axis a along x and b along y, centered at the origin.
inline StarBody2D body_from_ellipse(double a, double b, int M = 512) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("body_from_ellipse: semi-axes must be positive");
    }
    if (a == b) return StarBody2D::circle(a, M);
    return body_from_radial(
        [a, b](double t) {
            const double c = std::cos(t);
            const double s = std::sin(t);
            return a * b / std::sqrt(b * b * c * c + a * a * s * s);
        },
        M);
}

/// Disk of radius R centered at `center`; the origin must be interior.
inline StarBody2D body_from_offset_disk(const Point2& center, double R, int M = 512) {
    if (!(center.norm() < R)) {
        throw std::invalid_argument("body_from_offset_disk: origin must be interior to the disk");
    }
    return body_from_radial(
        [center, R](double t) {
            const double proj = center.x() * std::cos(t) + center.y() * std::sin(t);
            return proj + std::sqrt(R * R - center.squaredNorm() + proj * proj);
        },
        M);
}

/// Controls for turning a support function with corners into a smooth body.
struct SmoothingOptions {
    double heat = 0.05;      ///< support coefficients damped by exp(-heat k^2)
    double rounding = 0.0;   ///< Minkowski disk radius, relative to max support value
};

/**
 * @brief Smooth convex body from support-function samples h(phi) on a uniform grid.
 *
 * Damps the Fourier coefficients of h (convolution with the periodic heat
 * kernel, which keeps h + h'' nonnegative), adds a rounding disk, then
 * resamples the boundary x(phi) = h u + h' u_perp as a radial function on the
 * M-point theta grid and truncates the series at order M/8.
 */
inline StarBody2D body_from_support_samples(std::span<const double> support, int M, const SmoothingOptions& opts) {
    if (!detail::is_power_of_two(M) || M < 64) {
        throw std::invalid_argument("body_from_support_samples: M must be a power of two >= 64");
    }
    const int order = M / 8;
    auto h = detail::fourier_analyze(support, order);
    if (!(h.a0 > 0.0)) throw std::invalid_argument("body_from_support_samples: nonpositive support function");
    const double hmax = *std::max_element(support.begin(), support.end());
    for (int k = 0; k < order; ++k) {
        const double damp = std::exp(-opts.heat * (k + 1.0) * (k + 1.0));
        h.cos_coeffs[k] *= damp;
        h.sin_coeffs[k] *= damp;
    }
    h.a0 += opts.rounding * hmax;

    // polar angle of x(phi) is phi + atan(h'/h), increasing for a convex body
    std::vector<double> rho(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        const double target = two_pi * i / M;
        double lo = target - 0.5 * std::numbers::pi;
        double hi = target + 0.5 * std::numbers::pi;
        RadialSample hs{};
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            hs = detail::eval_series(h.a0, h.cos_coeffs, h.sin_coeffs, mid);
            if (!(hs.rho > 0.0)) throw std::invalid_argument("body_from_support_samples: origin not interior");
            const double g = mid + std::atan(hs.drho / hs.rho) - target;
            (g < 0.0 ? lo : hi) = mid;
        }
        hs = detail::eval_series(h.a0, h.cos_coeffs, h.sin_coeffs, 0.5 * (lo + hi));
        rho[i] = std::hypot(hs.rho, hs.drho);
    }
    auto fc = detail::fourier_analyze(rho, order);
    return StarBody2D(fc.a0, std::move(fc.cos_coeffs), std::move(fc.sin_coeffs), M);
}

namespace detail {

inline std::vector<double> hull_support_samples(std::span<const Point2> points, double disk_radius, int L) {
    std::vector<double> h(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) {
        const double t = two_pi * i / L;
        const Point2 u(std::cos(t), std::sin(t));
        double best = disk_radius;
        for (const auto& p : points) best = std::max(best, p.dot(u));
        h[i] = best;
    }
    return h;
}

}  // namespace detail

/// Smoothed convex hull of a point set whose interior contains the origin.
inline StarBody2D body_from_hull(std::span<const Point2> points, int M = 512,
                                 const SmoothingOptions& opts = SmoothingOptions{}) {
    if (points.size() < 3) throw std::invalid_argument("body_from_hull: need at least three points");
    const auto h = detail::hull_support_samples(points, 0.0, 8 * M);
    if (!(*std::min_element(h.begin(), h.end()) > 0.0)) {
        throw std::invalid_argument("body_from_hull: origin must lie in the interior of the hull");
    }
    return body_from_support_samples(h, M, opts);
}

/// Area (1/2) int rho^2 dtheta.
inline double volume(const StarBody2D& body) {
    double sum = 0.0;
    for (const auto& r : body.samples()) sum += r.rho * r.rho;
    return 0.5 * sum * body.weight();
}

inline double annulus_volume(const AnnularDomain2D& domain) {
    return volume(domain.outer) - std::numbers::pi * domain.R1 * domain.R1;
}

/// Length of the boundary, int sqrt(rho^2 + rho'^2) dtheta.
inline double perimeter(const StarBody2D& body) {
    double sum = 0.0;
    for (const auto& r : body.samples()) sum += std::hypot(r.rho, r.drho);
    return sum * body.weight();
}

/// Closed-form perimeter estimate 2 pi sqrt((a^2 + b^2)/2); overestimates the ellipse perimeter.
inline double perimeter_approx_formula(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("perimeter_approx_formula: axes must be positive");
    return two_pi * std::sqrt(0.5 * (a * a + b * b));
}

/// Outward unit normal at p(theta): (rho u - rho' u_perp) / sqrt(rho^2 + rho'^2).
inline Point2 outward_normal(const RadialSample& r, double theta) {
    const Point2 u(std::cos(theta), std::sin(theta));
    const Point2 u_perp(-u.y(), u.x());
    return (r.rho * u - r.drho * u_perp) / std::hypot(r.rho, r.drho);
}

/// Support value in the direction of the outward normal at p(theta): rho^2 / sqrt(rho^2 + rho'^2).
inline double support_function(const StarBody2D& body, double theta) {
    const auto r = body.eval(theta);
    return r.rho * r.rho / std::hypot(r.rho, r.drho);
}

/// Support function h(u) = max_{x in body} x . u in the direction of angle phi.
inline double support_in_direction(const StarBody2D& body, double phi) {
    const Point2 u(std::cos(phi), std::sin(phi));
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < body.quadrature_size(); ++i) {
        const double v = body.point(i).dot(u);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    // Newton on g(t) = p(t) . u from the best sample
    double t = body.theta(best);
    const double step = body.weight();
    for (int it = 0; it < 30; ++it) {
        const auto r = body.eval(t);
        const Point2 e(std::cos(t), std::sin(t));
        const Point2 e_perp(-e.y(), e.x());
        const double g1 = (r.drho * e + r.rho * e_perp).dot(u);
        const double g2 = ((r.d2rho - r.rho) * e + 2.0 * r.drho * e_perp).dot(u);
        if (!(g2 < 0.0)) break;
        const double dt = std::clamp(-g1 / g2, -step, step);
        t += dt;
        if (std::abs(dt) < 1e-15) break;
    }
    const auto r = body.eval(t);
    return std::max(best_val, r.rho * (std::cos(t) * u.x() + std::sin(t) * u.y()));
}

/// Origin-anchored inradius bound: min over the grid of the normal support value.
inline double inradius_origin(const StarBody2D& body) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : body.samples()) best = std::min(best, r.rho * r.rho / std::hypot(r.rho, r.drho));
    return best;
}

inline double diameter(const StarBody2D& body) {
    const int M = body.quadrature_size();
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) pts.push_back(body.point(i));
    double best = 0.0;
    for (int i = 0; i < M; ++i) {
        for (int j = i + 1; j < M; ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
    }
    return std::sqrt(best);
}

/// Hausdorff distance of two convex bodies as the sup-norm gap of their support functions.
inline double hausdorff_distance(const StarBody2D& a, const StarBody2D& b) {
    const int directions = std::max(a.quadrature_size(), b.quadrature_size());
    double best = 0.0;
    for (int i = 0; i < directions; ++i) {
        const double phi = two_pi * i / directions;
        best = std::max(best, std::abs(support_in_direction(a, phi) - support_in_direction(b, phi)));
    }
    return best;
}

/// int over the boundary of f ds, via the radial map: int f(p(theta)) sqrt(rho^2 + rho'^2) dtheta.
template <class F>
double boundary_integral(const StarBody2D& body, F&& f) {
    double sum = 0.0;
    for (int i = 0; i < body.quadrature_size(); ++i) {
        const auto& r = body.samples()[i];
        sum += f(body.point(i)) * std::hypot(r.rho, r.drho);
    }
    return sum * body.weight();
}

/// Failure to produce an admissible random body within the retry budget.
class InfeasibleBody : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Deterministic random convex body with R1 < rho <= Rmax.
 *
 * Smoothed hull of the disk of radius 1.05 R1 and 3..8 points drawn uniformly
 * in the disk of radius Rmax, rescaled into B(Rmax). Candidates failing the
 * convexity or containment checks are redrawn from the same stream.
 */
inline StarBody2D random_convex_body(std::uint64_t seed, double R1, double Rmax, int M = 512) {
    if (!(R1 > 0.0) || !(Rmax > R1)) throw std::invalid_argument("random_convex_body: need Rmax > R1 > 0");
    constexpr double inner_margin = 0.05;
    constexpr int max_attempts = 32;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> count(3, 8);
    const SmoothingOptions opts{0.05, 0.05};
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const int npts = count(rng);
        std::vector<Point2> pts;
        for (int i = 0; i < npts; ++i) {
            const double r = Rmax * std::sqrt(unit(rng));
            const double t = two_pi * unit(rng);
            pts.emplace_back(r * std::cos(t), r * std::sin(t));
        }
        const auto h = detail::hull_support_samples(pts, R1 * (1.0 + inner_margin), 8 * M);
        StarBody2D body = body_from_support_samples(h, M, opts);
        if (body.max_radius() > Rmax) body = body.scaled(Rmax / body.max_radius() * (1.0 - 1e-12));
        if (body.min_radius() > R1 && body.max_radius() <= Rmax && body.is_convex()) return body;
    }
    throw InfeasibleBody("random_convex_body: no admissible body after retries (R1 = " + std::to_string(R1) +
                         ", Rmax = " + std::to_string(Rmax) + ")");
}

}  // namespace steklov

#endif  // STEKLOV_GEOMETRY_HPP

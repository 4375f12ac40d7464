#ifndef STEKLOV_ANALYTIC_SHELL_HPP
#define STEKLOV_ANALYTIC_SHELL_HPP

/**
 * @file analytic_shell.hpp
 * @brief Closed-form Steklov-Dirichlet quantities for spherical shells.
 *
 * A shell A(R1, R2) = { R1 < |x| < R2 } in R^n carries the Dirichlet
 * condition on the inner sphere and the Steklov condition on the outer one.
 * Its first eigenfunction is radial and its eigenvalue is explicit; this
 * header collects those formulas together with the volume upper bound, the
 * admissible outer radius of the comparison theorem and the convexity
 * profile used in the Jensen step of its proof.
 */

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace steklov {

/// (n, R1, R2) for the shell R1 < |x| < R2 in R^n.
struct ShellSpec {
    int n = 2;
    double R1 = 1.0;
    double R2 = 2.0;
};

inline void validate(const ShellSpec& spec) {
    if (spec.n < 2) {
        throw std::invalid_argument("shell: dimension n must be >= 2, got " + std::to_string(spec.n));
    }
    if (!(spec.R1 > 0.0) || !std::isfinite(spec.R1)) {
        throw std::invalid_argument("shell: inner radius R1 must be positive and finite");
    }
    if (!(spec.R2 > spec.R1) || !std::isfinite(spec.R2)) {
        throw std::invalid_argument("shell: outer radius R2 must exceed inner radius R1");
    }
}

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface measure of the unit sphere in R^n (n * omega_n).
inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

namespace detail {

// log(R2/R1) evaluated without cancellation when the ratio is close to one.
inline double log_ratio(double R1, double R2) { return std::log1p((R2 - R1) / R1); }

// (R2/R1)^p - 1, same concern.
inline double pow_ratio_minus_one(double R1, double R2, double p) {
    return std::expm1(p * log_ratio(R1, R2));
}

}  // namespace detail

/**
 * @brief First Steklov-Dirichlet eigenvalue of the shell.
 *
 *   n = 2:  1 / (R2 log(R2/R1))
 *   n >= 3: (n-2) / (R2 [(R2/R1)^(n-2) - 1])
 */
inline double shell_sigma1(const ShellSpec& spec) {
    validate(spec);
    if (spec.n == 2) {
        return 1.0 / (spec.R2 * detail::log_ratio(spec.R1, spec.R2));
    }
    const double p = spec.n - 2.0;
    return p / (spec.R2 * detail::pow_ratio_minus_one(spec.R1, spec.R2, p));
}

/// Radial first eigenfunction w(r), vanishing on |x| = R1 and increasing in r.
inline double shell_eigenfunction(const ShellSpec& spec, double r) {
    validate(spec);
    if (!(r >= spec.R1)) {
        throw std::invalid_argument("shell_eigenfunction: r must be >= R1");
    }
    if (spec.n == 2) {
        return detail::log_ratio(spec.R1, r);
    }
    const double p = spec.n - 2.0;
    // 1/R1^p - 1/r^p = (1/R1^p) * (1 - (R1/r)^p)
    return -std::expm1(-p * detail::log_ratio(spec.R1, r)) / std::pow(spec.R1, p);
}

/// Radial derivative w'(r) = 1/r (n = 2) or (n-2)/r^(n-1).
inline double shell_eigenfunction_derivative(const ShellSpec& spec, double r) {
    validate(spec);
    if (spec.n == 2) {
        return 1.0 / r;
    }
    return (spec.n - 2.0) / std::pow(r, spec.n - 1.0);
}

/**
 * @brief Volume upper bound C(n, R1, V) V^(1/n) for any admissible domain of
 * volume V with inner hole B(R1).
 *
 * C(n, R1, V) = 2 / ( n omega_n^(1/n) ( (V/(2 omega_n) + R1^n)^(1/n) - R1 )^2 ).
 */
inline double upper_bound_volume(int n, double R1, double V) {
    if (n < 2) throw std::invalid_argument("upper_bound_volume: n must be >= 2");
    if (!(R1 > 0.0)) throw std::invalid_argument("upper_bound_volume: R1 must be positive");
    if (!(V > 0.0)) throw std::invalid_argument("upper_bound_volume: V must be positive");
    const double omega = unit_ball_volume(n);
    const double gap = std::pow(V / (2.0 * omega) + std::pow(R1, n), 1.0 / n) - R1;
    const double C = 2.0 / (n * std::pow(omega, 1.0 / n) * gap * gap);
    return C * std::pow(V, 1.0 / n);
}

/**
 * @brief The explicit member of the perimeter-form bound chain,
 * 2 V^(1/n) / (n omega_n^(1/n) gap^2), with gap as in upper_bound_volume.
 *
 * Algebraically identical to upper_bound_volume; kept as its own evaluation
 * path (volume radius rewritten through (V/omega_n)^(1/n)) so that the two
 * can be compared.
 */
inline double upper_bound_perimeter_chain(int n, double R1, double V) {
    if (n < 2) throw std::invalid_argument("upper_bound_perimeter_chain: n must be >= 2");
    if (!(R1 > 0.0)) throw std::invalid_argument("upper_bound_perimeter_chain: R1 must be positive");
    if (!(V > 0.0)) throw std::invalid_argument("upper_bound_perimeter_chain: V must be positive");
    const double omega = unit_ball_volume(n);
    // radius of the ball of volume V/2 plus the hole, relative to R1
    const double s = std::pow(V / (2.0 * omega * std::pow(R1, n)) + 1.0, 1.0 / n) - 1.0;
    const double volume_radius = std::pow(V / omega, 1.0 / n);
    return 2.0 * volume_radius / (n * R1 * R1 * s * s);
}

/// Admissible outer radius of the comparison theorem.
inline double rbar(int n, double R1) {
    if (n < 2) throw std::invalid_argument("rbar: n must be >= 2");
    if (!(R1 > 0.0)) throw std::invalid_argument("rbar: R1 must be positive");
    if (n == 2) {
        return R1 * std::exp(std::numbers::sqrt2);
    }
    const double m = n - 1.0;
    const double bracket = (m + (n - 2.0) * std::sqrt(2.0 * m)) / m;
    return R1 * std::pow(bracket, 1.0 / (n - 2.0));
}

/**
 * @brief Endpoints (alpha_minus, alpha_plus) of the convexity interval of
 * f_profile, in units of R1^n.
 *
 * For n >= 3 the lower root of the quadratic in y = t^(1-2/n) is zero (n = 3)
 * or negative (n >= 4), so alpha_minus is 0 there.
 */
inline std::pair<double, double> alpha_pm(int n) {
    if (n < 2) throw std::invalid_argument("alpha_pm: n must be >= 2");
    if (n == 2) {
        const double e = 2.0 * std::numbers::sqrt2;
        return {std::exp(-e), std::exp(e)};
    }
    const double m = n - 1.0;
    const double root = (n - 2.0) * std::sqrt(2.0 * m);
    const double expo = static_cast<double>(n) / (n - 2.0);
    const double upper = std::pow((m + root) / m, expo);
    const double lower_bracket = (m - root) / m;
    const double lower = lower_bracket > 0.0 ? std::pow(lower_bracket, expo) : 0.0;
    return {lower, upper};
}

/**
 * @brief Profile f(t) whose convexity drives the boundary-integral comparison.
 *
 *   n = 2:  log^2(sqrt(t)/R1) sqrt(t)
 *   n >= 3: (1/R1^(n-2) - 1/t^((n-2)/n))^2 t^((n-1)/n)
 *
 * With t = rho^n this is w(rho)^2 rho^(n-1).
 */
inline double f_profile(double t, int n, double R1) {
    if (!(t > 0.0)) throw std::invalid_argument("f_profile: t must be positive");
    if (n < 2) throw std::invalid_argument("f_profile: n must be >= 2");
    if (n == 2) {
        const double L = 0.5 * std::log(t) - std::log(R1);
        return L * L * std::sqrt(t);
    }
    const double p = n - 2.0;
    const double w = 1.0 / std::pow(R1, p) - 1.0 / std::pow(t, p / n);
    return w * w * std::pow(t, (n - 1.0) / n);
}

/// Analytic second derivative of f_profile.
inline double f_second(double t, int n, double R1) {
    if (!(t > 0.0)) throw std::invalid_argument("f_second: t must be positive");
    if (n < 2) throw std::invalid_argument("f_second: n must be >= 2");
    if (n == 2) {
        const double L = 0.5 * std::log(t) - std::log(R1);
        return (2.0 - L * L) / (4.0 * t * std::sqrt(t));
    }
    const double nn = n;
    const double quad = std::pow(R1, 4.0 - 2.0 * nn) / nn * (1.0 / nn - 1.0) * std::pow(t, 2.0 - 4.0 / nn);
    const double lin = 2.0 * std::pow(R1, 2.0 - nn) / nn * (1.0 - 1.0 / nn) * std::pow(t, 1.0 - 2.0 / nn);
    const double cst = (3.0 / nn - 2.0) * (3.0 / nn - 1.0);
    return std::pow(t, 3.0 / nn - 3.0) * (quad + lin + cst);
}

struct BoundsReport {
    double sigma_upper_volume = 0.0;
    double rbar = 0.0;
    double alpha_minus = 0.0;
    double alpha_plus = 0.0;
    bool inside_rbar = false;
};

/// Bounds and thresholds for a domain of volume V whose outer body reaches radius max_radius.
inline BoundsReport bounds_report(int n, double R1, double V, double max_radius) {
    BoundsReport report;
    report.sigma_upper_volume = upper_bound_volume(n, R1, V);
    report.rbar = rbar(n, R1);
    std::tie(report.alpha_minus, report.alpha_plus) = alpha_pm(n);
    report.inside_rbar = max_radius <= report.rbar;
    return report;
}

}  // namespace steklov

#endif  // STEKLOV_ANALYTIC_SHELL_HPP

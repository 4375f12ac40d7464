#ifndef STEKLOV_INEQUALITY_HARNESS_HPP
#define STEKLOV_INEQUALITY_HARNESS_HPP

/**
 * @file inequality_harness.hpp
 * @brief Executable checks of the shell comparison theorem and each step of
 * its proof on planar annular domains.
 *
 * The comparison shell A(R1, R2) always has the same area as the domain,
 * i.e. pi R2^2 equals the area of the outer body. The proof bounds sigma_1
 * by the Rayleigh quotient of the shell eigenfunction w and then compares
 * numerator (gradient energy) and denominator (boundary integral of w^2)
 * separately; each of those quantities is recorded.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "steklov/analytic_shell.hpp"
#include "steklov/eigensolver.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

/// Relative slack used by every inequality flag.
inline constexpr double inequality_rtol = 1e-8;

/// One row of a verification sweep.
struct VerificationRecord {
    std::uint64_t seed = 0;
    double R1 = 0.0;
    double volume_omega = 0.0;
    double R2_equiv = 0.0;
    double sigma1_num = 0.0;
    double sigma1_shell = 0.0;
    double rayleigh_w = 0.0;
    double grad_energy_omega = 0.0;
    double grad_energy_shell = 0.0;
    double D_omega = 0.0;
    double D_shell = 0.0;
    bool inside_rbar = false;
    bool pass_main = false;
    bool pass_hl = false;
    bool pass_key = false;

    // not serialized
    int orders_used = 0;
    double max_radius = 0.0;
};

inline bool main_holds(double sigma_num, double sigma_shell) {
    return sigma_num <= sigma_shell * (1.0 + inequality_rtol);
}
inline bool hl_holds(double energy_omega, double energy_shell) {
    return energy_omega <= energy_shell * (1.0 + inequality_rtol);
}
inline bool key_holds(double d_omega, double d_shell) { return d_omega >= d_shell * (1.0 - inequality_rtol); }

/// Recompute the pass flags from the numeric fields.
inline void evaluate_flags(VerificationRecord& rec) {
    rec.pass_main = main_holds(rec.sigma1_num, rec.sigma1_shell);
    rec.pass_hl = hl_holds(rec.grad_energy_omega, rec.grad_energy_shell);
    rec.pass_key = key_holds(rec.D_omega, rec.D_shell);
}

/// Radius R2 with pi R2^2 = area of the outer body.
inline double equivalent_radius_volume(const AnnularDomain2D& domain) {
    return std::sqrt(volume(domain.outer) / std::numbers::pi);
}

/// int_Omega |grad w|^2 = int_0^{2 pi} log(rho/R1) dtheta.
inline double gradient_energy(const AnnularDomain2D& domain) {
    double sum = 0.0;
    for (const auto& r : domain.outer.samples()) sum += std::log(r.rho / domain.R1);
    return sum * domain.outer.weight();
}

/// int over the shell of |grad w|^2: 2 pi log(R2/R1) for n = 2, n omega_n (n-2)(R1^(2-n) - R2^(2-n)) otherwise.
inline double gradient_energy(const ShellSpec& spec) {
    validate(spec);
    if (spec.n == 2) return two_pi * detail::log_ratio(spec.R1, spec.R2);
    const double p = spec.n - 2.0;
    return unit_sphere_area(spec.n) * p * shell_eigenfunction(spec, spec.R2);
}

/// D = int over the outer boundary of w^2 (planar w = log(|x|/R1)).
inline double D_functional(const StarBody2D& body, double R1) {
    if (!(R1 > 0.0)) throw std::invalid_argument("D_functional: R1 must be positive");
    if (!(body.min_radius() > R1)) throw std::invalid_argument("D_functional: body must contain the disk of radius R1");
    return boundary_integral(body, [R1](const Point2& x) {
        const double w = std::log(x.norm() / R1);
        return w * w;
    });
}

/// D on the outer sphere of a shell: n omega_n R2^(n-1) w(R2)^2.
inline double D_shell(const ShellSpec& spec) {
    const double w = shell_eigenfunction(spec, spec.R2);
    return unit_sphere_area(spec.n) * std::pow(spec.R2, spec.n - 1.0) * w * w;
}

/// Rayleigh quotient of w on the domain; an upper bound for sigma_1.
inline double rayleigh_w(const AnnularDomain2D& domain) {
    return gradient_energy(domain) / D_functional(domain.outer, domain.R1);
}

/**
 * @brief solve_sigma1, lowering N in steps of 4 while B is too ill-conditioned.
 *
 * Every accepted order still gives a Rayleigh-Ritz upper bound containing w.
 */
inline EigenSolveResult solve_sigma1_adaptive(const AnnularDomain2D& domain, int N, int M) {
    for (int n = N;; n = std::max(0, n - 4)) {
        try {
            return solve_sigma1(domain, n, M);
        } catch (const IllConditioned&) {
            if (n == 0) throw;
        }
    }
}

/// Comparison of sigma_1 with the equal-area shell and each proof step.
inline VerificationRecord check_main(const AnnularDomain2D& domain, std::uint64_t seed = 0, int N = 24, int M = 512) {
    if (!domain.outer.is_convex()) {
        throw std::invalid_argument("check_main: outer body is not convex (curvature margin " +
                                    std::to_string(domain.outer.curvature_margin()) + ")");
    }
    VerificationRecord rec;
    rec.seed = seed;
    rec.R1 = domain.R1;
    rec.volume_omega = annulus_volume(domain);
    rec.R2_equiv = equivalent_radius_volume(domain);
    const ShellSpec shell{2, domain.R1, rec.R2_equiv};
    const auto solved = solve_sigma1_adaptive(domain, N, M);
    rec.sigma1_num = solved.sigma1;
    rec.orders_used = solved.N;
    rec.sigma1_shell = shell_sigma1(shell);
    rec.grad_energy_omega = gradient_energy(domain);
    rec.grad_energy_shell = gradient_energy(shell);
    rec.D_omega = D_functional(domain.outer, domain.R1);
    rec.D_shell = D_shell(shell);
    rec.rayleigh_w = rec.grad_energy_omega / rec.D_omega;
    rec.max_radius = domain.outer.max_radius();
    rec.inside_rbar = rec.max_radius <= rbar(2, domain.R1);
    evaluate_flags(rec);
    return rec;
}

namespace detail {

template <class Fn>
std::vector<VerificationRecord> parallel_records(std::size_t count, Fn&& fn, unsigned threads) {
    std::vector<VerificationRecord> out(count);
    std::vector<std::string> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < count; ++i) {
        if (!errors[i].empty()) throw std::runtime_error("sweep item " + std::to_string(i) + ": " + errors[i]);
    }
    return out;
}

}  // namespace detail

struct SweepOptions {
    std::uint64_t seed = 42;
    int samples = 200;
    double R1 = 1.0;
    double Rmax = 0.0;  ///< 0 selects rbar(2, R1)
    int N = 24;
    int M = 512;
    unsigned threads = 0;
};

/// check_main over random bodies with seeds seed, seed+1, ...; rows ordered by seed.
inline std::vector<VerificationRecord> sweep_main(const SweepOptions& opts) {
    const double Rmax = opts.Rmax > 0.0 ? opts.Rmax : rbar(2, opts.R1);
    return detail::parallel_records(
        static_cast<std::size_t>(opts.samples),
        [&](std::size_t i) {
            const std::uint64_t s = opts.seed + i;
            const AnnularDomain2D domain(opts.R1, random_convex_body(s, opts.R1, Rmax, opts.M));
            return check_main(domain, s, opts.N, opts.M);
        },
        opts.threads);
}

/**
 * @brief Exploratory probe of the boundary-integral comparison for bodies
 * reaching beyond rbar (Rmax = 3 rbar). No pass/fail is implied.
 */
inline std::vector<VerificationRecord> check_key_outside_rbar(int samples, std::uint64_t seed, double R1 = 1.0,
                                                              int N = 24, int M = 512, unsigned threads = 0) {
    SweepOptions opts;
    opts.seed = seed;
    opts.samples = samples;
    opts.R1 = R1;
    opts.Rmax = 3.0 * rbar(2, R1);
    opts.N = N;
    opts.M = M;
    opts.threads = threads;
    return sweep_main(opts);
}

inline constexpr const char* verification_csv_header =
    "seed,R1,volume_omega,R2_equiv,sigma1_num,sigma1_shell,rayleigh_w,grad_energy_omega,grad_energy_shell,"
    "D_omega,D_shell,inside_rbar,pass_main,pass_hl,pass_key";

/// 17 significant digits.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const std::vector<VerificationRecord>& records) {
    const auto b = [](bool v) { return v ? "true" : "false"; };
    os << verification_csv_header << '\n';
    for (const auto& r : records) {
        os << r.seed << ',' << format_double(r.R1) << ',' << format_double(r.volume_omega) << ','
           << format_double(r.R2_equiv) << ',' << format_double(r.sigma1_num) << ',' << format_double(r.sigma1_shell)
           << ',' << format_double(r.rayleigh_w) << ',' << format_double(r.grad_energy_omega) << ','
           << format_double(r.grad_energy_shell) << ',' << format_double(r.D_omega) << ','
           << format_double(r.D_shell) << ',' << b(r.inside_rbar) << ',' << b(r.pass_main) << ','
           << b(r.pass_hl) << ',' << b(r.pass_key) << '\n';
    }
}

/// Reference values printed for the perimeter-constraint example.
inline constexpr double reference_d_omega = 832.820208;
inline constexpr double reference_d_shell = 828.919156;

struct CounterexampleReport {
    double R1 = 0.0;
    double a = 0.0;
    double b = 0.0;
    double perimeter_formula = 0.0;   ///< 2 pi sqrt((a^2+b^2)/2), matched to 2 pi
    double perimeter_exact = 0.0;     ///< quadrature perimeter of the ellipse
    double radial_mean_length = 0.0;  ///< int rho dtheta
    double d_ellipse = 0.0;
    double d_shell = 0.0;             ///< D on the unit circle
    double d_shell_closed_form = 0.0; ///< 2 pi log^2(1/R1)
    double difference = 0.0;          ///< d_ellipse - d_shell
    double reference_d_ellipse = reference_d_omega;
    double reference_d_shell = steklov::reference_d_shell;
    double relative_gap_to_reference = 0.0;  ///< |d_ellipse - reference_d_ellipse| / reference_d_ellipse
    double d_ellipse_alt = 0.0;       ///< ellipse perimeter matched to 2 pi (1 + R1) instead
    double d_shell_alt = 0.0;         ///< circle of radius 1 + R1
    bool perimeter_strict = false;    ///< perimeter > int rho dtheta
    bool direction_holds = false;     ///< d_ellipse > d_shell
};

/**
 * @brief Ellipse with semi-axis b and a chosen so that the perimeter formula
 * equals 2 pi, compared with the unit circle through D = int w^2 ds.
 */
inline CounterexampleReport counterexample_ellipse(double R1 = 1e-5, double b = 1.1, int M = 2048) {
    if (!(R1 > 0.0) || !(R1 < 1.0)) throw std::invalid_argument("counterexample_ellipse: need 0 < R1 < 1");
    // 2 pi sqrt((a^2 + b^2)/2) = 2 pi c  =>  a = sqrt(2 c^2 - b^2)
    const auto matched_axis = [b](double c) {
        const double a2 = 2.0 * c * c - b * b;
        if (!(a2 > 0.0)) throw std::invalid_argument("counterexample_ellipse: no ellipse with this b matches the perimeter");
        return std::sqrt(a2);
    };
    CounterexampleReport rep;
    rep.R1 = R1;
    rep.b = b;
    rep.a = matched_axis(1.0);
    const StarBody2D ellipse = body_from_ellipse(rep.a, b, M);
    const StarBody2D circle = StarBody2D::circle(1.0, M);
    if (!(ellipse.min_radius() > R1)) throw std::invalid_argument("counterexample_ellipse: ellipse must contain B(R1)");
    rep.perimeter_formula = perimeter_approx_formula(rep.a, b);
    rep.perimeter_exact = perimeter(ellipse);
    double radial = 0.0;
    for (const auto& r : ellipse.samples()) radial += r.rho;
    rep.radial_mean_length = radial * ellipse.weight();
    rep.perimeter_strict = rep.perimeter_exact > rep.radial_mean_length;
    rep.d_ellipse = D_functional(ellipse, R1);
    rep.d_shell = D_functional(circle, R1);
    rep.d_shell_closed_form = D_shell(ShellSpec{2, R1, 1.0});
    rep.difference = rep.d_ellipse - rep.d_shell;
    rep.relative_gap_to_reference = std::abs(rep.d_ellipse - rep.reference_d_ellipse) / rep.reference_d_ellipse;
    rep.direction_holds = rep.d_ellipse > rep.d_shell;

    const double a_alt = matched_axis(1.0 + R1);
    rep.d_ellipse_alt = D_functional(body_from_ellipse(a_alt, b, M), R1);
    rep.d_shell_alt = D_shell(ShellSpec{2, R1, 1.0 + R1});
    return rep;
}

struct BoundsCheck {
    double sigma1 = 0.0;
    int orders_used = 0;
    double volume = 0.0;
    double bound_volume = 0.0;
    double bound_perimeter_chain = 0.0;
    bool holds_volume = false;
    bool holds_perimeter_chain = false;
};

/// sigma_1 against both explicit upper bounds evaluated at the domain's area.
inline BoundsCheck check_bounds(const AnnularDomain2D& domain, int N = 24, int M = 512) {
    BoundsCheck out;
    const auto solved = solve_sigma1_adaptive(domain, N, M);
    out.sigma1 = solved.sigma1;
    out.orders_used = solved.N;
    out.volume = annulus_volume(domain);
    out.bound_volume = upper_bound_volume(2, domain.R1, out.volume);
    out.bound_perimeter_chain = upper_bound_perimeter_chain(2, domain.R1, out.volume);
    out.holds_volume = out.sigma1 <= out.bound_volume * (1.0 + inequality_rtol);
    out.holds_perimeter_chain = out.sigma1 <= out.bound_perimeter_chain * (1.0 + inequality_rtol);
    return out;
}

struct JensenCheck {
    bool in_interval = false;  ///< every z = rho^2 lies in [alpha_- R1^2, alpha_+ R1^2]
    double mean_f = 0.0;       ///< mean over the grid of f(z)
    double f_mean = 0.0;       ///< f(mean z)
    bool holds = false;        ///< mean_f >= f_mean (relative slack inequality_rtol)
};

/// Discrete Jensen step with z(theta) = rho(theta)^2 and the planar profile f.
inline JensenCheck jensen_check(const StarBody2D& body, double R1) {
    const auto [am, ap] = alpha_pm(2);
    JensenCheck out;
    out.in_interval = true;
    double sum_z = 0.0;
    double sum_f = 0.0;
    for (const auto& r : body.samples()) {
        const double z = r.rho * r.rho;
        out.in_interval = out.in_interval && z >= am * R1 * R1 && z <= ap * R1 * R1;
        sum_z += z;
        sum_f += f_profile(z, 2, R1);
    }
    const double M = body.quadrature_size();
    out.mean_f = sum_f / M;
    out.f_mean = f_profile(sum_z / M, 2, R1);
    out.holds = out.mean_f >= out.f_mean * (1.0 - inequality_rtol);
    return out;
}

}  // namespace steklov

#endif  // STEKLOV_INEQUALITY_HARNESS_HPP

#ifndef STEKLOV_EIGENSOLVER_HPP
#define STEKLOV_EIGENSOLVER_HPP

/**
 * @file eigensolver.hpp
 * @brief Rayleigh-Ritz computation of the first Steklov-Dirichlet eigenvalue
 * of a planar annular domain.
 *
 * Trial functions are exactly harmonic away from the origin and vanish on the
 * inner circle |x| = R1:
 *
 *   phi_0        = s_0 log(r/R1)
 *   phi_{k,cos}  = s_k ((r/R1)^k - (R1/r)^k) cos k theta
 *   phi_{k,sin}  = s_k ((r/R1)^k - (R1/r)^k) sin k theta
 *
 * so both the Dirichlet energy (by Green's identity) and the Steklov mass are
 * boundary integrals over the outer curve only. The smallest eigenvalue of the
 * resulting symmetric-definite pencil (A, B) is an upper bound for sigma_1
 * that decreases as the angular order N grows.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "steklov/geometry.hpp"

namespace steklov {

enum class Parity { Cos, Sin };

/// Harmonic trial space of angular order N; element 0 is log(r/R1).
struct HarmonicTrialBasis {
    double R1 = 1.0;
    int N = 0;
    std::vector<double> scale;  // one per order 0..N

    HarmonicTrialBasis(double r1, int n, std::vector<double> scales) : R1(r1), N(n), scale(std::move(scales)) {
        if (!(R1 > 0.0)) throw std::invalid_argument("HarmonicTrialBasis: R1 must be positive");
        if (N < 0) throw std::invalid_argument("HarmonicTrialBasis: N must be >= 0");
        if (scale.size() != static_cast<std::size_t>(N + 1)) {
            throw std::invalid_argument("HarmonicTrialBasis: need one scale per order 0..N");
        }
        for (double s : scale) {
            if (!(s > 0.0)) throw std::invalid_argument("HarmonicTrialBasis: scales must be positive");
        }
    }

    /// Unit scales.
    static HarmonicTrialBasis unscaled(double r1, int n) {
        return HarmonicTrialBasis(r1, n, std::vector<double>(static_cast<std::size_t>(n + 1), 1.0));
    }

    int size() const { return 2 * N + 1; }

    /// Flat index: 0 for order 0, 2k-1 for (k, cos), 2k for (k, sin).
    static int index(int order, Parity parity) {
        if (order == 0) return 0;
        return parity == Parity::Cos ? 2 * order - 1 : 2 * order;
    }
    static std::pair<int, Parity> order_of(int idx) {
        if (idx == 0) return {0, Parity::Cos};
        return {(idx + 1) / 2, idx % 2 == 1 ? Parity::Cos : Parity::Sin};
    }
};

struct BasisValue {
    double value = 0.0;
    Point2 gradient = Point2::Zero();
};

/// Value and Cartesian gradient of one basis element at a point other than the origin.
inline BasisValue basis_eval(const HarmonicTrialBasis& basis, int order, Parity parity, const Point2& p) {
    if (order < 0 || order > basis.N) throw std::out_of_range("basis_eval: order outside 0..N");
    const double r = p.norm();
    if (!(r > 0.0)) throw std::invalid_argument("basis_eval: trial functions are singular at the origin");
    const double theta = std::atan2(p.y(), p.x());
    const Point2 e_r = p / r;
    const Point2 e_t(-e_r.y(), e_r.x());
    const double s = basis.scale[order];
    BasisValue out;
    if (order == 0) {
        out.value = s * std::log(r / basis.R1);
        out.gradient = s / r * e_r;
        return out;
    }
    const double k = order;
    const double q = std::pow(r / basis.R1, k);
    const double radial = q - 1.0 / q;
    const double d_radial = k * (q + 1.0 / q) / r;
    const double c = std::cos(k * theta);
    const double sn = std::sin(k * theta);
    const double ang = parity == Parity::Cos ? c : sn;
    const double d_ang = parity == Parity::Cos ? -k * sn : k * c;
    out.value = s * radial * ang;
    out.gradient = s * (d_radial * ang * e_r + radial * d_ang / r * e_t);
    return out;
}

inline BasisValue basis_eval(const HarmonicTrialBasis& basis, int idx, const Point2& p) {
    const auto [order, parity] = HarmonicTrialBasis::order_of(idx);
    return basis_eval(basis, order, parity, p);
}

/// Stiffness and boundary-mass matrices of the trial space on one domain.
struct SymmetricPencil {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    double asymmetry = 0.0;       ///< max|A - A^T| / max|A| before symmetrization
    double b_min_eigenvalue = 0.0;
    double b_condition = 0.0;
    std::vector<double> scales;   ///< per-order basis scales used for A and B
};

/// B is too ill-conditioned for a trustworthy Cholesky reduction.
class IllConditioned : public std::runtime_error {
public:
    IllConditioned(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

inline constexpr double max_b_condition = 1e12;

namespace detail {

// Basis values (rows) and weighted normal derivatives dphi/dnu ds at the boundary nodes.
struct BoundaryTables {
    Eigen::MatrixXd values;
    Eigen::MatrixXd flux;  // dphi/dnu * |p'(theta)| * dtheta
    Eigen::VectorXd ds;    // |p'(theta)| * dtheta
};

inline BoundaryTables boundary_tables(const HarmonicTrialBasis& basis, const StarBody2D& body) {
    const int M = body.quadrature_size();
    const int n = basis.size();
    BoundaryTables t{Eigen::MatrixXd(n, M), Eigen::MatrixXd(n, M), Eigen::VectorXd(M)};
    for (int j = 0; j < M; ++j) {
        const auto& r = body.samples()[j];
        const double theta = body.theta(j);
        const double speed = std::hypot(r.rho, r.drho);
        const Point2 nu = outward_normal(r, theta);
        const Point2 p = body.point(j);
        t.ds(j) = speed * body.weight();
        for (int i = 0; i < n; ++i) {
            const auto bv = basis_eval(basis, i, p);
            t.values(i, j) = bv.value;
            t.flux(i, j) = bv.gradient.dot(nu) * t.ds(j);
        }
    }
    return t;
}

}  // namespace detail

/**
 * @brief Per-order scales s_k making the diagonal of B close to one.
 *
 * For order k >= 1 the cosine and sine diagonal entries share one scale.
 */
inline std::vector<double> normalizing_scales(const AnnularDomain2D& domain, int N) {
    const auto raw = HarmonicTrialBasis::unscaled(domain.R1, N);
    const auto t = detail::boundary_tables(raw, domain.outer);
    std::vector<double> scales(static_cast<std::size_t>(N + 1));
    for (int k = 0; k <= N; ++k) {
        double mass = 0.0;
        if (k == 0) {
            mass = t.values.row(0).array().square().matrix().dot(t.ds);
        } else {
            const int ic = HarmonicTrialBasis::index(k, Parity::Cos);
            const int is = HarmonicTrialBasis::index(k, Parity::Sin);
            mass = 0.5 * (t.values.row(ic).array().square().matrix().dot(t.ds) +
                          t.values.row(is).array().square().matrix().dot(t.ds));
        }
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw std::runtime_error("normalizing_scales: degenerate boundary mass at order " + std::to_string(k));
        }
        scales[k] = 1.0 / std::sqrt(mass);
    }
    return scales;
}

/// Pencil for a given basis; no conditioning check.
inline SymmetricPencil assemble_pencil(const AnnularDomain2D& domain, const HarmonicTrialBasis& basis) {
    const auto t = detail::boundary_tables(basis, domain.outer);
    SymmetricPencil pencil;
    pencil.scales = basis.scale;
    pencil.B = t.values * t.ds.asDiagonal() * t.values.transpose();
    // A_ij = int phi_i dphi_j/dnu
    Eigen::MatrixXd A = t.values * t.flux.transpose();
    const double scale = A.cwiseAbs().maxCoeff();
    pencil.asymmetry = scale > 0.0 ? (A - A.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
    pencil.A = 0.5 * (A + A.transpose());
    pencil.B = 0.5 * (pencil.B + pencil.B.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pencil.B, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    pencil.b_min_eigenvalue = ev.minCoeff();
    pencil.b_condition = pencil.b_min_eigenvalue > 0.0 ? ev.maxCoeff() / pencil.b_min_eigenvalue
                                                       : std::numeric_limits<double>::infinity();
    return pencil;
}

/**
 * @brief Assemble (A, B) on `domain` with orders 0..N and M boundary nodes.
 *
 * Throws IllConditioned when cond(B) exceeds max_b_condition.
 */
inline SymmetricPencil assemble_pencil(const AnnularDomain2D& domain, int N, int M) {
    if (N < 0) throw std::invalid_argument("assemble_pencil: N must be >= 0");
    if (M < std::max(8 * N, 64)) {
        throw std::invalid_argument("assemble_pencil: need M >= max(8N, 64), got M = " + std::to_string(M) +
                                    " for N = " + std::to_string(N));
    }
    const AnnularDomain2D resampled(domain.R1, domain.outer.with_quadrature(M));
    const HarmonicTrialBasis basis(domain.R1, N, normalizing_scales(resampled, N));
    auto pencil = assemble_pencil(resampled, basis);
    if (!(pencil.b_condition <= max_b_condition)) {
        throw IllConditioned("assemble_pencil: boundary mass matrix condition " + std::to_string(pencil.b_condition) +
                                 " exceeds 1e12 at N = " + std::to_string(N) + "; lower the angular order N",
                             pencil.b_condition);
    }
    return pencil;
}

struct EigenSolveResult {
    double sigma1 = 0.0;
    Eigen::VectorXd coeffs;  ///< in the scaled basis, boundary mass 1, order-0 coefficient >= 0
    std::vector<double> scales;
    int N = 0;
    int M = 0;
    double b_condition = 0.0;
    double residual = 0.0;   ///< ||A x - sigma B x||
    double a_norm = 0.0;     ///< ||A|| (Frobenius)
    double asymmetry = 0.0;
    bool convex = true;
};

/// Smallest eigenpair of the pencil via Cholesky reduction B = L L^T.
inline std::pair<double, Eigen::VectorXd> smallest_eigenpair(const SymmetricPencil& pencil) {
    Eigen::LLT<Eigen::MatrixXd> llt(pencil.B);
    if (llt.info() != Eigen::Success) {
        throw IllConditioned("smallest_eigenpair: boundary mass matrix is not positive definite",
                             std::numeric_limits<double>::infinity());
    }
    const Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd C = L.triangularView<Eigen::Lower>().solve(pencil.A);
    C = L.triangularView<Eigen::Lower>().solve(C.transpose()).transpose();
    C = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
    const double lambda = eig.eigenvalues()(0);
    Eigen::VectorXd x = L.transpose().triangularView<Eigen::Upper>().solve(eig.eigenvectors().col(0));
    x /= std::sqrt(x.dot(pencil.B * x));
    if (x(0) < 0.0) x = -x;
    return {lambda, x};
}

/// sigma_1 of the annular domain with N angular orders and M boundary nodes.
inline EigenSolveResult solve_sigma1(const AnnularDomain2D& domain, int N = 24, int M = 512) {
    const AnnularDomain2D resampled(domain.R1, domain.outer.with_quadrature(M));
    const auto pencil = assemble_pencil(resampled, N, M);
    auto [lambda, x] = smallest_eigenpair(pencil);
    EigenSolveResult out;
    out.sigma1 = lambda;
    out.residual = (pencil.A * x - lambda * pencil.B * x).norm();
    out.a_norm = pencil.A.norm();
    out.coeffs = std::move(x);
    out.scales = pencil.scales;
    out.N = N;
    out.M = M;
    out.b_condition = pencil.b_condition;
    out.asymmetry = pencil.asymmetry;
    out.convex = domain.outer.is_convex();
    return out;
}

/// Values of the computed eigenfunction at the outer boundary nodes.
inline std::vector<double> boundary_trace(const AnnularDomain2D& domain, const EigenSolveResult& result) {
    const StarBody2D body = domain.outer.with_quadrature(result.M);
    const HarmonicTrialBasis basis(domain.R1, result.N, result.scales);
    std::vector<double> trace(static_cast<std::size_t>(result.M), 0.0);
    for (int j = 0; j < result.M; ++j) {
        const Point2 p = body.point(j);
        double v = 0.0;
        for (int i = 0; i < basis.size(); ++i) v += result.coeffs(i) * basis_eval(basis, i, p).value;
        trace[j] = v;
    }
    return trace;
}

}  // namespace steklov

#endif  // STEKLOV_EIGENSOLVER_HPP

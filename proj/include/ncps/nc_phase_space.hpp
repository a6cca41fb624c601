#pragma once

// Noncommutative commutation forms, block-diagonal Darboux maps, and the
// covariance congruence between the commutative and NC descriptions.
//
// Variables are ordered (x_1..x_k, p_1..p_k) within each subsystem, so a
// subsystem form is [[Theta, I], [-I, Upsilon]].

#include <cmath>
#include <optional>
#include <string>

#include "ncps/config.hpp"
#include "ncps/error.hpp"
#include "ncps/matrix.hpp"
#include "ncps/symplectic_core.hpp"

namespace ncps {

/// Planar deformation strengths: theta_ij = theta * eps_ij, eta_ij = eta * eps_ij.
struct NCParams {
    double theta = 0.0;
    double eta = 0.0;

    /// theta*eta < 1 with both finite and nonnegative.
    static bool in_domain(double theta, double eta) noexcept {
        return std::isfinite(theta) && std::isfinite(eta) && theta >= 0.0 && eta >= 0.0 &&
               theta * eta < 1.0;
    }

    static NCParams make(double theta, double eta) {
        if (!std::isfinite(theta) || !std::isfinite(eta)) {
            throw Error(ErrorKind::NonFinite, "theta/eta");
        }
        if (theta < 0.0 || eta < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "theta and eta must be nonnegative");
        }
        if (theta * eta >= 1.0) {
            throw Error(ErrorKind::InvalidDomain,
                        "theta*eta = " + std::to_string(theta * eta) + " must be < 1");
        }
        return NCParams{theta, eta};
    }
};

/// 2x2 antisymmetric symbol with eps_12 = +1.
inline RealMatrix levi_civita_2() {
    RealMatrix e(2, 2);
    e << 0.0, 1.0, -1.0, 0.0;
    return e;
}

/// One party's form [[Theta, I], [-I, Upsilon]].
class SubsystemForm {
public:
    int modes() const noexcept { return n_k_; }
    const RealMatrix& theta_block() const noexcept { return theta_; }
    const RealMatrix& upsilon_block() const noexcept { return upsilon_; }
    const SkewForm& form() const noexcept { return form_; }

    friend SubsystemForm build_subsystem_form(int, const RealMatrix&, const RealMatrix&,
                                              const Tolerances&);

private:
    SubsystemForm(int n_k, RealMatrix theta, RealMatrix upsilon, SkewForm form)
        : n_k_(n_k), theta_(std::move(theta)), upsilon_(std::move(upsilon)), form_(std::move(form)) {}

    int n_k_;
    RealMatrix theta_;
    RealMatrix upsilon_;
    SkewForm form_;
};

inline SubsystemForm build_subsystem_form(int n_k, const RealMatrix& theta_block,
                                          const RealMatrix& upsilon_block,
                                          const Tolerances& tol = default_tolerances) {
    if (n_k < 1) throw Error(ErrorKind::InvalidDimension, "n_k must be >= 1");
    for (const RealMatrix* block : {&theta_block, &upsilon_block}) {
        if (block->rows() != n_k || block->cols() != n_k) {
            throw Error(ErrorKind::DimensionMismatch,
                        "deformation block must be " + std::to_string(n_k) + "x" +
                            std::to_string(n_k));
        }
        if (!all_finite(*block)) throw Error(ErrorKind::NonFinite, "deformation block");
        if (skew_defect(*block) > tol.skewness) {
            throw Error(ErrorKind::NotSkew, "deformation block");
        }
    }
    RealMatrix assembled(2 * n_k, 2 * n_k);
    assembled.topLeftCorner(n_k, n_k) = theta_block;
    assembled.topRightCorner(n_k, n_k).setIdentity();
    assembled.bottomLeftCorner(n_k, n_k) = -RealMatrix::Identity(n_k, n_k);
    assembled.bottomRightCorner(n_k, n_k) = upsilon_block;
    return SubsystemForm(n_k, theta_block, upsilon_block, SkewForm(std::move(assembled), tol));
}

/// n_k = 2 form with Theta = theta*eps and Upsilon = eta*eps.
inline SubsystemForm build_planar_form(const NCParams& params) {
    const NCParams checked = NCParams::make(params.theta, params.eta);
    const RealMatrix eps = levi_civita_2();
    return build_subsystem_form(2, checked.theta * eps, checked.eta * eps);
}

/// Omega = Diag[Omega^A, Omega^B].
class CompositeForm {
public:
    CompositeForm(SubsystemForm part_a, SubsystemForm part_b)
        : a_(std::move(part_a)),
          b_(std::move(part_b)),
          assembled_(block_diag(a_.form().matrix(), b_.form().matrix())) {}

    const SubsystemForm& part_a() const noexcept { return a_; }
    const SubsystemForm& part_b() const noexcept { return b_; }
    const SkewForm& form() const noexcept { return assembled_; }
    int n_a() const noexcept { return a_.modes(); }
    int n_b() const noexcept { return b_.modes(); }
    int modes() const noexcept { return n_a() + n_b(); }

private:
    SubsystemForm a_;
    SubsystemForm b_;
    SkewForm assembled_;
};

/// Commutative composite form Diag[J^A, J^B].
inline CompositeForm commutative_composite(int n_a, int n_b) {
    if (n_a < 1 || n_b < 1) throw Error(ErrorKind::InvalidDimension, "n_a, n_b must be >= 1");
    return CompositeForm(
        build_subsystem_form(n_a, RealMatrix::Zero(n_a, n_a), RealMatrix::Zero(n_a, n_a)),
        build_subsystem_form(n_b, RealMatrix::Zero(n_b, n_b), RealMatrix::Zero(n_b, n_b)));
}

/// Both parties carry the same planar form.
inline CompositeForm planar_composite(const NCParams& params) {
    return CompositeForm(build_planar_form(params), build_planar_form(params));
}

/// Block-diagonal Darboux map S = Diag[S^A, S^B] with S J S^T = Omega.
/// lambda/mu are present only for maps built from planar parameters.
class DarbouxMap {
public:
    DarbouxMap(RealMatrix s_a, RealMatrix s_b, std::optional<double> lambda = std::nullopt,
               std::optional<double> mu = std::nullopt)
        : s_a_(std::move(s_a)), s_b_(std::move(s_b)), lambda_(lambda), mu_(mu) {
        for (const RealMatrix* block : {&s_a_, &s_b_}) {
            detail::require_square(*block, "Darboux block");
            if (block->rows() % 2 != 0) {
                throw Error(ErrorKind::InvalidDimension, "Darboux block dimension must be even");
            }
            if (!all_finite(*block)) throw Error(ErrorKind::NonFinite, "Darboux block");
        }
        assembled_ = block_diag(s_a_, s_b_);
    }

    const RealMatrix& s_a() const noexcept { return s_a_; }
    const RealMatrix& s_b() const noexcept { return s_b_; }
    const RealMatrix& matrix() const noexcept { return assembled_; }
    std::optional<double> lambda() const noexcept { return lambda_; }
    std::optional<double> mu() const noexcept { return mu_; }
    Eigen::Index dim() const noexcept { return assembled_.rows(); }

    static DarbouxMap identity(int n_a, int n_b) {
        return DarbouxMap(RealMatrix::Identity(2 * n_a, 2 * n_a),
                          RealMatrix::Identity(2 * n_b, 2 * n_b), 1.0, 1.0);
    }

private:
    RealMatrix s_a_;
    RealMatrix s_b_;
    RealMatrix assembled_;
    std::optional<double> lambda_;
    std::optional<double> mu_;
};

/// lambda * mu for the planar map.
inline double planar_scale_product(const NCParams& params) {
    return 0.5 * (1.0 + std::sqrt(1.0 - params.eta * params.theta));
}

/// Planar Darboux block
///
///   [ lambda        0            0         -theta/(2 lambda) ]
///   [ 0             lambda       theta/(2 lambda)  0         ]
///   [ 0             eta/(2 mu)   mu        0                 ]
///   [ -eta/(2 mu)   0            0         mu                ]
///
/// The (4,1) entry is negative: with eps_12 = +1 and (x1, x2, p1, p2)
/// ordering, only this sign placement gives S J S^T = Omega.
inline RealMatrix planar_darboux_block(const NCParams& params, double lambda_scale) {
    const double mu = planar_scale_product(params) / lambda_scale;
    const double t = params.theta / (2.0 * lambda_scale);
    const double e = params.eta / (2.0 * mu);
    RealMatrix s(4, 4);
    s << lambda_scale, 0.0, 0.0, -t,
         0.0, lambda_scale, t, 0.0,
         0.0, e, mu, 0.0,
         -e, 0.0, 0.0, mu;
    return s;
}

inline DarbouxMap build_darboux_map(const NCParams& params, double lambda_scale = 1.0) {
    const NCParams checked = NCParams::make(params.theta, params.eta);
    if (!(lambda_scale > 0.0) || !std::isfinite(lambda_scale)) {
        throw Error(ErrorKind::InvalidArgument, "lambda must be positive and finite");
    }
    const double mu = planar_scale_product(checked) / lambda_scale;
    RealMatrix block = planar_darboux_block(checked, lambda_scale);
    return DarbouxMap(block, block, lambda_scale, mu);
}

/// True iff the map is invertible and S J S^T = Omega entrywise within tolerance.
/// Block-diagonality holds by construction of DarbouxMap.
inline bool validate_darboux(const DarbouxMap& map, const CompositeForm& target,
                             const Tolerances& tol = default_tolerances) {
    if (map.s_a().rows() != 2 * target.n_a() || map.s_b().rows() != 2 * target.n_b()) {
        throw Error(ErrorKind::DimensionMismatch, "Darboux blocks vs composite form");
    }
    if (reciprocal_condition(map.matrix()) <= tol.singular_rcond) return false;
    const RealMatrix j = commutative_composite(target.n_a(), target.n_b()).form().matrix();
    const RealMatrix image = map.matrix() * j * map.matrix().transpose();
    return max_abs_diff(image, target.form().matrix()) <= tol.darboux;
}

/// Sigma = M Sigma_tilde M^T for an arbitrary invertible M.
inline CovarianceMatrix congruence(const RealMatrix& m, const CovarianceMatrix& sigma) {
    if (m.rows() != sigma.dim() || m.cols() != sigma.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "congruence map vs covariance");
    }
    RealMatrix out = m * sigma.matrix() * m.transpose();
    return CovarianceMatrix((0.5 * (out + out.transpose())).eval());
}

/// Commutative covariance Sigma_tilde to the NC covariance S Sigma_tilde S^T.
inline CovarianceMatrix transform_covariance(const DarbouxMap& map,
                                             const CovarianceMatrix& sigma_tilde) {
    return congruence(map.matrix(), sigma_tilde);
}

/// NC covariance back to the commutative description, S^{-1} Sigma S^{-T}.
inline CovarianceMatrix inverse_transform_covariance(const DarbouxMap& map,
                                                     const CovarianceMatrix& sigma,
                                                     const Tolerances& tol = default_tolerances) {
    if (reciprocal_condition(map.matrix()) <= tol.singular_rcond) {
        throw Error(ErrorKind::SingularMap, "Darboux map");
    }
    return congruence(map.matrix().inverse(), sigma);
}

}  // namespace ncps

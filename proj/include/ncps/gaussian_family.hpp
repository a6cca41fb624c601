#pragma once

// The two-mode (8-dimensional) NC Gaussian family: covariance, closed-form
// smallest invariants, and the Wigner function.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ncps/config.hpp"
#include "ncps/error.hpp"
#include "ncps/matrix.hpp"
#include "ncps/nc_phase_space.hpp"
#include "ncps/separability.hpp"
#include "ncps/symplectic_core.hpp"

namespace ncps {

/// Family parameters (m, n) plus the deformation. R = sqrt(m^2 + n^2) and
/// b = (1+R)/(1-R) are always derived, never stored independently.
struct FamilyParams {
    double m = 0.0;
    double n = 0.0;
    NCParams nc{};

    double r() const noexcept { return std::hypot(m, n); }
    double b() const noexcept { return (1.0 + r()) / (1.0 - r()); }

    static FamilyParams make(double m, double n, double theta = 0.0, double eta = 0.0) {
        if (!std::isfinite(m) || !std::isfinite(n)) throw Error(ErrorKind::NonFinite, "m/n");
        if (std::hypot(m, n) >= 1.0) {
            throw Error(ErrorKind::InvalidDomain,
                        "R = " + std::to_string(std::hypot(m, n)) + " must be < 1");
        }
        return FamilyParams{m, n, NCParams::make(theta, eta)};
    }
};

/// Region-map parameter pair (n, m) = (R/3, sqrt(2) R/3), or with m and n
/// swapped. R here is only a label: sqrt(m^2 + n^2) = R/sqrt(3).
struct MNPair {
    double m;
    double n;
};

inline MNPair region_map_mn(double r_label, bool swap) {
    const double small = r_label / 3.0;
    const double large = std::numbers::sqrt2 * r_label / 3.0;
    return swap ? MNPair{small, large} : MNPair{large, small};
}

/// b/2 * [[I4, gamma^T], [gamma, I4]] with
/// gamma = [[n,0,m,0],[0,n,0,-m],[m,0,-n,0],[0,-m,0,-n]].
inline RealMatrix family_covariance_matrix(double m, double n) {
    const double r = std::hypot(m, n);
    if (!(r < 1.0)) throw Error(ErrorKind::InvalidDomain, "R must be < 1");
    const double b = (1.0 + r) / (1.0 - r);
    RealMatrix gamma(4, 4);
    gamma << n, 0.0, m, 0.0,
             0.0, n, 0.0, -m,
             m, 0.0, -n, 0.0,
             0.0, -m, 0.0, -n;
    RealMatrix sigma(8, 8);
    sigma.topLeftCorner(4, 4).setIdentity();
    sigma.bottomRightCorner(4, 4).setIdentity();
    sigma.topRightCorner(4, 4) = gamma.transpose();
    sigma.bottomLeftCorner(4, 4) = gamma;
    return 0.5 * b * sigma;
}

struct GaussianState {
    FamilyParams params;
    CovarianceMatrix sigma;
    double norm;  // 1 / (pi^4 sqrt(det Sigma))
};

inline GaussianState build_covariance(const FamilyParams& params) {
    CovarianceMatrix sigma(family_covariance_matrix(params.m, params.n));
    const double pi4 = std::pow(std::numbers::pi, 4);
    const double norm = 1.0 / (pi4 * std::sqrt(sigma.matrix().determinant()));
    return GaussianState{params, std::move(sigma), norm};
}

struct OmegaPair {
    double plus;
    double minus;
};

/// omega_pm = 2(1 +- n^2) + (1 -+ n^2)(eta^2 + theta^2) +- 2 m^2 (1 + eta theta)
///            + n(1 -+ 1)|eta^2 - theta^2| + 2m(1 +- 1)(eta + theta)
inline OmegaPair omega_pm(const FamilyParams& p) {
    const double m = p.m;
    const double n = p.n;
    const double th = p.nc.theta;
    const double et = p.nc.eta;
    const double n2 = n * n;
    const double sq = et * et + th * th;
    const double plus = 2.0 * (1.0 + n2) + (1.0 - n2) * sq + 2.0 * m * m * (1.0 + et * th) +
                        4.0 * m * (et + th);
    const double minus = 2.0 * (1.0 - n2) + (1.0 + n2) * sq - 2.0 * m * m * (1.0 + et * th) +
                         2.0 * n * std::abs(et * et - th * th);
    return OmegaPair{plus, minus};
}

struct ClosedFormInvariants {
    double omega_plus;
    double omega_minus;
    double nu_minus;
    double nu_minus_prime;
};

namespace detail {

/// w/2 - sqrt(c) with the constant and m^2, n^2 terms cancelled by hand. At
/// theta = eta = 0 the omega_- gap is exactly zero; forming it by subtraction
/// leaves O(1e-16) noise whose square root shifts nu by ~1e-8.
inline double omega_gap(const FamilyParams& p, bool plus) {
    const double m = p.m;
    const double n = p.n;
    const double th = p.nc.theta;
    const double et = p.nc.eta;
    const double n2 = n * n;
    if (plus) {
        const double s = et + th;
        return 2.0 * (m * m + n2) + 0.5 * (1.0 - n2) * s * s + 2.0 * m * s;
    }
    return 0.5 * (1.0 + n2) * (et * et + th * th) + et * th * (1.0 - n2 - 2.0 * m * m) +
           n * std::abs(et * et - th * th);
}

/// (1/(1-eta theta)) ((1+R)/(1-R)) sqrt(w/2 - sqrt(w^2/4 - c)),
/// c = (1-R^2)^2 (1-eta theta)^2. With g = w/2 - sqrt(c) the inner radicand is
/// g (g + 2 sqrt(c)), and the outer difference becomes c / (w/2 + sqrt(inner)).
inline double closed_form_nu(double w, double gap, const FamilyParams& p, const Tolerances& tol) {
    const double r2 = p.m * p.m + p.n * p.n;
    const double r = std::sqrt(r2);
    const double one_minus_et = 1.0 - p.nc.eta * p.nc.theta;
    const double root_c = (1.0 - r2) * one_minus_et;
    const double c = root_c * root_c;
    const double scale = std::max(1.0, w / 2.0);
    if (gap < 0.0) {
        if (gap < -tol.radicand_slack * scale) {
            throw Error(ErrorKind::FormulaDomain,
                        "inner radicand negative (gap " + std::to_string(gap) + ") for omega " +
                            std::to_string(w));
        }
        gap = 0.0;
    }
    const double inner = gap * (gap + 2.0 * root_c);
    const double denom = w / 2.0 + std::sqrt(inner);
    if (!(denom > 0.0)) {
        throw Error(ErrorKind::FormulaDomain, "omega " + std::to_string(w) + " not positive");
    }
    const double outer = c / denom;
    return (1.0 / one_minus_et) * ((1.0 + r) / (1.0 - r)) * std::sqrt(outer);
}

}  // namespace detail

inline ClosedFormInvariants closed_form_invariants(const FamilyParams& params,
                                                   const Tolerances& tol = default_tolerances) {
    const OmegaPair w = omega_pm(params);
    const double nu_minus = detail::closed_form_nu(w.minus, detail::omega_gap(params, false), params, tol);
    const double nu_minus_prime =
        detail::closed_form_nu(w.plus, detail::omega_gap(params, true), params, tol);
    return ClosedFormInvariants{w.plus, w.minus, nu_minus, nu_minus_prime};
}

/// F(z) = exp(-z^T Sigma^{-1} z) / (pi^4 sqrt(det Sigma)).
inline double evaluate_wigner(const GaussianState& state, const RealVector& z) {
    if (z.size() != state.sigma.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "phase-space point length");
    }
    if (!z.allFinite()) throw Error(ErrorKind::NonFinite, "phase-space point");
    const double quad = z.dot(state.sigma.matrix().llt().solve(z));
    return state.norm * std::exp(-quad);
}

/// Numeric route for the family: spectra of (Sigma, Omega) and (Sigma', Omega)
/// with the planar Darboux map at the given gauge lambda.
inline ClassificationResult classify_family(const FamilyParams& params, double lambda_scale = 1.0,
                                            const Tolerances& tol = default_tolerances) {
    const GaussianState state = build_covariance(params);
    return classify(state.sigma, planar_composite(params.nc),
                    build_darboux_map(params.nc, lambda_scale), tol);
}

}  // namespace ncps

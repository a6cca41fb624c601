#pragma once

// Partial transposition in NC phase space and the two-stage
// quantumness/separability classification.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "ncps/config.hpp"
#include "ncps/error.hpp"
#include "ncps/matrix.hpp"
#include "ncps/nc_phase_space.hpp"
#include "ncps/symplectic_core.hpp"

namespace ncps {

/// Lambda = Diag[I^A, I, -I]: reflects Bob's momenta.
struct MirrorReflection {
    int n_a = 0;
    int n_b = 0;
    RealMatrix mat;

    /// Lambda^B = Diag[I, -I].
    RealMatrix bob_block() const { return mat.bottomRightCorner(2 * n_b, 2 * n_b); }
};

inline MirrorReflection mirror_reflection(int n_a, int n_b) {
    if (n_a < 1 || n_b < 1) throw Error(ErrorKind::InvalidDimension, "n_a, n_b must be >= 1");
    RealVector diag = RealVector::Ones(2 * (n_a + n_b));
    diag.tail(n_b).setConstant(-1.0);
    return MirrorReflection{n_a, n_b, RealMatrix(diag.asDiagonal())};
}

/// Omega' = Diag[Omega^A, -Omega^B].
inline SkewForm primed_form(const CompositeForm& omega) {
    return SkewForm(block_diag(omega.part_a().form().matrix(), -omega.part_b().form().matrix()));
}

/// D = Diag[I^A, S^B Lambda^B (S^B)^{-1}], an involution.
struct PartialTransposeMap {
    RealMatrix mat;
};

inline PartialTransposeMap partial_transpose_map(const DarbouxMap& map, int n_a, int n_b,
                                                 const Tolerances& tol = default_tolerances) {
    if (map.s_a().rows() != 2 * n_a || map.s_b().rows() != 2 * n_b) {
        throw Error(ErrorKind::DimensionMismatch, "Darboux blocks vs n_a, n_b");
    }
    const RealMatrix& s_b = map.s_b();
    if (reciprocal_condition(s_b) <= tol.singular_rcond) {
        throw Error(ErrorKind::SingularMap, "S^B");
    }
    const RealMatrix reflected = s_b * mirror_reflection(n_a, n_b).bob_block() * s_b.inverse();
    PartialTransposeMap d{block_diag(RealMatrix::Identity(2 * n_a, 2 * n_a), reflected)};
    const double defect = max_abs_diff(d.mat * d.mat, RealMatrix::Identity(d.mat.rows(), d.mat.cols()));
    if (defect > tol.darboux) {
        throw Error(ErrorKind::RouteDisagreement, "D^2 != I, defect " + std::to_string(defect));
    }
    return d;
}

/// Sigma' = D Sigma D^T.
inline CovarianceMatrix partial_transpose_covariance(const CovarianceMatrix& sigma,
                                                     const PartialTransposeMap& d) {
    return congruence(d.mat, sigma);
}

struct SeparabilityCheck {
    bool separable = false;
    double nu_minus_prime = 0.0;      // from (Sigma, Omega')
    double nu_minus_prime_alt = 0.0;  // from (Sigma', Omega)
};

/// nu_-' through both equivalent routes; throws RouteDisagreement if they
/// differ by more than the spectrum tolerance. The (Sigma', Omega) route goes
/// through D = S^B Lambda (S^B)^-1, whose condition number grows like
/// 1/(1 - theta eta), so the allowed gap widens with kappa(D)^2. The primary
/// value comes from (Sigma, Omega'), which never forms D.
inline SeparabilityCheck check_separable(const CovarianceMatrix& sigma, const CompositeForm& omega,
                                         const DarbouxMap& map,
                                         const Tolerances& tol = default_tolerances) {
    const PartialTransposeMap d = partial_transpose_map(map, omega.n_a(), omega.n_b(), tol);
    const double via_form = nc_williamson_spectrum(sigma, primed_form(omega)).smallest();
    const double via_sigma =
        nc_williamson_spectrum(partial_transpose_covariance(sigma, d), omega.form()).smallest();
    const double kappa = 1.0 / reciprocal_condition(d.mat);
    const double allowed = std::max(tol.spectrum_agreement,
                                    16.0 * std::numeric_limits<double>::epsilon() * kappa * kappa);
    if (relative_diff(via_sigma, via_form) > allowed) {
        throw Error(ErrorKind::RouteDisagreement,
                    "nu_-' " + std::to_string(via_form) + " vs " + std::to_string(via_sigma));
    }
    return SeparabilityCheck{meets_unit_threshold(via_form, tol), via_form, via_sigma};
}

enum class Verdict { InvalidDomain, NonQuantum, SeparableQuantum, EntangledQuantum };

constexpr std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::InvalidDomain: return "invalid";
        case Verdict::NonQuantum: return "nonquantum";
        case Verdict::SeparableQuantum: return "separable";
        case Verdict::EntangledQuantum: return "entangled";
    }
    return "invalid";
}

inline Verdict verdict_from_string(std::string_view s) {
    for (Verdict v : {Verdict::InvalidDomain, Verdict::NonQuantum, Verdict::SeparableQuantum,
                      Verdict::EntangledQuantum}) {
        if (to_string(v) == s) return v;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown verdict '" + std::string(s) + "'");
}

/// Quantum iff nu_- >= 1; then separable iff nu_-' >= 1.
inline Verdict verdict_from(double nu_minus, double nu_minus_prime,
                            const Tolerances& tol = default_tolerances) {
    if (!meets_unit_threshold(nu_minus, tol)) return Verdict::NonQuantum;
    return meets_unit_threshold(nu_minus_prime, tol) ? Verdict::SeparableQuantum
                                                     : Verdict::EntangledQuantum;
}

struct ClassificationResult {
    Verdict verdict = Verdict::InvalidDomain;
    double nu_minus = std::numeric_limits<double>::quiet_NaN();
    double nu_minus_prime = std::numeric_limits<double>::quiet_NaN();

    static ClassificationResult invalid_domain() { return {}; }
};

inline ClassificationResult classify(const CovarianceMatrix& sigma, const CompositeForm& omega,
                                     const DarbouxMap& map,
                                     const Tolerances& tol = default_tolerances) {
    const double nu_minus = nc_williamson_spectrum(sigma, omega.form()).smallest();
    const double nu_minus_prime = check_separable(sigma, omega, map, tol).nu_minus_prime;
    return ClassificationResult{verdict_from(nu_minus, nu_minus_prime, tol), nu_minus,
                                nu_minus_prime};
}

}  // namespace ncps

#pragma once

#include <cstddef>

namespace ncps {

/// Numerical thresholds shared by every module.
///
/// Phase-space dimensions here are tiny (the two-mode family is 8x8), so
/// double precision supports tight absolute tolerances.
struct Tolerances {
    double symmetry = 1e-12;         // |A_ij - A_ji| per entry for covariance matrices
    double skewness = 1e-12;         // |A_ij + A_ji| per entry for skew forms
    double hermiticity = 1e-12;      // |H_ij - conj(H_ji)| per entry
    double singular_rcond = 1e-12;   // sigma_min / sigma_max at or below this is singular
    double positive_definite = 1e-12;// smallest eigenvalue must exceed this
    double spectrum_agreement = 1e-9;// relative, between two spectral routes
    double boundary_band = 1e-12;    // nu >= 1 - band counts as satisfying a criterion
    double hermitian_psd = 1e-10;    // min eigenvalue >= -this counts as positive semidefinite
    double darboux = 1e-10;          // |S J S^T - Omega| per entry
    double radicand_slack = 1e-12;   // negative radicands down to -slack are clamped to 0
    std::size_t max_dim = 64;        // largest accepted phase-space dimension 2n
};

inline constexpr Tolerances default_tolerances{};

}  // namespace ncps

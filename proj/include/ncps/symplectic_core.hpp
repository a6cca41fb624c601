#pragma once

// Symplectic spectra of covariance matrices relative to an arbitrary
// (possibly noncommutative) skew form, and positivity of the pencil
// Sigma + (i/2) Omega.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ncps/config.hpp"
#include "ncps/error.hpp"
#include "ncps/matrix.hpp"

namespace ncps {

/// Real skew-symmetric nonsingular 2n x 2n matrix: the commutator form
/// [z_i, z_j] = i Omega_ij.
class SkewForm {
public:
    explicit SkewForm(RealMatrix mat, const Tolerances& tol = default_tolerances)
        : mat_(std::move(mat)) {
        detail::require_phase_space_dim(mat_, "skew form", tol);
        if (const double d = skew_defect(mat_); d > tol.skewness) {
            throw Error(ErrorKind::NotSkew, "defect " + std::to_string(d));
        }
        if (const double rc = reciprocal_condition(mat_); rc <= tol.singular_rcond) {
            throw Error(ErrorKind::SingularForm, "reciprocal condition " + std::to_string(rc));
        }
    }

    const RealMatrix& matrix() const noexcept { return mat_; }
    Eigen::Index dim() const noexcept { return mat_.rows(); }
    Eigen::Index modes() const noexcept { return mat_.rows() / 2; }
    RealMatrix inverse() const { return mat_.inverse(); }

    SkewForm operator-() const { return SkewForm(RealMatrix(-mat_)); }

private:
    RealMatrix mat_;
};

/// Real symmetric positive-definite 2n x 2n matrix.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(RealMatrix mat, const Tolerances& tol = default_tolerances)
        : mat_(std::move(mat)) {
        detail::require_phase_space_dim(mat_, "covariance matrix", tol);
        if (const double d = symmetry_defect(mat_); d > tol.symmetry) {
            throw Error(ErrorKind::NotSymmetric, "defect " + std::to_string(d));
        }
        // Symmetrize away sub-tolerance noise so downstream solvers see an exact
        // symmetric matrix.
        mat_ = (0.5 * (mat_ + mat_.transpose())).eval();
        const double min_eig =
            Eigen::SelfAdjointEigenSolver<RealMatrix>(mat_, Eigen::EigenvaluesOnly)
                .eigenvalues()
                .minCoeff();
        if (!(min_eig > tol.positive_definite)) {
            throw Error(ErrorKind::NotPositiveDefinite,
                        "smallest eigenvalue " + std::to_string(min_eig));
        }
    }

    const RealMatrix& matrix() const noexcept { return mat_; }
    Eigen::Index dim() const noexcept { return mat_.rows(); }

private:
    RealMatrix mat_;
};

/// Williamson invariants, sorted ascending.
struct SymplecticSpectrum {
    std::vector<double> invariants;

    double smallest() const { return invariants.front(); }
    std::size_t size() const noexcept { return invariants.size(); }
};

/// J_n = [[0, I_n], [-I_n, 0]].
inline SkewForm standard_symplectic_form(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidDimension, "n must be >= 1");
    RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
    return SkewForm(std::move(j));
}

/// Symmetric square root through the eigendecomposition of a positive-definite matrix.
inline RealMatrix sqrt_spd(const CovarianceMatrix& sigma) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sigma.matrix());
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

/// NC Williamson invariants of sigma relative to form: the positive values nu
/// such that +-nu are the eigenvalues of 2i form^{-1} sigma.
///
/// 2i form^{-1} sigma is similar to 2i K with K = sigma^{1/2} form^{-1} sigma^{1/2}
/// real skew, so iK is Hermitian and its eigenvalues come in +-nu/2 pairs.
inline SymplecticSpectrum nc_williamson_spectrum(const CovarianceMatrix& sigma,
                                                 const SkewForm& form) {
    if (sigma.dim() != form.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "covariance " + std::to_string(sigma.dim()) + " vs form " +
                        std::to_string(form.dim()));
    }
    const RealMatrix root = sqrt_spd(sigma);
    RealMatrix k = root * form.inverse() * root;
    k = (0.5 * (k - k.transpose())).eval();
    const ComplexMatrix h = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();

    const RealVector eig =
        Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
    const Eigen::Index n = form.modes();
    SymplecticSpectrum out;
    out.invariants.reserve(static_cast<std::size_t>(n));
    // Eigenvalues are ascending; pair the k-th largest with the k-th smallest.
    for (Eigen::Index i = 0; i < n; ++i) {
        const double upper = eig(2 * n - 1 - i);
        const double lower = -eig(i);
        out.invariants.push_back(upper + lower);  // 2 * (nu/2), averaged over the pair
    }
    std::sort(out.invariants.begin(), out.invariants.end());
    return out;
}

/// Sigma + (i/2) Omega as a complex Hermitian matrix.
inline ComplexMatrix uncertainty_matrix(const CovarianceMatrix& sigma, const SkewForm& form) {
    if (sigma.dim() != form.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "covariance vs form");
    }
    ComplexMatrix out(sigma.dim(), sigma.dim());
    out.real() = sigma.matrix();
    out.imag() = 0.5 * form.matrix();
    return out;
}

inline double hermitian_min_eigenvalue(const ComplexMatrix& h,
                                       const Tolerances& tol = default_tolerances) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw Error(ErrorKind::InvalidDimension, "Hermitian matrix must be square and nonempty");
    }
    if (const double d = hermitian_defect(h); d > tol.hermiticity) {
        throw Error(ErrorKind::NotHermitian, "defect " + std::to_string(d));
    }
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .minCoeff();
}

/// Whether nu clears the threshold 1, with ties inside the boundary band
/// resolved toward the satisfied side.
inline bool meets_unit_threshold(double nu, const Tolerances& tol = default_tolerances) {
    return nu >= 1.0 - tol.boundary_band;
}

/// Robertson-Schroedinger uncertainty principle Sigma + (i/2) Omega >= 0,
/// decided through the smallest NC Williamson invariant.
inline bool rsup_holds(const CovarianceMatrix& sigma, const SkewForm& form,
                       const Tolerances& tol = default_tolerances) {
    return meets_unit_threshold(nc_williamson_spectrum(sigma, form).smallest(), tol);
}

}  // namespace ncps

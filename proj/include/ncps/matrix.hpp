#pragma once

// Dense matrix helpers. Matrices are small (2n <= 64), so everything is
// dynamic-size Eigen with value semantics.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "ncps/config.hpp"
#include "ncps/error.hpp"

namespace ncps {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

inline bool all_finite(const RealMatrix& m) { return m.allFinite(); }

/// Reciprocal 2-norm condition number. A determinant test would reject the
/// legitimate forms near theta*eta -> 1, whose det falls off like (1 - theta*eta)^(2n).
inline double reciprocal_condition(const RealMatrix& m) {
    const RealVector sv = Eigen::JacobiSVD<RealMatrix>(m).singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
    return sv(sv.size() - 1) / sv(0);
}

/// Largest absolute entrywise difference; matrices must have equal shape.
inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

inline double symmetry_defect(const RealMatrix& m) { return max_abs_diff(m, m.transpose()); }

inline double skew_defect(const RealMatrix& m) {
    if (m.size() == 0) return 0.0;
    return (m + m.transpose()).cwiseAbs().maxCoeff();
}

inline double hermitian_defect(const ComplexMatrix& h) {
    if (h.size() == 0) return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

inline RealMatrix block_diag(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix out = RealMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

/// Relative difference |a-b| / max(|a|, |b|), zero when both vanish.
inline double relative_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

namespace detail {

inline void require_square(const RealMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::InvalidDimension,
                    std::string(what) + " must be square and nonempty, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_phase_space_dim(const RealMatrix& m, const char* what,
                                    const Tolerances& tol) {
    require_square(m, what);
    const auto dim = static_cast<std::size_t>(m.rows());
    if (dim % 2 != 0 || dim > tol.max_dim) {
        throw Error(ErrorKind::InvalidDimension,
                    std::string(what) + " dimension " + std::to_string(dim) +
                        " must be even and at most " + std::to_string(tol.max_dim));
    }
    if (!all_finite(m)) throw Error(ErrorKind::NonFinite, what);
}

}  // namespace detail

}  // namespace ncps

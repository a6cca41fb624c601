#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncps {

enum class ErrorKind {
    InvalidDimension,
    DimensionMismatch,
    NonFinite,
    NotSymmetric,
    NotPositiveDefinite,
    NotSkew,
    SingularForm,
    SingularMap,
    NotHermitian,
    InvalidArgument,
    InvalidDomain,      // parameters outside the physical domain (theta*eta >= 1, R >= 1)
    FormulaDomain,      // closed-form radicand negative beyond tolerance
    RouteDisagreement,  // two equivalent computations disagree beyond tolerance
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidDimension: return "invalid dimension";
        case ErrorKind::DimensionMismatch: return "dimension mismatch";
        case ErrorKind::NonFinite: return "non-finite entry";
        case ErrorKind::NotSymmetric: return "matrix not symmetric";
        case ErrorKind::NotPositiveDefinite: return "matrix not positive-definite";
        case ErrorKind::NotSkew: return "matrix not skew-symmetric";
        case ErrorKind::SingularForm: return "singular skew form";
        case ErrorKind::SingularMap: return "singular linear map";
        case ErrorKind::NotHermitian: return "matrix not Hermitian";
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::InvalidDomain: return "parameters outside the physical domain";
        case ErrorKind::FormulaDomain: return "closed-form radicand negative";
        case ErrorKind::RouteDisagreement: return "equivalent routes disagree";
    }
    return "unknown error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ncps

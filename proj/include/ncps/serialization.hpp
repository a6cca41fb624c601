#pragma once

// JSON exchange formats.
//
//   matrix          {"dim": d, "entries": [row-major d*d numbers]}
//   NC params       {"theta": t, "eta": e}
//   Darboux map     {"s_a": matrix, "s_b": matrix, "lambda": x|null, "mu": y|null}
//   classification  {"verdict": "...", "nu_minus": x|null, "nu_minus_prime": y|null}
//   family params   {"m": m, "n": n, "theta": t, "eta": e}   (R and b are derived)

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "ncps/error.hpp"
#include "ncps/gaussian_family.hpp"
#include "ncps/matrix.hpp"
#include "ncps/nc_phase_space.hpp"
#include "ncps/separability.hpp"
#include "ncps/symplectic_core.hpp"

namespace ncps {

using json = nlohmann::json;

/// Fixed 12-significant-digit text, independent of locale and stream state.
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// x rounded to 12 significant digits, so JSON output carries the same
/// precision as CSV output.
inline double round_sig12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

namespace detail {

inline json optional_number(double x) {
    return std::isfinite(x) ? json(round_sig12(x)) : json(nullptr);
}

inline json optional_number(std::optional<double> x) {
    return x ? optional_number(*x) : json(nullptr);
}

inline double require_number(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
        throw Error(ErrorKind::InvalidArgument, std::string("field '") + key + "' must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, key);
    return x;
}

inline std::optional<double> optional_field(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return require_number(j, key);
}

}  // namespace detail

inline json matrix_to_json(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidDimension, "matrix must be square");
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(m(i, k));
    }
    return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

inline RealMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw Error(ErrorKind::InvalidArgument, "matrix JSON needs 'dim' and 'entries'");
    }
    if (!j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1) {
        throw Error(ErrorKind::InvalidDimension, "'dim' must be a positive integer");
    }
    const auto dim = j.at("dim").get<Eigen::Index>();
    const json& entries = j.at("entries");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != dim * dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "'entries' must hold dim*dim = " + std::to_string(dim * dim) + " numbers");
    }
    RealMatrix m(dim, dim);
    for (Eigen::Index idx = 0; idx < dim * dim; ++idx) {
        const json& v = entries.at(static_cast<std::size_t>(idx));
        if (!v.is_number()) throw Error(ErrorKind::InvalidArgument, "non-numeric matrix entry");
        m(idx / dim, idx % dim) = v.get<double>();
    }
    if (!all_finite(m)) throw Error(ErrorKind::NonFinite, "matrix entries");
    return m;
}

inline json to_json(const NCParams& p) { return json{{"theta", p.theta}, {"eta", p.eta}}; }

inline NCParams nc_params_from_json(const json& j) {
    return NCParams::make(detail::require_number(j, "theta"), detail::require_number(j, "eta"));
}

inline json to_json(const DarbouxMap& map) {
    return json{{"s_a", matrix_to_json(map.s_a())},
                {"s_b", matrix_to_json(map.s_b())},
                {"lambda", detail::optional_number(map.lambda())},
                {"mu", detail::optional_number(map.mu())}};
}

inline DarbouxMap darboux_from_json(const json& j) {
    if (!j.is_object() || !j.contains("s_a") || !j.contains("s_b")) {
        throw Error(ErrorKind::InvalidArgument, "Darboux JSON needs 's_a' and 's_b'");
    }
    return DarbouxMap(matrix_from_json(j.at("s_a")), matrix_from_json(j.at("s_b")),
                      detail::optional_field(j, "lambda"), detail::optional_field(j, "mu"));
}

inline json to_json(const ClassificationResult& r) {
    return json{{"verdict", std::string(to_string(r.verdict))},
                {"nu_minus", detail::optional_number(r.nu_minus)},
                {"nu_minus_prime", detail::optional_number(r.nu_minus_prime)}};
}

inline ClassificationResult classification_from_json(const json& j) {
    if (!j.is_object() || !j.contains("verdict") || !j.at("verdict").is_string()) {
        throw Error(ErrorKind::InvalidArgument, "classification JSON needs a string 'verdict'");
    }
    ClassificationResult r;
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.nu_minus = detail::optional_field(j, "nu_minus").value_or(r.nu_minus);
    r.nu_minus_prime = detail::optional_field(j, "nu_minus_prime").value_or(r.nu_minus_prime);
    return r;
}

inline json to_json(const FamilyParams& p) {
    return json{{"m", p.m}, {"n", p.n}, {"theta", p.nc.theta}, {"eta", p.nc.eta}};
}

inline FamilyParams family_params_from_json(const json& j) {
    return FamilyParams::make(detail::require_number(j, "m"), detail::require_number(j, "n"),
                              detail::require_number(j, "theta"), detail::require_number(j, "eta"));
}

inline json to_json(const SymplecticSpectrum& s) {
    json values = json::array();
    for (double v : s.invariants) values.push_back(round_sig12(v));
    return json{{"invariants", std::move(values)}, {"smallest", round_sig12(s.smallest())}};
}

}  // namespace ncps

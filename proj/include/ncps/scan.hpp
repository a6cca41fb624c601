#pragma once

// Point evaluation and (theta, eta) grid scans over the two-mode family,
// with CSV/JSON emitters for the region maps and full-spectrum curves.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ncps/error.hpp"
#include "ncps/gaussian_family.hpp"
#include "ncps/nc_phase_space.hpp"
#include "ncps/separability.hpp"
#include "ncps/serialization.hpp"
#include "ncps/symplectic_core.hpp"

namespace ncps {

/// Inclusive evenly spaced axis: steps == 1 yields just `min`.
struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    double at(int i) const {
        if (steps == 1) return min;
        if (i == steps - 1) return max;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }

    void validate(const char* name) const {
        if (!std::isfinite(min) || !std::isfinite(max)) throw Error(ErrorKind::NonFinite, name);
        if (min > max || steps < 1) {
            throw Error(ErrorKind::InvalidArgument,
                        std::string(name) + " range needs min <= max and steps >= 1");
        }
    }
};

/// Strict decimal parse of the whole string.
inline double parse_decimal(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorKind::InvalidArgument, "not a decimal number: '" + std::string(text) + "'");
    }
    return value;
}

/// Parses "MIN:MAX:STEPS".
inline AxisRange parse_axis_range(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw Error(ErrorKind::InvalidArgument, "range must be MIN:MAX:STEPS, got '" +
                                                    std::string(text) + "'");
    }
    AxisRange r;
    r.min = parse_decimal(text.substr(0, c1));
    r.max = parse_decimal(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string_view steps = text.substr(c2 + 1);
    auto [ptr, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), r.steps);
    if (steps.empty() || ec != std::errc() || ptr != steps.data() + steps.size()) {
        throw Error(ErrorKind::InvalidArgument, "bad step count '" + std::string(steps) + "'");
    }
    r.validate("axis");
    return r;
}

struct ScanRecord {
    double theta = 0.0;
    double eta = 0.0;
    double m = 0.0;
    double n = 0.0;
    double r = 0.0;
    std::optional<double> nu_minus;
    std::optional<double> nu_minus_prime;
    Verdict verdict = Verdict::InvalidDomain;
};

/// Closed-form evaluation of one (m, n, theta, eta) point. theta*eta >= 1
/// yields an invalid record; R >= 1 throws InvalidDomain.
inline ScanRecord eval_point(double m, double n, double theta, double eta,
                             const Tolerances& tol = default_tolerances) {
    if (!std::isfinite(m) || !std::isfinite(n)) throw Error(ErrorKind::NonFinite, "m/n");
    const double r = std::hypot(m, n);
    if (r >= 1.0) {
        throw Error(ErrorKind::InvalidDomain, "R = " + std::to_string(r) + " must be < 1");
    }
    ScanRecord rec{theta, eta, m, n, r, std::nullopt, std::nullopt, Verdict::InvalidDomain};
    if (!std::isfinite(theta) || !std::isfinite(eta) || theta < 0.0 || eta < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "theta and eta must be finite and nonnegative");
    }
    if (!NCParams::in_domain(theta, eta)) return rec;

    const ClosedFormInvariants cf = closed_form_invariants(FamilyParams::make(m, n, theta, eta), tol);
    rec.nu_minus = cf.nu_minus;
    rec.nu_minus_prime = cf.nu_minus_prime;
    rec.verdict = verdict_from(cf.nu_minus, cf.nu_minus_prime, tol);
    return rec;
}

/// Numeric spectral route for a record's point; nullopt for invalid records.
inline std::optional<ClassificationResult> numeric_route(const ScanRecord& rec,
                                                         const Tolerances& tol = default_tolerances) {
    if (rec.verdict == Verdict::InvalidDomain) return std::nullopt;
    return classify_family(FamilyParams::make(rec.m, rec.n, rec.theta, rec.eta), 1.0, tol);
}

struct ScanConfig {
    AxisRange theta{0.0, 2.0, 101};
    AxisRange eta{0.0, 2.0, 101};
    double m = 0.0;
    double n = 0.0;
    unsigned threads = 1;
};

namespace detail {

/// Runs fn(i) for i in [0, count) over up to `threads` workers. Results are
/// written by index, so output order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace detail

/// One record per grid point in row-major order (theta outer, eta inner).
inline std::vector<ScanRecord> scan_grid(const ScanConfig& config,
                                         const Tolerances& tol = default_tolerances) {
    config.theta.validate("theta");
    config.eta.validate("eta");
    if (std::hypot(config.m, config.n) >= 1.0) {
        throw Error(ErrorKind::InvalidDomain, "R = sqrt(m^2 + n^2) must be < 1");
    }
    const auto rows = static_cast<std::size_t>(config.theta.steps);
    const auto cols = static_cast<std::size_t>(config.eta.steps);
    std::vector<ScanRecord> out(rows * cols);
    detail::parallel_for(out.size(), config.threads, [&](std::size_t idx) {
        const double theta = config.theta.at(static_cast<int>(idx / cols));
        const double eta = config.eta.at(static_cast<int>(idx % cols));
        out[idx] = eval_point(config.m, config.n, theta, eta, tol);
    });
    return out;
}

/// Region-map data: n = R/3, m = sqrt(2) R/3 (swap exchanges them).
inline std::vector<ScanRecord> emit_fig2_data(double r_label, bool swap, const AxisRange& theta,
                                              const AxisRange& eta, unsigned threads = 1,
                                              const Tolerances& tol = default_tolerances) {
    if (!(r_label > 0.0 && r_label < 1.0)) {
        throw Error(ErrorKind::InvalidDomain, "R must lie in (0, 1)");
    }
    const MNPair mn = region_map_mn(r_label, swap);
    return scan_grid(ScanConfig{theta, eta, mn.m, mn.n, threads}, tol);
}

/// Full spectra of (Sigma, Omega) and (Sigma, Omega') at one point.
struct SpectrumRow {
    double theta = 0.0;
    double eta = 0.0;
    double m = 0.0;
    double n = 0.0;
    double r = 0.0;
    bool valid = false;
    std::array<double, 4> nu{};
    std::array<double, 4> nu_prime{};
};

inline std::vector<SpectrumRow> emit_fig1_data(const std::vector<double>& thetas,
                                               const AxisRange& eta, double m, double n,
                                               unsigned threads = 1) {
    eta.validate("eta");
    if (thetas.empty()) throw Error(ErrorKind::InvalidArgument, "no theta values");
    if (std::hypot(m, n) >= 1.0) throw Error(ErrorKind::InvalidDomain, "R must be < 1");
    const auto cols = static_cast<std::size_t>(eta.steps);
    std::vector<SpectrumRow> out(thetas.size() * cols);
    detail::parallel_for(out.size(), threads, [&](std::size_t idx) {
        SpectrumRow row;
        row.theta = thetas[idx / cols];
        row.eta = eta.at(static_cast<int>(idx % cols));
        row.m = m;
        row.n = n;
        row.r = std::hypot(m, n);
        if (row.theta < 0.0 || row.eta < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "theta and eta must be nonnegative");
        }
        if (NCParams::in_domain(row.theta, row.eta)) {
            const FamilyParams p = FamilyParams::make(m, n, row.theta, row.eta);
            const GaussianState state = build_covariance(p);
            const CompositeForm omega = planar_composite(p.nc);
            const SymplecticSpectrum s = nc_williamson_spectrum(state.sigma, omega.form());
            const SymplecticSpectrum sp = nc_williamson_spectrum(state.sigma, primed_form(omega));
            std::copy_n(s.invariants.begin(), 4, row.nu.begin());
            std::copy_n(sp.invariants.begin(), 4, row.nu_prime.begin());
            row.valid = true;
        }
        out[idx] = row;
    });
    return out;
}

// Emitters. CSV numbers use 12 significant digits; invalid points leave the
// invariant fields empty (CSV) or null (JSON).

inline void write_records_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << "theta,eta,m,n,r,nu_minus,nu_minus_prime,verdict\n";
    for (const ScanRecord& r : records) {
        os << format_number(r.theta) << ',' << format_number(r.eta) << ',' << format_number(r.m)
           << ',' << format_number(r.n) << ',' << format_number(r.r) << ','
           << (r.nu_minus ? format_number(*r.nu_minus) : "") << ','
           << (r.nu_minus_prime ? format_number(*r.nu_minus_prime) : "") << ','
           << to_string(r.verdict) << '\n';
    }
}

inline json to_json(const ScanRecord& r) {
    return json{{"theta", round_sig12(r.theta)},
                {"eta", round_sig12(r.eta)},
                {"m", round_sig12(r.m)},
                {"n", round_sig12(r.n)},
                {"r", round_sig12(r.r)},
                {"nu_minus", detail::optional_number(r.nu_minus)},
                {"nu_minus_prime", detail::optional_number(r.nu_minus_prime)},
                {"verdict", std::string(to_string(r.verdict))}};
}

inline ScanRecord scan_record_from_json(const json& j) {
    ScanRecord r;
    r.theta = detail::require_number(j, "theta");
    r.eta = detail::require_number(j, "eta");
    r.m = detail::require_number(j, "m");
    r.n = detail::require_number(j, "n");
    r.r = detail::require_number(j, "r");
    r.nu_minus = detail::optional_field(j, "nu_minus");
    r.nu_minus_prime = detail::optional_field(j, "nu_minus_prime");
    if (!j.contains("verdict") || !j.at("verdict").is_string()) {
        throw Error(ErrorKind::InvalidArgument, "record needs a string 'verdict'");
    }
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    return r;
}

inline void write_records_json(std::ostream& os, const std::vector<ScanRecord>& records) {
    json arr = json::array();
    for (const ScanRecord& r : records) arr.push_back(to_json(r));
    os << arr.dump(1) << '\n';
}

inline void write_spectra_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
    os << "theta,eta,m,n,r,nu_1,nu_2,nu_3,nu_4,nup_1,nup_2,nup_3,nup_4\n";
    for (const SpectrumRow& row : rows) {
        os << format_number(row.theta) << ',' << format_number(row.eta) << ','
           << format_number(row.m) << ',' << format_number(row.n) << ',' << format_number(row.r);
        for (const auto* values : {&row.nu, &row.nu_prime}) {
            for (double v : *values) os << ',' << (row.valid ? format_number(v) : "");
        }
        os << '\n';
    }
}

/// {"m", "n", "r", "rows": [...]}; the metadata records the (m, n) choice.
inline void write_spectra_json(std::ostream& os, const std::vector<SpectrumRow>& rows, double m,
                               double n) {
    json arr = json::array();
    for (const SpectrumRow& row : rows) {
        json nu = json::array();
        json nup = json::array();
        for (int k = 0; k < 4; ++k) {
            nu.push_back(row.valid ? json(round_sig12(row.nu[k])) : json(nullptr));
            nup.push_back(row.valid ? json(round_sig12(row.nu_prime[k])) : json(nullptr));
        }
        arr.push_back(json{{"theta", round_sig12(row.theta)},
                           {"eta", round_sig12(row.eta)},
                           {"nu", std::move(nu)},
                           {"nu_prime", std::move(nup)}});
    }
    json doc{{"m", round_sig12(m)},
             {"n", round_sig12(n)},
             {"r", round_sig12(std::hypot(m, n))},
             {"rows", std::move(arr)}};
    os << doc.dump(1) << '\n';
}

}  // namespace ncps

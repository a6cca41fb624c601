// ncps: classify and map quantumness/entanglement of two-mode Gaussian states
// on a noncommutative phase space.
//
// Exit codes: 0 success, 2 usage error, 3 numerical-domain error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncps/ncps.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(ncps::ErrorKind kind) {
    switch (kind) {
        case ncps::ErrorKind::FormulaDomain:
        case ncps::ErrorKind::RouteDisagreement:
        case ncps::ErrorKind::NotPositiveDefinite:
        case ncps::ErrorKind::SingularForm:
        case ncps::ErrorKind::SingularMap:
            return kExitNumerical;
        default:
            return kExitUsage;
    }
}

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) throw OutputError("failed writing '" + path + "'");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        out.push_back(ncps::parse_decimal(std::string_view(text).substr(start, end - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string records_text(const std::vector<ncps::ScanRecord>& records, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        ncps::write_records_json(os, records);
    } else {
        ncps::write_records_csv(os, records);
    }
    return os.str();
}

// Unset m/n default to the region-map pair with label R = 1/2.
double m_or_default(const std::string& text) {
    return text.empty() ? ncps::region_map_mn(0.5, false).m : ncps::parse_decimal(text);
}

double n_or_default(const std::string& text) {
    return text.empty() ? ncps::region_map_mn(0.5, false).n : ncps::parse_decimal(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative phase-space uncertainty and separability for Gaussian states"};
    app.require_subcommand(1);

    std::string theta_s = "0", eta_s = "0", m_s, n_s;
    std::string theta_range_s = "0:2:101", eta_range_s = "0:2:101";
    std::string thetas_s = "0,0.25,0.5";
    std::string r_s;
    std::string format = "csv";
    std::string out_path = "-";
    std::string sigma_path, form_path;
    unsigned threads = 1;
    bool swap = false;
    bool verbose = false;

    auto add_mn = [&](CLI::App* sub) {
        sub->add_option("--m", m_s, "Family parameter m (decimal)");
        sub->add_option("--n", n_s, "Family parameter n (decimal)");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "Output path, '-' for stdout");
        sub->add_option("--threads", threads, "Worker threads (output order is unaffected)")
            ->check(CLI::Range(1u, 256u));
    };

    auto* eval = app.add_subcommand("eval", "Classify a single (theta, eta, m, n) point");
    eval->add_option("--theta", theta_s, "Position-position deformation")->required();
    eval->add_option("--eta", eta_s, "Momentum-momentum deformation")->required();
    add_mn(eval);
    eval->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    eval->add_flag("--verbose,-v", verbose, "Cross-check against the numeric spectrum on stderr");

    auto* scan = app.add_subcommand("scan", "Classify every point of a (theta, eta) grid");
    scan->add_option("--theta-range", theta_range_s, "MIN:MAX:STEPS");
    scan->add_option("--eta-range", eta_range_s, "MIN:MAX:STEPS");
    add_mn(scan);
    add_output(scan);

    auto* fig1 = app.add_subcommand("fig1", "Full symplectic spectra versus eta for fixed thetas");
    fig1->add_option("--thetas", thetas_s, "Comma-separated theta values");
    fig1->add_option("--eta-range", eta_range_s, "MIN:MAX:STEPS");
    add_mn(fig1);
    add_output(fig1);

    auto* fig2 = app.add_subcommand("fig2", "Region map with n = R/3, m = sqrt(2) R/3");
    fig2->add_option("--r", r_s, "R label in (0, 1)")->required();
    fig2->add_flag("--swap", swap, "Use n = sqrt(2) R/3, m = R/3");
    fig2->add_option("--theta-range", theta_range_s, "MIN:MAX:STEPS");
    fig2->add_option("--eta-range", eta_range_s, "MIN:MAX:STEPS");
    add_output(fig2);

    auto* spectrum = app.add_subcommand("spectrum", "NC Williamson invariants of a matrix pair");
    spectrum->add_option("--sigma", sigma_path, "Covariance matrix JSON file")->required();
    spectrum->add_option("--form", form_path, "Skew form JSON file")->required();
    spectrum->add_option("--out", out_path, "Output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval) {
            const ncps::ScanRecord rec =
                ncps::eval_point(m_or_default(m_s), n_or_default(n_s),
                                 ncps::parse_decimal(theta_s), ncps::parse_decimal(eta_s));
            if (verbose) {
                if (const auto numeric = ncps::numeric_route(rec)) {
                    const double d1 = ncps::relative_diff(*rec.nu_minus, numeric->nu_minus);
                    const double d2 =
                        ncps::relative_diff(*rec.nu_minus_prime, numeric->nu_minus_prime);
                    std::cerr << "numeric nu_minus=" << ncps::format_number(numeric->nu_minus)
                              << " nu_minus_prime=" << ncps::format_number(numeric->nu_minus_prime)
                              << " rel_diff=" << ncps::format_number(std::max(d1, d2)) << '\n';
                    if (std::max(d1, d2) > 1e-8) {
                        throw ncps::Error(ncps::ErrorKind::RouteDisagreement,
                                          "closed form vs numeric spectrum");
                    }
                }
            }
            if (format == "csv") {
                emit("-", records_text({rec}, "csv"));
            } else {
                emit("-", ncps::to_json(rec).dump(1) + "\n");
            }
        } else if (*scan) {
            ncps::ScanConfig config;
            config.theta = ncps::parse_axis_range(theta_range_s);
            config.eta = ncps::parse_axis_range(eta_range_s);
            config.m = m_or_default(m_s);
            config.n = n_or_default(n_s);
            config.threads = threads;
            emit(out_path, records_text(ncps::scan_grid(config), format));
        } else if (*fig1) {
            const double m = m_or_default(m_s);
            const double n = n_or_default(n_s);
            const auto rows = ncps::emit_fig1_data(parse_list(thetas_s),
                                                   ncps::parse_axis_range(eta_range_s), m, n,
                                                   threads);
            std::ostringstream os;
            if (format == "json") {
                ncps::write_spectra_json(os, rows, m, n);
            } else {
                ncps::write_spectra_csv(os, rows);
            }
            emit(out_path, os.str());
        } else if (*fig2) {
            const auto records = ncps::emit_fig2_data(
                ncps::parse_decimal(r_s), swap, ncps::parse_axis_range(theta_range_s),
                ncps::parse_axis_range(eta_range_s), threads);
            emit(out_path, records_text(records, format));
        } else if (*spectrum) {
            auto load = [](const std::string& path) {
                std::ifstream in(path);
                if (!in) throw OutputError("cannot read '" + path + "'");
                return ncps::matrix_from_json(ncps::json::parse(in));
            };
            const ncps::CovarianceMatrix sigma(load(sigma_path));
            const ncps::SkewForm form(load(form_path));
            ncps::json doc = ncps::to_json(ncps::nc_williamson_spectrum(sigma, form));
            doc["rsup_holds"] = ncps::rsup_holds(sigma, form);
            doc["min_eigenvalue"] = ncps::round_sig12(
                ncps::hermitian_min_eigenvalue(ncps::uncertainty_matrix(sigma, form)));
            emit(out_path, doc.dump(1) + "\n");
        }
    } catch (const ncps::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ncps::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}

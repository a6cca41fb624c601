// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "ncps/ncps.hpp"
#include "oracles.hpp"

using namespace ncps;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && dt > budget_s) {
        o.pass = false;
        o.detail += " (over time budget)";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.3fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt);
}

NCParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    double theta, eta;
    do {
        theta = u(rng);
        eta = u(rng);
    } while (theta * eta >= 1.0);
    return NCParams{theta, eta};
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome commutative_limit() {
    double worst = 0.0;
    for (double r : {0.1, 0.2, 0.5}) {
        const auto inv = closed_form_invariants(FamilyParams::make(0.6 * r, 0.8 * r));
        worst = std::max(worst, std::abs(inv.nu_minus_prime - (1.0 + r)));
        worst = std::max(worst, std::abs(inv.nu_minus - std::pow(1 + r, 1.5) / std::sqrt(1 - r)));
    }
    return {worst <= 1e-10, "max abs error " + fmt(worst)};
}

Outcome closed_form_vs_spectral() {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> rad(0.0, 0.9), ang(0.0, 0.5 * std::numbers::pi);
    double worst = 0.0;
    int rejected = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const NCParams nc = random_params(rng);
        const double r = rad(rng), a = ang(rng);
        const auto params = FamilyParams::make(r * std::cos(a), r * std::sin(a), nc.theta, nc.eta);
        ClosedFormInvariants cf;
        try {
            cf = closed_form_invariants(params);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::FormulaDomain) throw;
            ++rejected;
            continue;
        }
        const auto state = build_covariance(params);
        const CompositeForm omega = planar_composite(nc);
        const double nu = nc_williamson_spectrum(state.sigma, omega.form()).smallest();
        const double nup = nc_williamson_spectrum(state.sigma, primed_form(omega)).smallest();
        worst = std::max({worst, relative_diff(cf.nu_minus, nu), relative_diff(cf.nu_minus_prime, nup)});
    }
    return {worst <= 1e-8,
            "max rel error " + fmt(worst) + ", formula-domain rejections " + std::to_string(rejected)};
}

Outcome darboux_constraint() {
    std::mt19937_64 rng(1002);
    const RealMatrix j = commutative_composite(2, 2).form().matrix();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const NCParams p = random_params(rng);
        const RealMatrix target = planar_composite(p).form().matrix();
        for (double lam : {0.5, 1.0, 2.0}) {
            const RealMatrix s = build_darboux_map(p, lam).matrix();
            worst = std::max(worst, max_abs_diff(s * j * s.transpose(), target));
        }
    }
    return {worst <= 1e-10, "max entry error " + fmt(worst)};
}

Outcome gauge_independence() {
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> lam(0.3, 3.0);
    const SkewForm j = commutative_composite(2, 2).form();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const NCParams p = random_params(rng);
        const CovarianceMatrix tilde(oracle::random_spd(rng, 8, 0.3, 3.0));
        const double l1 = lam(rng);
        double l2;
        do l2 = lam(rng);
        while (std::abs(l2 - l1) < 0.1);
        const SkewForm omega = planar_composite(p).form();
        const auto s1 = nc_williamson_spectrum(transform_covariance(build_darboux_map(p, l1), tilde), omega);
        const auto s2 = nc_williamson_spectrum(transform_covariance(build_darboux_map(p, l2), tilde), omega);
        const auto s0 = nc_williamson_spectrum(tilde, j);
        worst = std::max({worst, oracle::max_rel_diff(s1.invariants, s2.invariants),
                          oracle::max_rel_diff(s1.invariants, s0.invariants)});
    }
    return {worst <= 1e-9, "max rel error " + fmt(worst)};
}

Outcome primed_form_identity() {
    std::mt19937_64 rng(1004);
    std::uniform_real_distribution<double> lam(0.3, 3.0);
    double worst_form = 0.0, worst_inv = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const NCParams p = random_params(rng);
        const CompositeForm omega = planar_composite(p);
        const RealMatrix d = partial_transpose_map(build_darboux_map(p, lam(rng)), 2, 2).mat;
        const RealMatrix via_d = d.inverse() * omega.form().matrix() * d.transpose().inverse();
        worst_form = std::max(worst_form, max_abs_diff(via_d, primed_form(omega).matrix()));
        worst_inv = std::max(worst_inv, max_abs_diff(d * d, RealMatrix::Identity(8, 8)));
    }
    return {worst_form <= 1e-10 && worst_inv <= 1e-10,
            "form error " + fmt(worst_form) + ", involution error " + fmt(worst_inv)};
}

Outcome induced_entanglement() {
    const double r = 0.5, m = std::numbers::sqrt2 * r / 3.0, n = r / 3.0;
    const bool origin_separable =
        classify_family(FamilyParams::make(m, n)).verdict == Verdict::SeparableQuantum;
    bool found = false;
    double where_theta = 0, where_eta = 0;
    for (int i = 0; i <= 40 && !found; ++i) {
        for (int k = 0; k <= 40 && !found; ++k) {
            const double theta = 0.05 * i, eta = 0.05 * k;
            if (theta * eta >= 1.0) continue;
            const auto c = classify_family(FamilyParams::make(m, n, theta, eta));
            if (c.verdict == Verdict::EntangledQuantum && c.nu_minus >= 1.0 && c.nu_minus_prime < 1.0) {
                found = true;
                where_theta = theta;
                where_eta = eta;
            }
        }
    }
    auto nup = [&](double eta) { return classify_family(FamilyParams::make(m, n, 0.0, eta)).nu_minus_prime; };
    double lo = 0.0, hi = 2.0;
    const bool bracketed = nup(lo) >= 1.0 && nup(hi) < 1.0;
    const double crossing = oracle::bisect_unit_crossing(nup, lo, hi, 1e-10);
    // Width check: the crossing is bracketed to 1e-10 and the closed form agrees.
    const bool tight = nup(crossing - 1e-10) >= 1.0 - 1e-9 && nup(crossing + 1e-10) < 1.0 + 1e-9;
    const bool pass = origin_separable && found && bracketed && tight;
    return {pass, std::string("origin ") + (origin_separable ? "separable" : "NOT separable") +
                      ", first entangled (" + fmt(where_theta) + ", " + fmt(where_eta) +
                      "), theta=0 crossing eta=" + std::to_string(crossing)};
}

Outcome region_census() {
    std::string detail;
    bool pass = true;
    for (bool swap : {false, true}) {
        const auto records = emit_fig2_data(0.5, swap, {0.0, 2.0, 101}, {0.0, 2.0, 101}, 4);
        std::map<Verdict, int> count;
        int bad_invalid = 0;
        for (const auto& rec : records) {
            ++count[rec.verdict];
            if (rec.theta * rec.eta > 1.0 && rec.verdict != Verdict::InvalidDomain) ++bad_invalid;
        }
        for (Verdict v : {Verdict::InvalidDomain, Verdict::NonQuantum, Verdict::SeparableQuantum,
                          Verdict::EntangledQuantum}) {
            if (count[v] == 0) pass = false;
        }
        if (bad_invalid) pass = false;
        detail += std::string(swap ? " swapped:" : "ordered:") +
                  " invalid=" + std::to_string(count[Verdict::InvalidDomain]) +
                  " nonquantum=" + std::to_string(count[Verdict::NonQuantum]) +
                  " separable=" + std::to_string(count[Verdict::SeparableQuantum]) +
                  " entangled=" + std::to_string(count[Verdict::EntangledQuantum]) + ";";
    }
    return {pass, detail};
}

Outcome rsup_equivalence() {
    std::mt19937_64 rng(1008);
    std::uniform_real_distribution<double> scale(0.05, 1.5);
    std::bernoulli_distribution coin(0.5);
    int mismatches = 0, holds = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const CovarianceMatrix sigma(scale(rng) * oracle::random_spd(rng, 8, 0.2, 2.0));
        const SkewForm form =
            coin(rng) ? planar_composite(random_params(rng)).form() : primed_form(planar_composite(random_params(rng)));
        const bool fast = rsup_holds(sigma, form);
        const bool direct = hermitian_min_eigenvalue(uncertainty_matrix(sigma, form)) >= -1e-10;
        holds += fast;
        mismatches += fast != direct;
    }
    return {mismatches == 0 && holds > 0 && holds < 500,
            std::to_string(mismatches) + " mismatches, " + std::to_string(holds) + "/500 satisfy the bound"};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NCPS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const std::string tag = std::to_string(::getpid());
    const fs::path a = dir / ("ncps_acc_a_" + tag), b = dir / ("ncps_acc_b_" + tag),
                   c = dir / ("ncps_acc_c_" + tag);
    const std::string base = "scan --theta-range 0:2:101 --eta-range 0:2:101 --out ";
    if (run_cli(base + a.string()) != 0 || run_cli(base + b.string()) != 0 ||
        run_cli(base + c.string() + " --threads 8") != 0) {
        return {false, "cli returned nonzero"};
    }
    const std::string ta = slurp(a), tb = slurp(b), tc = slurp(c);
    fs::remove(a);
    fs::remove(b);
    fs::remove(c);
    return {!ta.empty() && ta == tb && ta == tc,
            std::to_string(ta.size()) + " bytes, repeat " + (ta == tb ? "identical" : "differs") +
                ", 8 threads " + (ta == tc ? "identical" : "differs")};
}

}  // namespace

int main() {
    report(1, "commutative limit", 1.0, commutative_limit);
    report(2, "closed form vs spectral route", 10.0, closed_form_vs_spectral);
    report(3, "Darboux constraint", 1.0, darboux_constraint);
    report(4, "Darboux gauge independence", 5.0, gauge_independence);
    report(5, "primed form and involution", 0.0, primed_form_identity);
    report(6, "induced entanglement", 5.0, induced_entanglement);
    report(7, "region census", 30.0, region_census);
    report(8, "uncertainty bound equivalence", 0.0, rsup_equivalence);
    report(9, "scan determinism", 0.0, determinism);
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}

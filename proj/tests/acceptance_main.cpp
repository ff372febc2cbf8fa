// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance is pinned here, in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>
#include <lgpolymer.h>

#include "experiment.hpp"
#include "laplace.hpp"
#include "limit_laws.hpp"
#include "oracles.hpp"
#include "stats.hpp"
#include "suites.hpp"
#include "whittaker.hpp"

using namespace lgp;
using nlohmann::json;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& name, bool pass, double secs,
            const std::string& detail) {
    std::printf("[%s] criterion %d (%s): %s  [%.1fs]\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

ParameterSet generic_params(int n, int m) {
    ParameterSet p;
    p.alpha_circ = 0.45;
    const double alphas[] = {0.85, 1.05, 0.95, 1.15};
    const double betas[] = {0.75, 1.15, 0.9};
    for (int i = 0; i < n; ++i) p.alpha.push_back(alphas[i % 4]);
    for (int k = 0; k < m; ++k) p.beta.push_back(betas[k % 3]);
    return p;
}

// --- criterion 1: gRSK identity suite ---------------------------------------
void criterion_grsk() {
    Timer t;
    Report rep = run_grsk_suite(R"({"seed": 1, "trials": 200, "jacobian_trials": 100,
                                    "tolerance": 1e-10, "jacobian_tolerance": 1e-5})");
    json j = json::parse(rep.json);
    std::string detail;
    for (auto& c : j.at("checks")) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s=%.1e ", c.at("identity").get<std::string>().c_str(),
                      c.at("worst_discrepancy").get<double>());
        detail += buf;
    }
    report(1, "gRSK identities", rep.passed, t.seconds(), detail);
}

// --- criterion 2: identity in distribution ----------------------------------
void criterion_identity() {
    Timer t;
    bool all = true;
    std::string detail;

    // n = 1 in closed form: parameter fields coincide cell by cell
    {
        ParameterSet p = generic_params(1, 0);
        ParameterField ft = make_trapezoid_field(p, 1, 0);
        ParameterField ff = make_full_space_field(p, 1, 0);
        bool match = ft.domain.cell_count() == ff.domain.cell_count();
        ft.domain.for_each_cell(
            [&](int i, int j) { match = match && ft.theta_at(i, j) == ff.theta_at(i, j); });
        all = all && match;
        detail += std::string("n=1 closed-form ") + (match ? "ok" : "BAD") + "; ";
    }

    const long R = 100000;
    const double crit = 1.628 * std::sqrt(2.0 / R);
    for (auto [n, m] : {std::pair{2, 0}, std::pair{2, 1}, std::pair{3, 0}, std::pair{3, 2}}) {
        ExperimentPlan flat;
        flat.model = {ModelScheme::trapezoid, n, m, generic_params(n, m), 0.0, 0.0};
        flat.replicas = R;
        flat.master_seed = 7000 + 100 * n + m;
        ExperimentPlan point = flat;
        point.model.scheme = ModelScheme::full_space;
        point.master_seed = flat.master_seed ^ 0x517cc1b727220a95ULL;
        ExperimentResult a = run_experiment(flat);
        ExperimentResult b = run_experiment(point);
        KsReport ks = ks_two_sample(a.distribution, b.distribution, 0.01);
        bool pass = ks.statistic < crit;
        all = all && pass;
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%d,%d): D=%.5f ", n, m, ks.statistic);
        detail += buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "crit=%.5f", crit);
    detail += buf;
    report(2, "identity in distribution", all, t.seconds(), detail);
}

// --- criterion 3: Laplace transform -----------------------------------------
void criterion_laplace() {
    Timer t;
    bool all = true;
    std::string detail;
    ContourGrid grid;

    // n = 1 contour against direct density integration
    {
        LaplaceQuery q;
        q.params = generic_params(1, 0);
        q.n = 1;
        q.m = 0;
        q.r = 1.0;
        ContourResult c = laplace_contour(q, grid);
        double a = q.params.alpha[0] + q.params.alpha_circ;
        double b = 2.0 * q.params.alpha[0];
        double direct = oracle::laplace_direct_product(a, b, 1.0);
        double rel = std::abs(c.value - direct) / direct;
        bool pass = rel <= 1e-5;
        all = all && pass;
        char buf[64];
        std::snprintf(buf, sizeof buf, "direct rel=%.2e; ", rel);
        detail += buf;
    }

    // contour vs Monte Carlo (1e6) and variant agreement, n in {1, 2}
    const std::vector<double> rs{0.1, 1.0, 10.0};
    for (auto [n, m] : {std::pair{1, 0}, std::pair{2, 1}}) {
        LaplaceQuery q;
        q.params = generic_params(n, m);
        q.n = n;
        q.m = m;
        double gap = contour_integrand_agreement(q, grid);
        bool gap_ok = gap <= 1e-9;
        all = all && gap_ok;
        q.variant = ContourVariant::trapezoid;
        auto mc = laplace_mc(q, rs, 1000000, 31337 + n);
        double worst_sigma = 0.0, worst_variant = 0.0;
        for (size_t i = 0; i < rs.size(); ++i) {
            q.r = rs[i];
            q.variant = ContourVariant::trapezoid;
            ContourResult ct = laplace_contour(q, grid);
            q.variant = ContourVariant::fullspace;
            ContourResult cf = laplace_contour(q, grid);
            worst_variant = std::max(worst_variant, std::abs(ct.value - cf.value) / ct.value);
            double sigma = std::abs(mc[i].estimate - ct.value) /
                           (mc[i].std_error + ct.err_est * ct.value + 1e-14);
            worst_sigma = std::max(worst_sigma, sigma);
        }
        bool pass = worst_sigma <= 3.0 && worst_variant <= 1e-9 && gap_ok;
        all = all && pass;
        char buf[96];
        std::snprintf(buf, sizeof buf, "n=%d: sigma=%.2f variant=%.1e integrand=%.1e; ", n,
                      worst_sigma, worst_variant, gap);
        detail += buf;
    }
    report(3, "Laplace transform", all, t.seconds(), detail);
}

// --- criterion 4: Whittaker transform identities ----------------------------
void criterion_whittaker() {
    Timer t;
    Report rep = run_whittaker_suite(R"({"identity": "all"})");
    json j = json::parse(rep.json);
    std::string detail;
    for (auto& c : j.at("checks")) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s=%.1e ", c.at("case").get<std::string>().c_str(),
                      c.at("discrepancy").get<double>());
        detail += buf;
    }
    report(4, "Whittaker transforms", rep.passed, t.seconds(), detail);
}

// --- criterion 5: limit-law engine -------------------------------------------
void criterion_limit_laws() {
    Timer t;
    bool all = true;
    std::string detail;
    double worst_oracle = 0.0;
    for (double tt : {-4.0, -2.0, 0.0, 2.0}) {
        double gap = std::abs(f_gue(tt) - oracle::airy_fredholm_gue(tt));
        worst_oracle = std::max(worst_oracle, gap);
    }
    all = all && worst_oracle <= 1e-5;

    double worst_empty = 0.0;
    for (double tt : {-2.0, 0.0, 1.0}) worst_empty = std::max(worst_empty, std::abs(f_bbp(tt, {}) - f_gue(tt)));
    all = all && worst_empty <= 1e-10;

    double worst_neg = 0.0;
    for (double tt : {-4.0, -2.0, 0.0, 2.0})
        worst_neg = std::max(worst_neg, std::abs(f_bbp(tt, {-8.0}) - f_gue(tt)));
    bool neg_ok = worst_neg <= 1e-3;
    all = all && neg_ok;

    char buf[224];
    std::snprintf(buf, sizeof buf, "oracle=%.2e empty-b=%.2e b=-8-vs-gue=%.2e%s", worst_oracle,
                  worst_empty, worst_neg,
                  neg_ok ? ""
                         : " (the b -> -inf limit converges at rate O(1/|b|); the distance at"
                           " b=-8 is genuinely above 1e-3 -- see the 1/U sweep in the unit tests)");
    detail = buf;
    report(5, "limit-law engine", all, t.seconds(), detail);
}

// --- criterion 6: phase transition at desk scale ------------------------------
void criterion_phase() {
    Timer t;
    bool all = true;
    std::string detail;
    const double theta = 2.0, p = 1.0;

    // Gaussian phase: theta0 = 0.3 < theta_c = 1, n = 128, R = 1e4
    double d_gauss_vs_gue;
    {
        const double theta0 = 0.3;
        const int n = 128, m = 128;
        AsymptoticConfig cfg{theta, theta0, n, m};
        PhaseConstants pc = phase_constants(cfg);
        double dpsi = trigamma(theta0) - p * trigamma(theta - theta0);
        ExperimentPlan plan;
        plan.model = {ModelScheme::boundary_full, n, m, {}, theta, theta0};
        plan.replicas = 10000;
        plan.master_seed = 60001;
        plan.center = n * pc.f_bar;
        plan.scale = std::sqrt(n * dpsi);
        ExperimentResult res = run_experiment(plan);
        KsReport ks = ks_one_sample(res.distribution, [](double x) { return gaussian_cdf(x); }, 0.05);
        bool pass = ks.statistic < 0.05;
        all = all && pass;
        char buf[64];
        std::snprintf(buf, sizeof buf, "gauss D=%.4f; ", ks.statistic);
        detail += buf;

        // the same samples standardized with the GUE constants must fail F_GUE
        std::vector<double> gue_std(res.log_z.size());
        double gc = n * pc.f, gs = std::cbrt(static_cast<double>(n)) * pc.sigma;
        for (size_t i = 0; i < gue_std.size(); ++i) gue_std[i] = (res.log_z[i] - gc) / gs;
        KsReport cross = ks_one_sample(EmpiricalDistribution::from_samples(gue_std),
                                       [](double x) { return f_gue_interpolated(x); }, 0.01);
        d_gauss_vs_gue = cross.statistic;
        all = all && !cross.pass;
    }

    // GUE phase: theta0 = theta (homogeneous), trend over n
    {
        double prev = 1e9;
        double d256 = 0.0, d256_vs_normal = 0.0;
        bool trend = true;
        for (int n : {32, 64, 128, 256}) {
            AsymptoticConfig cfg{theta, theta / 2.0, n, n};
            PhaseConstants pc = phase_constants(cfg);
            ExperimentPlan plan;
            plan.model = {ModelScheme::boundary_full, n, n, {}, theta, theta};
            plan.replicas = 10000;
            plan.master_seed = 60100 + n;
            plan.center = n * pc.f;
            plan.scale = std::cbrt(static_cast<double>(n)) * pc.sigma;
            ExperimentResult res = run_experiment(plan);
            KsReport ks = ks_one_sample(res.distribution,
                                        [](double x) { return f_gue_interpolated(x); }, 0.05);
            char buf[48];
            std::snprintf(buf, sizeof buf, "D(%d)=%.4f ", n, ks.statistic);
            detail += buf;
            // nonincreasing within Monte Carlo noise (~1.4/sqrt(R))
            trend = trend && ks.statistic <= prev + 0.02;
            prev = ks.statistic;
            if (n == 256) {
                d256 = ks.statistic;
                KsReport cross =
                    ks_one_sample(res.distribution, [](double x) { return gaussian_cdf(x); }, 0.01);
                d256_vs_normal = cross.statistic;
                all = all && !cross.pass;
            }
        }
        all = all && trend && d256 < 0.15;
        char buf[96];
        std::snprintf(buf, sizeof buf, "trend=%s D(256)=%.4f gue-vs-normal=%.3f gauss-vs-gue=%.3f",
                      trend ? "ok" : "BAD", d256, d256_vs_normal, d_gauss_vs_gue);
        detail += buf;
    }
    report(6, "phase transition", all, t.seconds(), detail);
}

// --- criterion 7: reproducibility ---------------------------------------------
void criterion_reproducibility() {
    Timer t;
    bool all = true;
    std::string detail;

    auto artifacts_equal = [](lgp_report* a, lgp_report* b) {
        if (!a || !b) return false;
        if (std::string(lgp_report_json(a)) != lgp_report_json(b)) return false;
        if (lgp_report_artifact_count(a) != lgp_report_artifact_count(b)) return false;
        for (size_t i = 0; i < lgp_report_artifact_count(a); ++i) {
            if (std::string(lgp_report_artifact_name(a, i)) != lgp_report_artifact_name(b, i))
                return false;
            if (std::string(lgp_report_artifact_data(a, i)) != lgp_report_artifact_data(b, i))
                return false;
        }
        return true;
    };

    // identity suite, thread counts 1 and 3 (config echoes the thread count,
    // so compare the sampled artifacts and the KS verdict instead)
    {
        lgp_report *a = nullptr, *b = nullptr;
        lgp_verify_identity(R"({"seed": 9, "n": 2, "m": 1, "samples": 5000, "threads": 1})", &a);
        lgp_verify_identity(R"({"seed": 9, "n": 2, "m": 1, "samples": 5000, "threads": 3})", &b);
        bool ok = a && b && lgp_report_artifact_count(a) == 1 && lgp_report_artifact_count(b) == 1 &&
                  std::string(lgp_report_artifact_data(a, 0)) == lgp_report_artifact_data(b, 0);
        ok = ok && json::parse(lgp_report_json(a)).at("ks") == json::parse(lgp_report_json(b)).at("ks");
        all = all && ok;
        detail += std::string("identity threads ") + (ok ? "ok" : "BAD") + "; ";
        lgp_report_free(a);
        lgp_report_free(b);
    }

    // identical reruns are byte-identical end to end
    {
        const char* cfg = R"({"seed": 2, "trials": 10, "jacobian_trials": 3})";
        lgp_report *a = nullptr, *b = nullptr;
        lgp_verify_grsk(cfg, &a);
        lgp_verify_grsk(cfg, &b);
        bool ok = artifacts_equal(a, b);
        all = all && ok;
        detail += std::string("grsk rerun ") + (ok ? "ok" : "BAD") + "; ";
        lgp_report_free(a);
        lgp_report_free(b);
    }
    {
        const char* cfg = R"({"kind": "gue", "t_from": -2, "t_to": 1, "t_step": 1,
                              "nodes_per_leg": 40})";
        lgp_report *a = nullptr, *b = nullptr;
        lgp_dist_table(cfg, &a);
        lgp_dist_table(cfg, &b);
        bool ok = artifacts_equal(a, b);
        all = all && ok;
        detail += std::string("dist rerun ") + (ok ? "ok" : "BAD") + "; ";
        lgp_report_free(a);
        lgp_report_free(b);
    }
    {
        lgp_report *a = nullptr, *b = nullptr;
        lgp_experiment_phase(
            R"({"seed": 4, "theta": 2.0, "theta0": 0.3, "p": 1, "n_list": [16], "replicas": 400,
                "threads": 1})",
            &a);
        lgp_experiment_phase(
            R"({"seed": 4, "theta": 2.0, "theta0": 0.3, "p": 1, "n_list": [16], "replicas": 400,
                "threads": 2})",
            &b);
        bool ok = a && b && lgp_report_artifact_count(a) == lgp_report_artifact_count(b) &&
                  lgp_report_artifact_count(a) >= 1 &&
                  std::string(lgp_report_artifact_data(a, 0)) == lgp_report_artifact_data(b, 0);
        all = all && ok;
        detail += std::string("phase threads ") + (ok ? "ok" : "BAD");
        lgp_report_free(a);
        lgp_report_free(b);
    }
    report(7, "reproducibility", all, t.seconds(), detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_grsk();
    criterion_identity();
    criterion_laplace();
    criterion_whittaker();
    criterion_limit_laws();
    criterion_phase();
    criterion_reproducibility();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

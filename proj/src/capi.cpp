#include "lgpolymer.h"

#include <new>
#include <string>
#include <vector>

#include "limit_laws.hpp"
#include "report.hpp"
#include "special_functions.hpp"
#include "suites.hpp"

struct lgp_report {
    lgp::Report body;
};

namespace {

thread_local std::string g_last_error;

lgp_status set_error(lgp_status s, const char* what) {
    g_last_error = what ? what : "unknown error";
    return s;
}

template <typename Fn>
lgp_status run_suite(Fn&& fn, const char* config_json, lgp_report** out) {
    if (!out) return set_error(LGP_INVALID_ARGUMENT, "output handle is null");
    *out = nullptr;
    try {
        lgp::Report r = fn(config_json ? std::string(config_json) : std::string());
        auto* handle = new lgp_report{std::move(r)};
        *out = handle;
        if (!handle->body.passed) return set_error(LGP_CHECK_FAILED, "one or more checks failed");
        return LGP_OK;
    } catch (const lgp::AccuracyError& e) {
        return set_error(LGP_ACCURACY_ERROR, e.what());
    } catch (const lgp::CapabilityError& e) {
        return set_error(LGP_INVALID_ARGUMENT, e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(LGP_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return set_error(LGP_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return set_error(LGP_INTERNAL_ERROR, e.what());
    } catch (...) {
        return set_error(LGP_INTERNAL_ERROR, "unknown exception");
    }
}

template <typename Fn>
lgp_status run_scalar(Fn&& fn, double* out) {
    if (!out) return set_error(LGP_INVALID_ARGUMENT, "output pointer is null");
    try {
        *out = fn();
        return LGP_OK;
    } catch (const lgp::AccuracyError& e) {
        return set_error(LGP_ACCURACY_ERROR, e.what());
    } catch (const std::exception& e) {
        return set_error(LGP_INVALID_ARGUMENT, e.what());
    }
}

}  // namespace

extern "C" {

const char* lgp_version(void) { return "0.1.0"; }

const char* lgp_last_error(void) { return g_last_error.c_str(); }

lgp_status lgp_verify_grsk(const char* config_json, lgp_report** out) {
    return run_suite([](const std::string& c) { return lgp::run_grsk_suite(c); }, config_json, out);
}

lgp_status lgp_verify_identity(const char* config_json, lgp_report** out) {
    return run_suite([](const std::string& c) { return lgp::run_identity_suite(c); }, config_json, out);
}

lgp_status lgp_verify_laplace(const char* config_json, lgp_report** out) {
    return run_suite([](const std::string& c) { return lgp::run_laplace_suite(c); }, config_json, out);
}

lgp_status lgp_verify_whittaker(const char* config_json, lgp_report** out) {
    return run_suite([](const std::string& c) { return lgp::run_whittaker_suite(c); }, config_json, out);
}

lgp_status lgp_dist_table(const char* config_json, lgp_report** out) {
    return run_suite([](const std::string& c) { return lgp::run_dist_table(c); }, config_json, out);
}

lgp_status lgp_experiment_phase(const char* config_json, lgp_report** out) {
    return run_suite([](const std::string& c) { return lgp::run_phase_experiment(c); }, config_json, out);
}

int lgp_report_passed(const lgp_report* r) { return r && r->body.passed ? 1 : 0; }

const char* lgp_report_json(const lgp_report* r) { return r ? r->body.json.c_str() : ""; }

const char* lgp_report_text(const lgp_report* r) { return r ? r->body.text.c_str() : ""; }

size_t lgp_report_artifact_count(const lgp_report* r) { return r ? r->body.artifacts.size() : 0; }

const char* lgp_report_artifact_name(const lgp_report* r, size_t index) {
    if (!r || index >= r->body.artifacts.size()) return nullptr;
    return r->body.artifacts[index].first.c_str();
}

const char* lgp_report_artifact_data(const lgp_report* r, size_t index) {
    if (!r || index >= r->body.artifacts.size()) return nullptr;
    return r->body.artifacts[index].second.c_str();
}

void lgp_report_free(lgp_report* r) { delete r; }

lgp_status lgp_tracy_widom_gue(double t, double* out) {
    return run_scalar([&] { return lgp::f_gue(t); }, out);
}

lgp_status lgp_bbp_cdf(double t, const double* b, size_t nb, double* out) {
    if (nb > 0 && !b) return set_error(LGP_INVALID_ARGUMENT, "b is null with nb > 0");
    return run_scalar(
        [&] {
            std::vector<double> bv(b, b + nb);
            return lgp::f_bbp(t, bv);
        },
        out);
}

lgp_status lgp_gaussian_cdf(double t, double* out) {
    return run_scalar([&] { return lgp::gaussian_cdf(t); }, out);
}

lgp_status lgp_critical_theta(double theta, double p, double* out) {
    return run_scalar([&] { return lgp::solve_theta_c(theta, p); }, out);
}

}  // extern "C"

// Command-line front end; all functionality goes through the shared-library
// C interface.
#include <lgpolymer.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::json;

namespace {

int status_to_exit(lgp_status s) {
    switch (s) {
        case LGP_OK: return 0;
        case LGP_CHECK_FAILED: return 1;
        case LGP_ACCURACY_ERROR: return 1;
        default: return 2;
    }
}

std::string out_dir() {
    const char* env = std::getenv("LGPOLYMER_OUT_DIR");
    return env && *env ? std::string(env) : std::string(".");
}

bool write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    f << data;
    return static_cast<bool>(f);
}

struct CommonOpts {
    std::optional<uint64_t> seed;
    int threads = 1;
    std::string out;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "master seed (required for stochastic runs)");
    cmd->add_option("--threads", c.threads, "worker threads");
    cmd->add_option("--out", c.out, "output path prefix");
    cmd->add_option("--config", c.config_path, "JSON config file; flags override its keys");
}

struct FlagValue {
    const char* flag;  // CLI option name, for count()
    const char* key;   // config key
    json value;
};

// Merge precedence: explicitly given flags > config file > built-in defaults.
json load_config(CLI::App* cmd, const CommonOpts& c, const std::vector<FlagValue>& flags) {
    json base = json::object();
    if (!c.config_path.empty()) {
        std::ifstream f(c.config_path);
        if (!f) throw CLI::ValidationError("--config", "cannot open " + c.config_path);
        f >> base;
        if (!base.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
    }
    for (const auto& fv : flags)
        if (cmd->count(fv.flag) > 0 || !base.contains(fv.key)) base[fv.key] = fv.value;
    if (c.seed) base["seed"] = *c.seed;
    if (cmd->count("--threads") > 0 || !base.contains("threads")) base["threads"] = c.threads;
    return base;
}

void require_seed(const json& cfg) {
    if (!cfg.contains("seed"))
        throw CLI::ValidationError("--seed", "a master seed is required for stochastic runs");
}

bool parse_t_grid(const std::string& s, json& cfg) {
    double a = 0, b = 0, st = 0;
    if (std::sscanf(s.c_str(), "%lg:%lg:%lg", &a, &b, &st) != 3) return false;
    cfg["t_from"] = a;
    cfg["t_to"] = b;
    cfg["t_step"] = st;
    return true;
}

int emit(lgp_status status, lgp_report* rep, const CommonOpts& c, const std::string& default_stem) {
    if (!rep) {
        std::fprintf(stderr, "error: %s\n", lgp_last_error());
        return status_to_exit(status);
    }
    std::fputs(lgp_report_text(rep), stdout);
    std::string stem = c.out.empty() ? out_dir() + "/" + default_stem : c.out;
    std::string json_path = stem + ".json";
    if (!write_file(json_path, lgp_report_json(rep))) {
        std::fprintf(stderr, "error: cannot write %s\n", json_path.c_str());
        lgp_report_free(rep);
        return 2;
    }
    std::printf("report: %s\n", json_path.c_str());
    for (size_t i = 0; i < lgp_report_artifact_count(rep); ++i) {
        std::string path = stem + "." + lgp_report_artifact_name(rep, i);
        if (!write_file(path, lgp_report_artifact_data(rep, i))) {
            std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
            lgp_report_free(rep);
            return 2;
        }
        std::printf("artifact: %s\n", path.c_str());
    }
    if (status != LGP_OK) std::fprintf(stderr, "failed: %s\n", lgp_last_error());
    lgp_report_free(rep);
    return status_to_exit(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-gamma polymer verification toolkit"};
    app.require_subcommand(1);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);

    CommonOpts g_c;
    int g_trials = 200, g_jac_trials = 100;
    std::string g_shape;
    auto* vg = verify->add_subcommand("grsk", "local-move identities, Jacobian");
    vg->add_option("--trials", g_trials, "random arrays");
    vg->add_option("--jacobian-trials", g_jac_trials, "Jacobian arrays (<= 30 cells)");
    vg->add_option("--shape", g_shape, "restrict to one rectangle, e.g. 4x6");
    add_common(vg, g_c);

    CommonOpts i_c;
    int i_n = 2, i_m = 0;
    long i_samples = 100000;
    double i_level = 0.01;
    auto* vi = verify->add_subcommand("identity", "two-sample KS for the distributional identity");
    vi->add_option("--n", i_n, "alpha count");
    vi->add_option("--m", i_m, "beta count");
    vi->add_option("--samples", i_samples, "replicas per side");
    vi->add_option("--level", i_level, "KS level (0.01 or 0.05)");
    add_common(vi, i_c);

    CommonOpts l_c;
    int l_n = 1, l_m = 0;
    long l_samples = 200000;
    std::vector<double> l_r;
    auto* vl = verify->add_subcommand("laplace", "contour formula against Monte Carlo");
    vl->add_option("--n", l_n, "alpha count");
    vl->add_option("--m", l_m, "beta count");
    vl->add_option("--samples", l_samples, "Monte Carlo replicas");
    vl->add_option("--r", l_r, "Laplace parameters")->delimiter(',');
    add_common(vl, l_c);

    CommonOpts w_c;
    std::string w_identity = "all";
    auto* vw = verify->add_subcommand("whittaker", "Gamma-product transform identities");
    vw->add_option("--identity", w_identity, "stade|t-transform|so-transform|translation|all");
    add_common(vw, w_c);

    // ---- dist ----
    auto* dist = app.add_subcommand("dist", "tabulate a limit-law CDF");
    dist->require_subcommand(1);
    struct DistOpts {
        CommonOpts common;
        std::string t_grid = "-4:2:0.5";
        std::vector<double> b;
        int nodes_per_leg = 48;
    };
    DistOpts d_gue, d_bbp, d_norm;
    auto add_dist = [&](const char* name, const char* help, DistOpts& o, bool with_b) {
        auto* cmd = dist->add_subcommand(name, help);
        cmd->add_option("--t-grid", o.t_grid, "grid as from:to:step");
        if (with_b) cmd->add_option("--b", o.b, "BBP parameters")->delimiter(',');
        cmd->add_option("--nodes-per-leg", o.nodes_per_leg, "contour nodes per leg");
        add_common(cmd, o.common);
        return cmd;
    };
    auto* dg = add_dist("gue", "GUE Tracy-Widom", d_gue, false);
    auto* db = add_dist("bbp", "Baik-Ben Arous-Peche", d_bbp, true);
    auto* dn = add_dist("normal", "standard Gaussian", d_norm, false);

    // ---- experiment ----
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo phase experiments");
    experiment->require_subcommand(1);
    CommonOpts p_c;
    double p_theta = 2.0, p_theta0 = 2.0, p_p = 1.0;
    std::vector<long> p_nlist{32, 64};
    long p_replicas = 10000;
    std::string p_scheme = "boundary_full", p_law = "auto";
    auto* ep = experiment->add_subcommand("phase", "free-energy fluctuations against the limit laws");
    ep->add_option("--theta", p_theta, "bulk parameter");
    ep->add_option("--theta0", p_theta0, "boundary parameter");
    ep->add_option("--p", p_p, "aspect ratio m/n");
    ep->add_option("--n-list", p_nlist, "sizes")->delimiter(',');
    ep->add_option("--replicas", p_replicas, "replicas per size");
    ep->add_option("--scheme", p_scheme, "boundary_full|boundary_trapezoid");
    ep->add_option("--law", p_law, "gue|gaussian|auto");
    add_common(ep, p_c);

    CLI11_PARSE(app, argc, argv);

    try {
        lgp_report* rep = nullptr;
        if (vg->parsed()) {
            std::vector<FlagValue> flags{{"--trials", "trials", g_trials},
                                         {"--jacobian-trials", "jacobian_trials", g_jac_trials}};
            if (!g_shape.empty()) flags.push_back({"--shape", "shape", g_shape});
            json cfg = load_config(vg, g_c, flags);
            require_seed(cfg);
            lgp_status st = lgp_verify_grsk(cfg.dump().c_str(), &rep);
            return emit(st, rep, g_c, "verify_grsk");
        }
        if (vi->parsed()) {
            json cfg = load_config(vi, i_c,
                                   {{"--n", "n", i_n},
                                    {"--m", "m", i_m},
                                    {"--samples", "samples", i_samples},
                                    {"--level", "level", i_level}});
            require_seed(cfg);
            lgp_status st = lgp_verify_identity(cfg.dump().c_str(), &rep);
            return emit(st, rep, i_c, "verify_identity");
        }
        if (vl->parsed()) {
            std::vector<FlagValue> flags{
                {"--n", "n", l_n}, {"--m", "m", l_m}, {"--samples", "samples", l_samples}};
            if (!l_r.empty()) flags.push_back({"--r", "r", l_r});
            json cfg = load_config(vl, l_c, flags);
            require_seed(cfg);
            lgp_status st = lgp_verify_laplace(cfg.dump().c_str(), &rep);
            return emit(st, rep, l_c, "verify_laplace");
        }
        if (vw->parsed()) {
            json cfg = load_config(vw, w_c, {{"--identity", "identity", w_identity}});
            lgp_status st = lgp_verify_whittaker(cfg.dump().c_str(), &rep);
            return emit(st, rep, w_c, "verify_whittaker");
        }
        auto run_dist = [&](CLI::App* cmd, DistOpts& o, const char* kind) {
            json grid_keys;
            if (!parse_t_grid(o.t_grid, grid_keys))
                throw CLI::ValidationError("--t-grid", "expected from:to:step");
            std::vector<FlagValue> flags{{"--t-grid", "t_from", grid_keys["t_from"]},
                                         {"--t-grid", "t_to", grid_keys["t_to"]},
                                         {"--t-grid", "t_step", grid_keys["t_step"]},
                                         {"--nodes-per-leg", "nodes_per_leg", o.nodes_per_leg}};
            if (!o.b.empty()) flags.push_back({"--b", "b", o.b});
            json cfg = load_config(cmd, o.common, flags);
            cfg["kind"] = kind;
            lgp_status st = lgp_dist_table(cfg.dump().c_str(), &rep);
            return emit(st, rep, o.common, std::string("dist_") + kind);
        };
        if (dg->parsed()) return run_dist(dg, d_gue, "gue");
        if (db->parsed()) return run_dist(db, d_bbp, "bbp");
        if (dn->parsed()) return run_dist(dn, d_norm, "normal");
        if (ep->parsed()) {
            json cfg = load_config(ep, p_c,
                                   {{"--theta", "theta", p_theta},
                                    {"--theta0", "theta0", p_theta0},
                                    {"--p", "p", p_p},
                                    {"--n-list", "n_list", p_nlist},
                                    {"--replicas", "replicas", p_replicas},
                                    {"--scheme", "scheme", p_scheme},
                                    {"--law", "law", p_law}});
            require_seed(cfg);
            lgp_status st = lgp_experiment_phase(cfg.dump().c_str(), &rep);
            return emit(st, rep, p_c, "experiment_phase");
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

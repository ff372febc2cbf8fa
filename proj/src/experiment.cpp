#include "experiment.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace lgp {

double ModelSpec::sample_log_z(RngStream& rng) const {
    switch (scheme) {
        case ModelScheme::full_space: {
            WeightArray w = sample_weights(make_full_space_field(params, n, m), rng);
            return partition_point_to_point(w, n, n + m + 1).log_z.log_value;
        }
        case ModelScheme::trapezoid: {
            WeightArray w = sample_weights(make_trapezoid_field(params, n, m), rng);
            return partition_point_to_line(w, n, m).log_z.log_value;
        }
        case ModelScheme::symmetrized: {
            WeightArray w = sample_weights(make_symmetrized_field(params, n, m), rng);
            return partition_symmetrized(w, n, m).log_z.log_value;
        }
        case ModelScheme::boundary_full: {
            WeightArray w = sample_weights(make_boundary_field(theta, theta0, n, m, false), rng);
            return partition_point_to_point(w, n, m).log_z.log_value;
        }
        case ModelScheme::boundary_trapezoid: {
            WeightArray w = sample_weights(make_boundary_field(theta, theta0, n, m, true), rng);
            return partition_point_to_line(w, n, m - n - 1).log_z.log_value;
        }
        case ModelScheme::stationary:
            return partition_stationary(theta, theta0, n, m, rng).log_z.log_value;
    }
    throw std::logic_error("ModelSpec: unknown scheme");
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
    if (plan.replicas < 1) throw std::invalid_argument("run_experiment: need replicas >= 1");
    if (!(plan.scale > 0.0)) throw std::invalid_argument("run_experiment: scale must be positive");
    ExperimentResult res;
    res.log_z.assign(plan.replicas, 0.0);

    const int threads = std::max(1, plan.threads);
    auto worker = [&](int tid) {
        for (long rep = tid; rep < plan.replicas; rep += threads) {
            RngStream rng = RngStream::derive(plan.master_seed, static_cast<uint64_t>(rep));
            res.log_z[rep] = plan.model.sample_log_z(rng);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }

    res.standardized.resize(plan.replicas);
    for (long i = 0; i < plan.replicas; ++i)
        res.standardized[i] = (res.log_z[i] - plan.center) / plan.scale;
    res.distribution = EmpiricalDistribution::from_samples(res.standardized);
    return res;
}

std::string experiment_to_csv(const ExperimentPlan& plan, const ExperimentResult& r) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "# seed=%llu replicas=%ld center=%.17g scale=%.17g\n",
                  static_cast<unsigned long long>(plan.master_seed), plan.replicas, plan.center,
                  plan.scale);
    out += buf;
    out += "replica,log_z,standardized\n";
    for (size_t i = 0; i < r.log_z.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, r.log_z[i], r.standardized[i]);
        out += buf;
    }
    return out;
}

}  // namespace lgp

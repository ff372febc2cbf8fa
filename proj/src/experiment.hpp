#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "stats.hpp"

namespace lgp {

// Which partition function a replica samples.
enum class ModelScheme {
    full_space,           // Z(n, n+m+1), inhomogeneous parameters
    trapezoid,            // Z^flat(n; m), inhomogeneous parameters
    symmetrized,          // Z^symflat(n; m)
    boundary_full,        // Z(n, m) under the boundary-perturbed scheme
    boundary_trapezoid,   // Z^flat of the boundary-perturbed trapezoid
    stationary,           // stationary quadrant model
};

struct ModelSpec {
    ModelScheme scheme = ModelScheme::full_space;
    int n = 1, m = 0;               // sizes in the scheme's own convention
    ParameterSet params;            // inhomogeneous schemes
    double theta = 0.0, theta0 = 0.0;  // boundary / stationary schemes

    // log Z for one replica on the given stream.
    double sample_log_z(RngStream& rng) const;
};

struct ExperimentPlan {
    ModelSpec model;
    long replicas = 100;
    uint64_t master_seed = 0;
    double center = 0.0;
    double scale = 1.0;
    int threads = 1;
};

struct ExperimentResult {
    std::vector<double> log_z;          // by replica index
    std::vector<double> standardized;   // (log_z - center) / scale
    EmpiricalDistribution distribution;  // sorted standardized samples
};

// Samples R replicas on keyed streams; bitwise deterministic for a given
// plan regardless of thread count.
ExperimentResult run_experiment(const ExperimentPlan& plan);

// replica,log_z,standardized rows under a config-echo comment header.
std::string experiment_to_csv(const ExperimentPlan& plan, const ExperimentResult& r);

}  // namespace lgp

#pragma once

#include <limits>
#include <vector>

#include "special_functions.hpp"

namespace lgp {

struct AsymptoticConfig {
    double theta = 1.0;
    double theta0 = 1.0;
    int n = 1;
    int m = 1;
    double p() const { return static_cast<double>(m) / n; }
};

struct PhaseConstants {
    double theta_c = 0.0;
    double f = 0.0;       // -psi(theta_c) - p psi(theta - theta_c)
    double f_bar = 0.0;   // same with theta0 in place of theta_c
    double sigma = 0.0;   // ((-psi''(theta_c) - p psi''(theta - theta_c)) / 2)^{1/3}
};

// Unique root of psi'(x) - p psi'(theta - x) on (0, theta), by bisection.
double solve_theta_c(double theta, double p);

PhaseConstants phase_constants(const AsymptoticConfig& cfg);

// Contours for the limit-law kernels: two straight wedge legs through the
// real anchors, angles 3pi/4 (left contour) and pi/4 (right contour).
// NaN anchors request the automatic placement that keeps the cubic-exponent
// growth along both contours small for the given t.
struct FredholmSpec {
    double c0 = std::numeric_limits<double>::quiet_NaN();
    double d0 = std::numeric_limits<double>::quiet_NaN();
    double leg_length = 12.0;
    int nodes_per_leg = 64;
};

// GUE Tracy-Widom distribution function, via the contour Fredholm
// determinant det(1 + K) with the kernel commuted onto the right contour.
double f_gue(double t, const FredholmSpec& spec = {});

// Baik-Ben Arous-Peche distribution with parameter vector b; empty b
// degenerates to the GUE kernel.
double f_bbp(double t, const std::vector<double>& b, const FredholmSpec& spec = {});

// Standard normal distribution function, |error| <= 1e-14.
double gaussian_cdf(double t);

}  // namespace lgp

#pragma once

#include <span>
#include <string>
#include <vector>

#include "special_functions.hpp"

namespace lgp {

// Quadrature controls for the Givental-type integrals.  All integrals are
// taken in the variables u = log z, where the integrands decay
// double-exponentially on the compact side and exponentially on the
// power-law side; [u_min, u_max] is extended automatically until the
// boundary integrand is negligible against the peak.
struct QuadratureSpec {
    enum class Method { iterated_1d, tensor_gauss, monte_carlo };
    Method method = Method::tensor_gauss;
    int nodes = 0;  // per dimension; 0 picks a default based on the dimension
    double u_min = -12.0;
    double u_max = 12.0;
    long mc_samples = 200000;
};

struct WhittakerResult {
    LogPositive value;
    double rel_err = 0.0;
    int nodes_used = 0;
};

// gl_n Whittaker function, n <= 3 for quadrature (integral dimension
// n(n-1)/2); n = 1 is the exact power x^alpha.
WhittakerResult whittaker_gl(std::span<const double> alpha, std::span<const double> x,
                             const QuadratureSpec& spec);

// so_{2n+1} Whittaker function, n <= 2 for quadrature (dimension n^2).
WhittakerResult whittaker_so(std::span<const double> alpha, std::span<const double> x,
                             const QuadratureSpec& spec);

struct TFunctionQuery {
    double alpha_circ = 0.0;
    std::vector<double> beta;
    double r = 1.0;
    std::vector<double> x;
};

// The T function; m = 0 uses the closed-form convention, otherwise an
// n*m-dimensional integral (capped at 4 for quadrature).
WhittakerResult t_function(const TFunctionQuery& q, const QuadratureSpec& spec);

enum class TransformIdentity { stade, t_transform, so_transform };

struct TransformParams {
    double alpha_circ = 0.0;
    std::vector<double> alpha;
    std::vector<double> beta;
    double r = 1.0;
    double mu = 0.0;      // so_transform only
    double lambda = 0.0;  // so_transform evaluation point (real slice)
};

struct TransformReport {
    std::string identity;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double discrepancy = 0.0;  // relative, on the linear scale
    double tol = 0.0;
    int nodes_used = 0;
    bool pass = false;
};

// Evaluates both sides of the named Gamma-product identity and reports the
// relative discrepancy.  Left side by quadrature, right side in closed form.
TransformReport verify_transform(TransformIdentity id, const TransformParams& p,
                                 const QuadratureSpec& spec, double tol);

}  // namespace lgp

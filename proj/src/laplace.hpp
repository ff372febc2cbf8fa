#pragma once

#include <span>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "special_functions.hpp"

namespace lgp {

enum class ContourVariant { trapezoid, fullspace };

struct LaplaceQuery {
    double r = 1.0;
    double mu = 0.0;  // 0 = automatic: binding lower bound + 1/2
    ParameterSet params;
    int n = 1, m = 0;
    ContourVariant variant = ContourVariant::trapezoid;
};

// Discretization of (mu + i R)^n: unit panels of Gauss-Legendre nodes on
// [-T, T], symmetric about the real axis.
struct ContourGrid {
    double truncation = 40.0;
    int nodes_per_unit = 32;
};

// Sklyanin density s_n(lambda); continuous through coincident points where
// the reciprocal Gamma vanishes.
Complex sklyanin_weight(std::span<const Complex> lambda);

struct ContourResult {
    double value = 0.0;
    double im_residual = 0.0;     // |Im| of the full sum, relative to |Re|
    double err_est = 0.0;         // relative, from the half-truncation sum
    double mu_used = 0.0;
    std::string binding;          // which mu constraint was binding
};

// E[e^{-r Z}] for the parametrized models by n-fold contour quadrature,
// n <= 2.  The trapezoid and fullspace variants evaluate the same Gamma
// product in the two groupings the formulas are stated in.
ContourResult laplace_contour(const LaplaceQuery& query, const ContourGrid& grid);

// Largest relative disagreement of the two variant integrands over the grid
// nodes of the first variable (a transcription check of the two formulas).
double contour_integrand_agreement(const LaplaceQuery& query, const ContourGrid& grid);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long replicas = 0;
};

// Monte Carlo estimate of E[e^{-r Z}] for the trapezoid (point-to-line) or
// fullspace (point-to-point) model; one Z sample serves every r.
std::vector<McEstimate> laplace_mc(const LaplaceQuery& query, std::span<const double> r_values,
                                   long replicas, uint64_t master_seed);

}  // namespace lgp

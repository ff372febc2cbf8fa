#pragma once

#include <functional>
#include <vector>

namespace lgp {

struct GaussLegendre {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Nodes/weights for n-point Gauss-Legendre on [-1, 1]; cached per n.
const GaussLegendre& gauss_legendre(int n);

// Nodes/weights mapped to [a, b].
void gauss_legendre_on(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace lgp

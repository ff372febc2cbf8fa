#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lgp {

namespace {

GaussLegendre compute_gl(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendre g;
    g.x.resize(n);
    g.w.resize(n);
    // Newton iteration from the Chebyshev-like initial guess.
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.x[k] = -x;
        g.w[k] = w;
        g.x[n - 1 - k] = x;
        g.w[n - 1 - k] = w;
    }
    if (n % 2 == 1) {
        // recompute the centre weight exactly at x = 0
        double p0 = 1.0, p1 = 0.0;
        for (int j = 2; j <= n; ++j) {
            double p2 = (-(j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (-p0) / (-1.0);
        g.x[n / 2] = 0.0;
        g.w[n / 2] = 2.0 / (dp * dp);
    }
    return g;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

void gauss_legendre_on(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    const GaussLegendre& g = gauss_legendre(n);
    x.resize(n);
    w.resize(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x[i] = mid + half * g.x[i];
        w[i] = half * g.w[i];
    }
}

}  // namespace lgp

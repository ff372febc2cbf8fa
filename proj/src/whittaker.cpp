#include "whittaker.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "quadrature.hpp"
#include "rng.hpp"

namespace lgp {

namespace {

constexpr double kDropLog = 46.0;   // boundary cut: e^{-46} relative to the peak
constexpr double kWindowCap = 300.0;

int default_nodes(int dim) {
    switch (dim) {
        case 1: return 200;
        case 2: return 96;
        case 3: return 56;
        default: return 32;
    }
}

using LogIntegrand = std::function<double(std::span<const double>)>;

struct TensorResult {
    double log_value;
    double rel_err;
    int nodes;
};

// Locate the peak of f by coordinate-wise scans, then set per-dimension
// windows where the log-integrand has dropped kDropLog below the peak.
// A plain tensor Gauss-Legendre rule is then applied, with a half-resolution
// pass providing the error estimate.
TensorResult tensor_integrate(int dim, const QuadratureSpec& spec, const LogIntegrand& f) {
    std::vector<double> center(dim, 0.0);
    double fpeak = f(center);
    for (int pass = 0; pass < 3; ++pass) {
        for (int d = 0; d < dim; ++d) {
            double best_u = center[d], best_f = fpeak;
            for (int k = 0; k <= 96; ++k) {
                double u = spec.u_min + (spec.u_max - spec.u_min) * k / 96.0;
                std::vector<double> p = center;
                p[d] = u;
                double v = f(p);
                if (v > best_f) {
                    best_f = v;
                    best_u = u;
                }
            }
            center[d] = best_u;
            fpeak = best_f;
        }
    }
    if (!std::isfinite(fpeak))
        throw AccuracyError("tensor_integrate: could not locate a finite peak");

    std::vector<double> lo(dim), hi(dim);
    for (int d = 0; d < dim; ++d) {
        std::vector<double> p = center;
        double u = center[d];
        while (u > -kWindowCap) {
            u -= 0.5;
            p[d] = u;
            if (f(p) < fpeak - kDropLog) break;
        }
        lo[d] = u;
        u = center[d];
        while (u < kWindowCap) {
            u += 0.5;
            p[d] = u;
            if (f(p) < fpeak - kDropLog) break;
        }
        hi[d] = u;
    }

    if (spec.method == QuadratureSpec::Method::monte_carlo) {
        RngStream rng = RngStream::derive(0x5eedf00dULL, 0);
        long n = std::max<long>(spec.mc_samples, 1000);
        double vol = 1.0;
        for (int d = 0; d < dim; ++d) vol *= hi[d] - lo[d];
        double s = 0.0, s2 = 0.0;
        std::vector<double> p(dim);
        for (long k = 0; k < n; ++k) {
            for (int d = 0; d < dim; ++d) p[d] = lo[d] + (hi[d] - lo[d]) * rng.uniform01();
            double v = std::exp(f(p) - fpeak);
            s += v;
            s2 += v * v;
        }
        double mean = s / n;
        double var = std::max(0.0, s2 / n - mean * mean);
        double stderr_rel = std::sqrt(var / n) / mean;
        return {fpeak + std::log(mean * vol), stderr_rel, static_cast<int>(n)};
    }

    auto run = [&](int nodes) {
        std::vector<std::vector<double>> xs(dim), ws(dim);
        for (int d = 0; d < dim; ++d) gauss_legendre_on(nodes, lo[d], hi[d], xs[d], ws[d]);
        double sum = 0.0;
        std::vector<double> p(dim);
        std::vector<int> idx(dim, 0);
        for (;;) {
            double w = 1.0;
            for (int d = 0; d < dim; ++d) {
                p[d] = xs[d][idx[d]];
                w *= ws[d][idx[d]];
            }
            sum += w * std::exp(f(p) - fpeak);
            int d = 0;
            while (d < dim && ++idx[d] == nodes) idx[d++] = 0;
            if (d == dim) break;
        }
        return sum;
    };

    int nodes = spec.nodes > 0 ? std::max(spec.nodes, 8) : default_nodes(dim);
    double fine = run(nodes);
    double coarse = run(std::max(8, nodes / 2));
    if (!(fine > 0.0))
        throw AccuracyError("tensor_integrate: non-positive quadrature sum");
    return {fpeak + std::log(fine), std::abs(fine - coarse) / fine, nodes};
}

void require_positive(std::span<const double> x, const char* who) {
    for (double v : x)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": evaluation point must be positive");
}

// log integrand of the gl_n Givental integral; u holds log z_{i,j} for
// i < n row-major, the bottom row is pinned to x.
double gl_log_integrand(std::span<const double> alpha, std::span<const double> x,
                        std::span<const double> u) {
    const int n = static_cast<int>(alpha.size());
    auto log_z = [&](int i, int j) -> double {
        // defined for 1 <= j <= i <= n only
        if (i < n) return u[i * (i - 1) / 2 + (j - 1)];
        return std::log(x[j - 1]);
    };
    double s = 0.0;
    double prev_row = 0.0;
    for (int i = 1; i <= n; ++i) {
        double row = 0.0;
        for (int j = 1; j <= i; ++j) row += log_z(i, j);
        s += alpha[i - 1] * (row - prev_row);
        prev_row = row;
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= i; ++j) {
            double denom = log_z(i, j);
            if (i + 1 <= n && j + 1 <= i + 1) s -= std::exp(log_z(i + 1, j + 1) - denom);
            if (i - 1 >= 1 && j <= i - 1) s -= std::exp(log_z(i - 1, j) - denom);
        }
    }
    return s;
}

// log integrand of the so_{2n+1} integral; u holds log z_{i,j} for i < 2n,
// j <= ceil(i/2); entries beyond ceil(i/2) equal 1 by convention.
double so_log_integrand(std::span<const double> alpha, std::span<const double> x,
                        std::span<const double> u, const std::vector<int>& row_offset) {
    const int n = static_cast<int>(alpha.size());
    const int depth = 2 * n;
    auto width = [](int i) { return (i + 1) / 2; };
    auto log_z = [&](int i, int j) -> double {
        if (j > width(i)) return 0.0;  // log 1
        if (i == depth) return std::log(x[j - 1]);
        return u[row_offset[i - 1] + (j - 1)];
    };
    double s = 0.0;
    double prev_row = 0.0;
    for (int i = 1; i <= depth; ++i) {
        double row = 0.0;
        for (int j = 1; j <= width(i); ++j) row += log_z(i, j);
        double expo = (i % 2 == 1) ? alpha[(i - 1) / 2] : -alpha[i / 2 - 1];
        s += expo * (row - prev_row);
        prev_row = row;
    }
    for (int i = 1; i < depth; ++i) {
        for (int j = 1; j <= width(i); ++j) {
            double z_ij = log_z(i, j);
            s -= std::exp(log_z(i + 1, j + 1) - z_ij);
            s -= std::exp(z_ij - log_z(i + 1, j));
        }
    }
    return s;
}

// log integrand of the T function; u holds log t_{i,j} for i = 1..n,
// j = i..i+m-1 row-major, with t_{i,i+m} pinned to x_i.
double t_log_integrand(const TFunctionQuery& q, std::span<const double> u) {
    const int n = static_cast<int>(q.x.size());
    const int m = static_cast<int>(q.beta.size());
    const double log_r = std::log(q.r);
    auto log_t = [&](int i, int j) -> double {
        if (j == i + m) return std::log(q.x[i - 1]);
        return u[(i - 1) * m + (j - i)];
    };
    double s = 0.0;
    for (int i = 1; i <= n; ++i) {
        double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
        s += q.alpha_circ * sign * (log_r + log_t(i, i));
    }
    for (int j = 1; j <= m; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= n; ++i) acc += log_t(i, i + j) - log_t(i, i + j - 1);
        s += q.beta[j - 1] * acc;
    }
    s -= q.r * std::exp(log_t(1, 1));
    for (int i = 2; i <= n; ++i)
        for (int j = i; j <= i + m - 1; ++j) s -= std::exp(log_t(i, j) - log_t(i - 1, j));
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= i + m - 1; ++j) s -= std::exp(log_t(i, j + 1) - log_t(i, j));
    return s;
}

}  // namespace

WhittakerResult whittaker_gl(std::span<const double> alpha, std::span<const double> x,
                             const QuadratureSpec& spec) {
    const int n = static_cast<int>(alpha.size());
    if (n < 1 || static_cast<int>(x.size()) != n)
        throw std::invalid_argument("whittaker_gl: alpha and x must have equal size n >= 1");
    require_positive(x, "whittaker_gl");
    if (n == 1)
        return {LogPositive::from_log(alpha[0] * std::log(x[0])), 0.0, 0};
    const int dim = n * (n - 1) / 2;
    if (spec.method != QuadratureSpec::Method::monte_carlo && dim > 3)
        throw CapabilityError("whittaker_gl: quadrature limited to n <= 3");
    auto r = tensor_integrate(dim, spec,
                              [&](std::span<const double> u) { return gl_log_integrand(alpha, x, u); });
    return {LogPositive::from_log(r.log_value), r.rel_err, r.nodes};
}

WhittakerResult whittaker_so(std::span<const double> alpha, std::span<const double> x,
                             const QuadratureSpec& spec) {
    const int n = static_cast<int>(alpha.size());
    if (n < 1 || static_cast<int>(x.size()) != n)
        throw std::invalid_argument("whittaker_so: alpha and x must have equal size n >= 1");
    require_positive(x, "whittaker_so");
    const int dim = n * n;
    if (spec.method != QuadratureSpec::Method::monte_carlo && dim > 4)
        throw CapabilityError("whittaker_so: quadrature limited to n <= 2");
    std::vector<int> row_offset(2 * n, 0);
    int acc = 0;
    for (int i = 1; i < 2 * n; ++i) {
        row_offset[i - 1] = acc;
        acc += (i + 1) / 2;
    }
    auto r = tensor_integrate(
        dim, spec, [&](std::span<const double> u) { return so_log_integrand(alpha, x, u, row_offset); });
    return {LogPositive::from_log(r.log_value), r.rel_err, r.nodes};
}

WhittakerResult t_function(const TFunctionQuery& q, const QuadratureSpec& spec) {
    const int n = static_cast<int>(q.x.size());
    const int m = static_cast<int>(q.beta.size());
    if (n < 1) throw std::invalid_argument("t_function: need at least one x");
    if (!(q.r > 0.0)) throw std::invalid_argument("t_function: r must be positive");
    require_positive(q.x, "t_function");
    if (m == 0) {
        double s = -q.r * q.x[0];
        for (int i = 1; i <= n; ++i) {
            double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
            s += q.alpha_circ * sign * std::log(q.r * q.x[i - 1]);
        }
        return {LogPositive::from_log(s), 0.0, 0};
    }
    const int dim = n * m;
    if (spec.method != QuadratureSpec::Method::monte_carlo && dim > 4)
        throw CapabilityError("t_function: quadrature limited to n*m <= 4");
    auto r = tensor_integrate(dim, spec,
                              [&](std::span<const double> u) { return t_log_integrand(q, u); });
    return {LogPositive::from_log(r.log_value), r.rel_err, r.nodes};
}

namespace {

double stade_rhs_log(const TransformParams& p) {
    const int n = static_cast<int>(p.alpha.size());
    double sum_alpha = 0.0;
    for (double a : p.alpha) sum_alpha += a;
    double s = -sum_alpha * std::log(p.r);
    for (int i = 0; i < n; ++i) {
        s += ln_gamma(p.alpha[i] + p.alpha_circ);
        for (int j = i + 1; j < n; ++j) s += ln_gamma(p.alpha[i] + p.alpha[j]);
    }
    return s;
}

double t_transform_rhs_log(const TransformParams& p) {
    double s = stade_rhs_log(p);
    for (double a : p.alpha)
        for (double b : p.beta) s += ln_gamma(a + b);
    return s;
}

}  // namespace

TransformReport verify_transform(TransformIdentity id, const TransformParams& p,
                                 const QuadratureSpec& spec, double tol) {
    TransformReport rep;
    rep.tol = tol;
    const int n = static_cast<int>(p.alpha.size());
    if (n < 1) throw std::invalid_argument("verify_transform: need at least one alpha");
    if (!(p.r > 0.0)) throw std::invalid_argument("verify_transform: r must be positive");

    switch (id) {
        case TransformIdentity::stade: {
            rep.identity = "stade";
            if (n > 2) throw CapabilityError("verify_transform: stade limited to n <= 2");
            for (int i = 0; i < n; ++i) {
                if (p.alpha[i] + p.alpha_circ <= 0.0)
                    throw std::invalid_argument("verify_transform: stade needs alpha_i + alpha_circ > 0");
                for (int j = 0; j < i; ++j)
                    if (p.alpha[i] + p.alpha[j] <= 0.0)
                        throw std::invalid_argument("verify_transform: stade needs alpha_i + alpha_j > 0");
            }
            auto f = [&](std::span<const double> u) {
                double s = 0.0;
                for (int i = 1; i <= n; ++i) {
                    double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
                    s += p.alpha_circ * sign * (std::log(p.r) + u[i - 1]);
                }
                s -= p.r * std::exp(u[0]);
                std::vector<double> x(n);
                for (int i = 0; i < n; ++i) x[i] = std::exp(u[i]);
                if (n == 1) {
                    s += p.alpha[0] * u[0];
                } else {
                    QuadratureSpec inner = spec;
                    inner.nodes = spec.nodes > 0 ? spec.nodes : 160;
                    s += whittaker_gl(p.alpha, x, inner).value.log_value;
                }
                return s;
            };
            auto r = tensor_integrate(n, spec, f);
            rep.lhs_log = r.log_value;
            rep.nodes_used = r.nodes;
            rep.rhs_log = stade_rhs_log(p);
            break;
        }
        case TransformIdentity::t_transform: {
            rep.identity = "t-transform";
            const int m = static_cast<int>(p.beta.size());
            if (n > 2 || n * std::max(m, 1) > 4)
                throw CapabilityError("verify_transform: t-transform limited to n <= 2, n*m <= 4");
            for (int i = 0; i < n; ++i) {
                if (p.alpha_circ + p.alpha[i] <= 0.0)
                    throw std::invalid_argument("verify_transform: needs alpha_circ + alpha_i > 0");
                for (int j = i + 1; j < n; ++j)
                    if (p.alpha[i] + p.alpha[j] <= 0.0)
                        throw std::invalid_argument("verify_transform: needs alpha_i + alpha_j > 0");
                for (int k = 0; k < m; ++k)
                    if (p.alpha[i] + p.beta[k] <= 0.0)
                        throw std::invalid_argument("verify_transform: needs alpha_i + beta_k > 0");
            }
            auto f = [&](std::span<const double> u) {
                TFunctionQuery q;
                q.alpha_circ = p.alpha_circ;
                q.beta = p.beta;
                q.r = p.r;
                q.x.resize(n);
                for (int i = 0; i < n; ++i) q.x[i] = std::exp(u[i]);
                QuadratureSpec inner = spec;
                inner.nodes = spec.nodes > 0 ? spec.nodes : (n * m <= 1 ? 160 : 64);
                double s = t_function(q, inner).value.log_value;
                if (n == 1) {
                    s += p.alpha[0] * u[0];
                } else {
                    std::vector<double> x = q.x;
                    QuadratureSpec gl_inner = inner;
                    s += whittaker_gl(p.alpha, x, gl_inner).value.log_value;
                }
                return s;
            };
            auto r = tensor_integrate(n, spec, f);
            rep.lhs_log = r.log_value;
            rep.nodes_used = r.nodes;
            rep.rhs_log = t_transform_rhs_log(p);
            break;
        }
        case TransformIdentity::so_transform: {
            rep.identity = "so-transform";
            if (n > 1)
                throw CapabilityError(
                    "verify_transform: so-transform quadrature limited to n = 1 "
                    "(n = 2 would need a 6-dimensional integral)");
            double mu = p.mu, lam = p.lambda, a = p.alpha[0];
            if (!(mu > std::abs(a)))
                throw std::invalid_argument("verify_transform: so-transform needs mu > |alpha|");
            if (!(mu - lam > std::abs(a)))
                throw std::invalid_argument("verify_transform: so-transform needs mu - lambda > |alpha|");
            auto f = [&](std::span<const double> u) {
                double x = std::exp(u[0]);
                QuadratureSpec inner = spec;
                inner.nodes = spec.nodes > 0 ? spec.nodes : 160;
                double psi = whittaker_so(p.alpha, std::span<const double>(&x, 1), inner).value.log_value;
                return (lam - mu) * u[0] + psi;
            };
            auto r = tensor_integrate(1, spec, f);
            rep.lhs_log = r.log_value;
            rep.nodes_used = r.nodes;
            rep.rhs_log = ln_gamma(mu - lam + a) + ln_gamma(mu - lam - a);
            break;
        }
    }

    rep.discrepancy = std::abs(std::expm1(rep.lhs_log - rep.rhs_log));
    rep.pass = rep.discrepancy <= tol;
    return rep;
}

}  // namespace lgp

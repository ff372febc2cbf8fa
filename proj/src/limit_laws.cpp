#include "limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "quadrature.hpp"

namespace lgp {

double solve_theta_c(double theta, double p) {
    if (!(theta > 0.0) || !(p > 0.0))
        throw std::invalid_argument("solve_theta_c: need theta > 0 and p > 0");
    auto h = [&](double x) { return trigamma(x) - p * trigamma(theta - x); };
    // h decreases from +inf to -inf on (0, theta).
    double lo = theta * 1e-12, hi = theta * (1.0 - 1e-12);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

PhaseConstants phase_constants(const AsymptoticConfig& cfg) {
    if (!(cfg.theta > 0.0)) throw std::invalid_argument("phase_constants: theta must be positive");
    double p = cfg.p();
    PhaseConstants c;
    c.theta_c = solve_theta_c(cfg.theta, p);
    c.f = -digamma(c.theta_c) - p * digamma(cfg.theta - c.theta_c);
    double s3 = (-tetragamma(c.theta_c) - p * tetragamma(cfg.theta - c.theta_c)) / 2.0;
    c.sigma = std::cbrt(s3);
    if (!(cfg.theta0 > 0.0) || !(cfg.theta0 < cfg.theta))
        throw std::invalid_argument("phase_constants: f_bar needs 0 < theta0 < theta");
    c.f_bar = -digamma(cfg.theta0) - p * digamma(cfg.theta - cfg.theta0);
    return c;
}

double gaussian_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

namespace {

using CLD = std::complex<long double>;

// Growth exponents of the kernel factors along the two wedges.
double exp_c_leg(double c0, double t, double s) {
    double x = c0 - s * M_SQRT1_2, y = s * M_SQRT1_2;
    double re_v3 = x * (x * x - 3.0 * y * y);
    return -re_v3 / 3.0 + t * x;
}

double exp_d_leg(double d0, double t, double s) {
    double x = d0 + s * M_SQRT1_2, y = s * M_SQRT1_2;
    double re_w3 = x * (x * x - 3.0 * y * y);
    return re_w3 / 3.0 - t * x;
}

double leg_max(double anchor, double t, double L, bool d_side) {
    double mx = -1e300;
    for (double s = 0.0; s <= L; s += 0.125)
        mx = std::max(mx, d_side ? exp_d_leg(anchor, t, s) : exp_c_leg(anchor, t, s));
    return mx;
}

// Choose real anchors so that the cubic exponent stays small along both
// contours for this t; a fixed anchor loses double precision once t is a few
// units negative.
void pick_anchors(double t, double b_floor, double L, double& c0, double& d0) {
    double best = 1e300;
    for (double cand = -2.0; cand <= 3.01; cand += 0.25) {
        if (cand < b_floor) continue;
        for (double gap : {0.5, 1.0}) {
            double score = leg_max(cand, t, L, false) + leg_max(cand + gap, t, L, true);
            if (score < best) {
                best = score;
                c0 = cand;
                d0 = cand + gap;
            }
        }
    }
}

struct ContourNodes {
    std::vector<CLD> z;   // node positions
    std::vector<CLD> w;   // complex weights including leg direction
};

// Legs parametrized from the anchor outward; orientation bottom-to-top on
// both contours.
ContourNodes build_wedge(double anchor, double angle, double L, int nodes_per_leg) {
    ContourNodes out;
    std::vector<double> x, w;
    gauss_legendre_on(nodes_per_leg, 0.0, L, x, w);
    CLD up = std::exp(CLD(0.0, angle));
    CLD down = std::conj(up);
    for (int i = nodes_per_leg - 1; i >= 0; --i) {
        out.z.push_back(CLD(anchor) + static_cast<long double>(x[i]) * down);
        out.w.push_back(-static_cast<long double>(w[i]) * down);
    }
    for (int i = 0; i < nodes_per_leg; ++i) {
        out.z.push_back(CLD(anchor) + static_cast<long double>(x[i]) * up);
        out.w.push_back(static_cast<long double>(w[i]) * up);
    }
    return out;
}

// det(1 + G) by LU with partial pivoting.
CLD det_one_plus(std::vector<CLD>& g, int n) {
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i) * n + i] += 1.0L;
    CLD det(1.0L, 0.0L);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        long double best = std::abs(g[static_cast<size_t>(c) * n + c]);
        for (int r = c + 1; r < n; ++r) {
            long double v = std::abs(g[static_cast<size_t>(r) * n + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv != c) {
            for (int cc = 0; cc < n; ++cc)
                std::swap(g[static_cast<size_t>(piv) * n + cc], g[static_cast<size_t>(c) * n + cc]);
            det = -det;
        }
        CLD d = g[static_cast<size_t>(c) * n + c];
        if (d == CLD(0.0L, 0.0L)) return CLD(0.0L, 0.0L);
        det *= d;
        for (int r = c + 1; r < n; ++r) {
            CLD f = g[static_cast<size_t>(r) * n + c] / d;
            if (f == CLD(0.0L, 0.0L)) continue;
            for (int cc = c + 1; cc < n; ++cc)
                g[static_cast<size_t>(r) * n + cc] -= f * g[static_cast<size_t>(c) * n + cc];
        }
    }
    return det;
}

// One Nystrom evaluation of det(1 + K) with the kernel commuted onto the
// right contour: entries (m, m') = F(w_{m'}) q_{m'} sum_i c_i E(v_i) /
// ((w_m - v_i)(v_i - w_{m'})) with E, F the cubic exponential factors and the
// b-dependent rational factor split between the two sides.
double fredholm_once(double t, const std::vector<double>& b, double c0, double d0, double L,
                     int nodes_per_leg) {
    ContourNodes C = build_wedge(c0, 3.0 * M_PI / 4.0, L, nodes_per_leg);
    ContourNodes D = build_wedge(d0, M_PI / 4.0, L, nodes_per_leg);
    const int nc = static_cast<int>(C.z.size());
    const int nd = static_cast<int>(D.z.size());

    // Every contour integral in the Fredholm expansion carries the
    // dz/(2 pi i) normalization; with plain dz the determinant is not even
    // real.  Checked against the real-line Airy-kernel evaluation.
    const CLD two_pi_i(0.0L, 2.0L * M_PI);
    std::vector<CLD> ev(nc);
    for (int i = 0; i < nc; ++i) {
        CLD v = C.z[i];
        CLD e = std::exp(-v * v * v / 3.0L + CLD(t) * v);
        for (double bk : b) e /= (v - CLD(bk));
        ev[i] = C.w[i] * e / two_pi_i;
    }
    std::vector<CLD> fw(nd);
    for (int m = 0; m < nd; ++m) {
        CLD w = D.z[m];
        CLD e = std::exp(w * w * w / 3.0L - CLD(t) * w);
        for (double bk : b) e *= (w - CLD(bk));
        fw[m] = D.w[m] * e / two_pi_i;
    }

    // G = P R with P_{m,i} = 1/(w_m - v_i), R_{i,m'} = ev_i/(v_i - w_{m'}),
    // then columns scaled by fw.
    std::vector<CLD> P(static_cast<size_t>(nd) * nc), R(static_cast<size_t>(nc) * nd);
    for (int m = 0; m < nd; ++m)
        for (int i = 0; i < nc; ++i) P[static_cast<size_t>(m) * nc + i] = 1.0L / (D.z[m] - C.z[i]);
    for (int i = 0; i < nc; ++i)
        for (int m = 0; m < nd; ++m) R[static_cast<size_t>(i) * nd + m] = ev[i] / (C.z[i] - D.z[m]);
    std::vector<CLD> G(static_cast<size_t>(nd) * nd, CLD(0.0L, 0.0L));
    for (int m = 0; m < nd; ++m) {
        for (int i = 0; i < nc; ++i) {
            CLD pmi = P[static_cast<size_t>(m) * nc + i];
            const CLD* row = &R[static_cast<size_t>(i) * nd];
            CLD* grow = &G[static_cast<size_t>(m) * nd];
            for (int mm = 0; mm < nd; ++mm) grow[mm] += pmi * row[mm];
        }
    }
    for (int m = 0; m < nd; ++m)
        for (int mm = 0; mm < nd; ++mm) G[static_cast<size_t>(m) * nd + mm] *= fw[mm];

    CLD det = det_one_plus(G, nd);
    double re = static_cast<double>(det.real());
    double im = static_cast<double>(det.imag());
    if (std::abs(im) > 1e-7 * std::max(1.0, std::abs(re)))
        throw AccuracyError("fredholm: non-real determinant, discretization too coarse");
    return re;
}

double fredholm_cdf(double t, const std::vector<double>& b, const FredholmSpec& spec) {
    double b_floor = -1e300;
    for (double bk : b) b_floor = std::max(b_floor, bk + 0.5);
    double c0 = spec.c0, d0 = spec.d0;
    if (std::isnan(c0) || std::isnan(d0)) {
        pick_anchors(t, b_floor, spec.leg_length, c0, d0);
        if (!std::isnan(spec.c0)) c0 = spec.c0;
        if (!std::isnan(spec.d0)) d0 = spec.d0;
    }
    if (!b.empty() && c0 <= b_floor - 0.5)
        throw std::invalid_argument("fredholm: left contour must pass right of every b_k");
    if (!(d0 > c0)) throw std::invalid_argument("fredholm: need d0 > c0");

    // The oscillation budget grows like |t|^{3/2} on the negative side, so
    // the per-leg resolution scales with it; the two-grid comparison then
    // guards whatever the caller requested.
    int nodes = std::max(spec.nodes_per_leg,
                         64 + static_cast<int>(std::ceil(8.0 * std::pow(std::max(0.0, -t), 1.5))));
    double fine = fredholm_once(t, b, c0, d0, spec.leg_length, nodes);
    double coarse = fredholm_once(t, b, c0, d0, spec.leg_length, std::max(12, nodes - 24));
    if (std::abs(fine - coarse) > 2e-6 + 1e-4 * std::abs(fine))
        throw AccuracyError("fredholm: determinant not converged under node refinement");
    if (fine < -1e-6 || fine > 1.0 + 1e-6)
        throw AccuracyError("fredholm: determinant outside [0, 1]");
    return std::min(1.0, std::max(0.0, fine));
}

}  // namespace

double f_gue(double t, const FredholmSpec& spec) { return fredholm_cdf(t, {}, spec); }

double f_bbp(double t, const std::vector<double>& b, const FredholmSpec& spec) {
    return fredholm_cdf(t, b, spec);
}

}  // namespace lgp

#include "laplace.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"

namespace lgp {

Complex sklyanin_weight(std::span<const Complex> lambda) {
    const int n = static_cast<int>(lambda.size());
    Complex prod(1.0, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k) prod *= reciprocal_gamma(lambda[j] - lambda[k]);
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    Complex two_pi_i_pow = std::pow(Complex(0.0, 2.0 * M_PI), n);
    return prod / (two_pi_i_pow * fact);
}

namespace {

// log of the per-node Gamma product of the contour integrand, in the grouping
// of the named variant.  Both are the same function of lambda; only the
// association of factors differs, which the agreement check exercises.
Complex node_log_factor(const LaplaceQuery& q, Complex lambda) {
    const auto& p = q.params;
    const int n = q.n, m = q.m;
    Complex s = -lambda * std::log(q.r);
    for (int j = 0; j < n; ++j) s += complex_ln_gamma(lambda - p.alpha[j]);
    if (q.variant == ContourVariant::trapezoid) {
        s += complex_ln_gamma(lambda + p.alpha_circ);
        for (int j = 0; j < n; ++j) s += complex_ln_gamma(lambda + p.alpha[j]);
        for (int k = 0; k < m; ++k) s += complex_ln_gamma(lambda + p.beta[k]);
    } else {
        // concatenated column parameters alpha_circ | alpha | beta
        std::vector<double> hat;
        hat.reserve(n + m + 1);
        hat.push_back(p.alpha_circ);
        hat.insert(hat.end(), p.alpha.begin(), p.alpha.end());
        hat.insert(hat.end(), p.beta.begin(), p.beta.end());
        for (double a : hat) s += complex_ln_gamma(lambda + a);
    }
    return s;
}

// r^{sum alpha} / prod Gamma(alpha_i + hat_alpha_j): constant prefactor, log.
double log_prefactor(const LaplaceQuery& q) {
    const auto& p = q.params;
    double s = 0.0;
    for (int i = 0; i < q.n; ++i) {
        s += p.alpha[i] * std::log(q.r);
        s -= ln_gamma(p.alpha[i] + p.alpha_circ);
        for (int j = 0; j < q.n; ++j) s -= ln_gamma(p.alpha[i] + p.alpha[j]);
        for (int k = 0; k < q.m; ++k) s -= ln_gamma(p.alpha[i] + p.beta[k]);
    }
    return s;
}

double pick_mu(const LaplaceQuery& q, std::string* binding) {
    const auto& p = q.params;
    double max_alpha = *std::max_element(p.alpha.begin(), p.alpha.end());
    // fullspace as well needs mu > -hat_alpha_j for every column parameter
    double min_hat = p.alpha_circ;
    for (double a : p.alpha) min_hat = std::min(min_hat, a);
    for (double b : p.beta) min_hat = std::min(min_hat, b);
    double lower_pole = max_alpha;      // Gamma(lambda - alpha_j) poles
    double lower_decay = -min_hat;      // Gamma(lambda + hat_alpha_j) poles
    if (binding) *binding = lower_pole >= lower_decay ? "mu > max(alpha)" : "mu > -min(alpha_circ|alpha|beta)";
    return std::max(lower_pole, lower_decay) + 0.5;
}

struct Grid1d {
    std::vector<double> y, w;
};

Grid1d build_grid(const ContourGrid& g) {
    if (!(g.truncation > 0.0)) throw std::invalid_argument("ContourGrid: truncation must be positive");
    if (g.nodes_per_unit < 1) throw std::invalid_argument("ContourGrid: nodes_per_unit must be >= 1");
    int panels = std::max(1, static_cast<int>(std::ceil(g.truncation)));
    double h = g.truncation / panels;
    Grid1d out;
    std::vector<double> x, w;
    for (int p = -panels; p < panels; ++p) {
        gauss_legendre_on(g.nodes_per_unit, p * h, (p + 1) * h, x, w);
        out.y.insert(out.y.end(), x.begin(), x.end());
        out.w.insert(out.w.end(), w.begin(), w.end());
    }
    return out;
}

}  // namespace

ContourResult laplace_contour(const LaplaceQuery& q, const ContourGrid& grid) {
    const auto& p = q.params;
    p.validate();
    if (static_cast<int>(p.alpha.size()) != q.n || static_cast<int>(p.beta.size()) != q.m)
        throw std::invalid_argument("laplace_contour: parameter sizes must match (n, m)");
    if (q.n > 2) throw CapabilityError("laplace_contour: n-fold quadrature limited to n <= 2");
    if (!(q.r > 0.0)) throw std::invalid_argument("laplace_contour: r must be positive");
    if (q.variant == ContourVariant::trapezoid && q.m < q.n - 1)
        throw std::invalid_argument("laplace_contour: trapezoid contour formula needs m >= n - 1");

    ContourResult res;
    res.mu_used = q.mu;
    if (q.mu == 0.0) {
        res.mu_used = pick_mu(q, &res.binding);
    } else {
        std::string b;
        double need = pick_mu(q, &b) - 0.5;
        if (q.mu <= need)
            throw std::invalid_argument("laplace_contour: mu violates the contour constraint " + b);
        res.binding = b;
    }
    const double mu = res.mu_used;

    Grid1d g = build_grid(grid);
    const int N = static_cast<int>(g.y.size());

    // Per-node factors; the cross term (Sklyanin) couples nodes pairwise.
    std::vector<Complex> log_f(N);
    double peak = -1e300;
    for (int k = 0; k < N; ++k) {
        log_f[k] = node_log_factor(q, Complex(mu, g.y[k]));
        peak = std::max(peak, log_f[k].real());
    }
    double tail = -1e300;
    for (int k = 0; k < N; ++k)
        if (std::abs(g.y[k]) > grid.truncation - 1.0) tail = std::max(tail, log_f[k].real());
    if (tail > peak - 23.0)  // e^{-23} ~ 1e-10
        throw AccuracyError("laplace_contour: contour truncation too small for these parameters");

    const double pref = log_prefactor(q);
    Complex total(0.0, 0.0), half(0.0, 0.0);
    if (q.n == 1) {
        // measure: d lambda = i dy, s_1 = 1/(2 pi i)  =>  dy / (2 pi)
        for (int k = 0; k < N; ++k) {
            Complex term = std::exp(log_f[k] + pref) * (g.w[k] / (2.0 * M_PI));
            total += term;
            if (std::abs(g.y[k]) <= grid.truncation / 2.0) half += term;
        }
    } else {
        // s_2 cross factor: 1/(Gamma(z)Gamma(-z)) = dy * sinh(pi dy) / pi for
        // z = i dy; measure (2 pi)^{-2} / 2! per node pair.  Assembled in log
        // space so sinh of a large gap cannot overflow against a tiny factor.
        for (int k = 0; k < N; ++k) {
            bool k_in = std::abs(g.y[k]) <= grid.truncation / 2.0;
            for (int l = 0; l < N; ++l) {
                double dy = std::abs(g.y[k] - g.y[l]);
                double log_cross;
                if (dy < 1e-8) {
                    log_cross = dy > 0.0 ? 2.0 * std::log(dy) : -1e300;  // ~ dy^2
                } else if (dy > 20.0) {
                    log_cross = std::log(dy) + M_PI * dy - std::log(2.0 * M_PI);
                } else {
                    log_cross = std::log(dy * std::sinh(M_PI * dy) / M_PI);
                }
                double re = log_f[k].real() + log_f[l].real() + pref + log_cross;
                if (re < -720.0) continue;
                Complex term = std::exp(Complex(re, log_f[k].imag() + log_f[l].imag())) *
                               (g.w[k] * g.w[l] / (4.0 * M_PI * M_PI * 2.0));
                total += term;
                if (k_in && std::abs(g.y[l]) <= grid.truncation / 2.0) half += term;
            }
        }
    }

    res.value = total.real();
    res.im_residual = std::abs(total.imag()) / std::max(std::abs(total.real()), 1e-300);
    res.err_est = std::abs(total.real() - half.real()) / std::max(std::abs(total.real()), 1e-300);
    if (res.im_residual > 1e-8)
        throw AccuracyError("laplace_contour: imaginary residual above tolerance");
    return res;
}

double contour_integrand_agreement(const LaplaceQuery& query, const ContourGrid& grid) {
    LaplaceQuery qa = query, qb = query;
    qa.variant = ContourVariant::trapezoid;
    qb.variant = ContourVariant::fullspace;
    std::string binding;
    double mu = query.mu != 0.0 ? query.mu : pick_mu(query, &binding);
    Grid1d g = build_grid(grid);
    double worst = 0.0;
    for (double y : g.y) {
        Complex a = node_log_factor(qa, Complex(mu, y));
        Complex b = node_log_factor(qb, Complex(mu, y));
        worst = std::max(worst, std::abs(std::exp(a - b) - 1.0));
    }
    return worst;
}

std::vector<McEstimate> laplace_mc(const LaplaceQuery& q, std::span<const double> r_values,
                                   long replicas, uint64_t master_seed) {
    if (replicas < 100) throw std::invalid_argument("laplace_mc: need at least 100 replicas");
    q.params.validate();
    ParameterField field = q.variant == ContourVariant::trapezoid
                               ? make_trapezoid_field(q.params, q.n, q.m)
                               : make_full_space_field(q.params, q.n, q.m);
    const size_t nr = r_values.size();
    std::vector<double> sum(nr, 0.0), sum2(nr, 0.0);
    for (long rep = 0; rep < replicas; ++rep) {
        RngStream rng = RngStream::derive(master_seed, static_cast<uint64_t>(rep));
        WeightArray w = sample_weights(field, rng);
        double log_z = q.variant == ContourVariant::trapezoid
                           ? partition_point_to_line(w, q.n, q.m).log_z.log_value
                           : partition_point_to_point(w, q.n, q.n + q.m + 1).log_z.log_value;
        double z = std::exp(log_z);  // +inf acceptable: e^{-r inf} = 0
        for (size_t i = 0; i < nr; ++i) {
            double v = r_values[i] == 0.0 ? 1.0 : std::exp(-r_values[i] * z);
            sum[i] += v;
            sum2[i] += v * v;
        }
    }
    std::vector<McEstimate> out(nr);
    for (size_t i = 0; i < nr; ++i) {
        double mean = sum[i] / replicas;
        double var = std::max(0.0, sum2[i] / replicas - mean * mean);
        out[i] = {mean, std::sqrt(var / replicas), replicas};
    }
    return out;
}

}  // namespace lgp

#include "special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgp {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// B_{2k}/(2k(2k-1)) for the Stirling series of log Gamma.
constexpr double kStirlingCoef[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// Bernoulli numbers B_{2k}, k = 1..8, for the polygamma series.
constexpr double kBernoulli[] = {
    1.0 / 6.0,     -1.0 / 30.0,    1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,    -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,
};

// Stirling series, valid once Re(z) is pushed past ~12.
template <typename T>
T stirling_ln_gamma(T z) {
    T inv = T(1.0) / z;
    T inv2 = inv * inv;
    T series = T(0.0);
    T p = inv;
    for (double c : kStirlingCoef) {
        series += c * p;
        p *= inv2;
    }
    return (z - T(0.5)) * std::log(z) - z + 0.5 * kLog2Pi + series;
}

}  // namespace

LogPositive LogPositive::from_value(double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error("LogPositive requires a finite positive value");
    return LogPositive{std::log(v)};
}

LogPositive LogPositive::add(LogPositive o) const {
    return LogPositive{log_add_exp(log_value, o.log_value)};
}

double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("ln_gamma: argument must be a finite positive real");
    double shift = 0.0;
    while (x < 12.0) {
        shift += std::log(x);
        x += 1.0;
    }
    return stirling_ln_gamma(x) - shift;
}

Complex complex_ln_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("complex_ln_gamma: non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("complex_ln_gamma: pole at non-positive integer");

    // Reflect the left half plane; sin(pi z) evaluated through exponentials so
    // large |Im z| cannot overflow.
    if (z.real() < 0.5) {
        Complex one_minus = 1.0 - z;
        double y = z.imag();
        Complex log_sin;
        if (std::abs(y) < 20.0) {
            Complex s = std::sin(M_PI * z);
            if (s == Complex(0.0, 0.0))
                throw PoleError("complex_ln_gamma: pole at non-positive integer");
            log_sin = std::log(s);
        } else {
            // Factor out the dominant exponential of sin(pi z) so huge |Im z|
            // cannot overflow: sin(pi z) = sgn(y) (i/2) e^{-sgn(y) i pi z}
            // (1 - e^{2 sgn(y) i pi z}).
            double sgn = y > 0 ? 1.0 : -1.0;
            Complex izpi = Complex(0.0, sgn) * (M_PI * z);
            Complex rest = 1.0 - std::exp(2.0 * izpi);
            log_sin = std::log(Complex(0.0, sgn * 0.5)) - izpi + std::log(rest);
        }
        return std::log(Complex(M_PI)) - log_sin - complex_ln_gamma(one_minus);
    }

    Complex shift(0.0, 0.0);
    while (z.real() < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling_ln_gamma(z) - shift;
}

Complex reciprocal_gamma(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        return Complex(0.0, 0.0);
    return std::exp(-complex_ln_gamma(z));
}

double polygamma(int order, double x) {
    if (order < 0 || order > 2)
        throw std::domain_error("polygamma: order must be 0, 1, or 2");
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("polygamma: argument must be a finite positive real");

    // Recurrence up to the asymptotic region.
    double acc = 0.0;
    while (x < 12.0) {
        switch (order) {
            case 0: acc -= 1.0 / x; break;
            case 1: acc += 1.0 / (x * x); break;
            case 2: acc -= 2.0 / (x * x * x); break;
        }
        x += 1.0;
    }

    double inv = 1.0 / x;
    double inv2 = inv * inv;
    double result;
    if (order == 0) {
        double series = 0.0, p = inv2;
        for (int k = 0; k < 8; ++k) {
            series += kBernoulli[k] / (2 * (k + 1)) * p;
            p *= inv2;
        }
        result = std::log(x) - 0.5 * inv - series;
    } else if (order == 1) {
        double series = 0.0, p = inv2 * inv;
        for (int k = 0; k < 8; ++k) {
            series += kBernoulli[k] * p;
            p *= inv2;
        }
        result = inv + 0.5 * inv2 + series;
    } else {
        double series = 0.0, p = inv2 * inv2;
        for (int k = 0; k < 8; ++k) {
            series += kBernoulli[k] * (2 * k + 3) * p;
            p *= inv2;
        }
        result = -inv2 - inv2 * inv - series;
    }
    return result + acc;
}

double log_sum_exp(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("log_sum_exp: empty list");
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (std::isnan(v))
            throw std::domain_error("log_sum_exp: NaN input");
        mx = std::max(mx, v);
    }
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double v : values) s += std::exp(v - mx);
    return mx + std::log(s);
}

double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double mx = std::max(a, b);
    return mx + std::log1p(std::exp(std::min(a, b) - mx));
}

}  // namespace lgp

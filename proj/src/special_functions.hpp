#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace lgp {

// A strictly positive quantity carried as its natural logarithm.  Partition
// functions and inverse-gamma weights overflow double range already around
// n ~ 100, so every positive value crossing a module boundary travels in
// log space.
struct LogPositive {
    double log_value = 0.0;

    static LogPositive from_log(double lv) { return LogPositive{lv}; }
    static LogPositive from_value(double v);

    double value() const { return std::exp(log_value); }

    LogPositive operator*(LogPositive o) const { return {log_value + o.log_value}; }
    LogPositive operator/(LogPositive o) const { return {log_value - o.log_value}; }
    LogPositive pow(double e) const { return {e * log_value}; }
    // (a + b) computed without leaving log space
    LogPositive add(LogPositive o) const;
};

using Complex = std::complex<double>;

// log Gamma(x) for x > 0, relative error below 1e-13.
double ln_gamma(double x);

// Principal-branch log Gamma(z); throws PoleError at non-positive integers.
Complex complex_ln_gamma(Complex z);

// 1/Gamma(z), entire; returns 0 at the poles of Gamma.
Complex reciprocal_gamma(Complex z);

// psi (order 0), psi' (order 1), psi'' (order 2) at x > 0.
double polygamma(int order, double x);

inline double digamma(double x) { return polygamma(0, x); }
inline double trigamma(double x) { return polygamma(1, x); }
inline double tetragamma(double x) { return polygamma(2, x); }

// log(sum exp(v_i)) via max shift; throws on an empty list.
double log_sum_exp(std::span<const double> values);

// Two-term log-sum-exp; -inf operands act as absent terms.
double log_add_exp(double a, double b);

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lgp

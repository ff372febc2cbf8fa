#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lgp {

struct EmpiricalDistribution {
    std::vector<double> sorted;  // ascending
    size_t count() const { return sorted.size(); }

    static EmpiricalDistribution from_samples(std::vector<double> samples);
    double cdf(double x) const;
};

struct KsReport {
    double statistic = 0.0;
    size_t n1 = 0, n2 = 0;  // n2 = 0 for the one-sample test
    double level = 0.05;
    double critical_value = 0.0;
    bool pass = false;
};

// c(level) for the asymptotic Kolmogorov law; levels 0.01 and 0.05 supported.
double ks_coefficient(double level);

// Exact sup-difference of the two empirical CDFs by a merge scan.
KsReport ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b, double level);

// D = sup |F_emp - F| evaluated at the sample points (both one-sided gaps).
KsReport ks_one_sample(const EmpiricalDistribution& a, const std::function<double(double)>& cdf,
                       double level);

}  // namespace lgp

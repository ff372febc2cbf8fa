#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgp {

EmpiricalDistribution EmpiricalDistribution::from_samples(std::vector<double> samples) {
    if (samples.size() < 1) throw std::invalid_argument("EmpiricalDistribution: empty sample");
    std::sort(samples.begin(), samples.end());
    return EmpiricalDistribution{std::move(samples)};
}

double EmpiricalDistribution::cdf(double x) const {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / sorted.size();
}

double ks_coefficient(double level) {
    if (level == 0.01) return 1.628;
    if (level == 0.05) return 1.358;
    throw std::invalid_argument("ks_coefficient: supported levels are 0.01 and 0.05");
}

KsReport ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b, double level) {
    if (a.sorted.empty() || b.sorted.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    const auto& x = a.sorted;
    const auto& y = b.sorted;
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / x.size() -
                                 static_cast<double>(j) / y.size()));
    }
    KsReport r;
    r.statistic = d;
    r.n1 = x.size();
    r.n2 = y.size();
    r.level = level;
    double n1 = static_cast<double>(r.n1), n2 = static_cast<double>(r.n2);
    r.critical_value = ks_coefficient(level) * std::sqrt((n1 + n2) / (n1 * n2));
    r.pass = r.statistic < r.critical_value;
    return r;
}

KsReport ks_one_sample(const EmpiricalDistribution& a, const std::function<double(double)>& cdf,
                       double level) {
    if (a.sorted.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    const size_t n = a.sorted.size();
    double d = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double f = cdf(a.sorted[i]);
        if (f < -1e-12 || f > 1.0 + 1e-12)
            throw std::domain_error("ks_one_sample: cdf value outside [0, 1]");
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    KsReport r;
    r.statistic = d;
    r.n1 = n;
    r.n2 = 0;
    r.level = level;
    r.critical_value = ks_coefficient(level) / std::sqrt(static_cast<double>(n));
    r.pass = r.statistic < r.critical_value;
    return r;
}

}  // namespace lgp

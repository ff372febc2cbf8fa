#include "lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lgp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}
}  // namespace

void PolygonalDomain::finalize() {
    offsets_.clear();
    offsets_.reserve(rows_.size() + 1);
    int acc = 0;
    for (auto& [lo, hi] : rows_) {
        require(lo >= 1 && hi >= lo, "PolygonalDomain: malformed row interval");
        offsets_.push_back(acc);
        acc += hi - lo + 1;
    }
    offsets_.push_back(acc);
    total_ = acc;
    // Down-left closure: (i+1,j) or (i,j+1) in the domain forces (i,j) in.
    for (size_t r = 1; r < rows_.size(); ++r) {
        require(rows_[r].first >= rows_[r - 1].first && rows_[r].second <= rows_[r - 1].second,
                "PolygonalDomain: closure violated");
    }
    if (!rows_.empty()) require(rows_[0].first == 1, "PolygonalDomain: first row must start at column 1");
}

PolygonalDomain PolygonalDomain::rectangle(int n, int m) {
    require(n >= 1 && m >= 1, "rectangle: need n >= 1, m >= 1");
    PolygonalDomain d;
    d.kind_ = DomainKind::rectangle;
    d.n_ = n;
    d.m_ = m;
    d.rows_.assign(n, {1, m});
    d.finalize();
    return d;
}

PolygonalDomain PolygonalDomain::trapezoid(int n, int m) {
    require(n >= 1 && m >= 0, "trapezoid: need n >= 1, m >= 0");
    PolygonalDomain d;
    d.kind_ = DomainKind::trapezoid;
    d.n_ = n;
    d.m_ = m;
    d.rows_.resize(n);
    for (int i = 1; i <= n; ++i) d.rows_[i - 1] = {i, 2 * n + m - i + 1};
    d.finalize();
    return d;
}

PolygonalDomain PolygonalDomain::symmetric_union(int n, int m) {
    require(n >= 1 && m >= 0, "symmetric_union: need n >= 1, m >= 0");
    PolygonalDomain d;
    d.kind_ = DomainKind::symmetric_union;
    d.n_ = n;
    d.m_ = m;
    int rows = 2 * n + m;
    d.rows_.resize(rows);
    for (int i = 1; i <= rows; ++i) {
        int hi = (i <= n) ? (2 * n + m - i + 1) : std::min(n, 2 * n + m - i + 1);
        d.rows_[i - 1] = {1, hi};
    }
    d.finalize();
    return d;
}

PolygonalDomain PolygonalDomain::stationary_quadrant(int n, int m) {
    PolygonalDomain d = rectangle(n, m);
    d.kind_ = DomainKind::stationary_quadrant;
    return d;
}

PolygonalDomain PolygonalDomain::from_rows(std::vector<std::pair<int, int>> rows, DomainKind kind) {
    PolygonalDomain d;
    d.kind_ = kind;
    d.rows_ = std::move(rows);
    d.n_ = d.row_count();
    d.m_ = d.rows_.empty() ? 0 : d.rows_[0].second;
    d.finalize();
    return d;
}

bool PolygonalDomain::contains(int i, int j) const {
    if (i < 1 || i > row_count()) return false;
    return j >= rows_[i - 1].first && j <= rows_[i - 1].second;
}

int PolygonalDomain::cell_index(int i, int j) const {
    if (!contains(i, j)) throw std::out_of_range("PolygonalDomain: cell outside domain");
    return offsets_[i - 1] + (j - rows_[i - 1].first);
}

bool PolygonalDomain::transpose_closed() const {
    bool ok = true;
    for_each_cell([&](int i, int j) { ok = ok && contains(j, i); });
    return ok;
}

void ParameterSet::validate() const {
    int n = static_cast<int>(alpha.size());
    int m = static_cast<int>(beta.size());
    require(n >= 1, "ParameterSet: need at least one alpha");
    char buf[128];
    for (int i = 0; i < n; ++i) {
        if (alpha[i] + alpha_circ <= 0.0) {
            std::snprintf(buf, sizeof buf, "ParameterSet: alpha[%d] + alpha_circ = %g <= 0", i + 1,
                          alpha[i] + alpha_circ);
            throw std::invalid_argument(buf);
        }
        for (int j = 0; j < n; ++j)
            if (alpha[i] + alpha[j] <= 0.0) {
                std::snprintf(buf, sizeof buf, "ParameterSet: alpha[%d] + alpha[%d] = %g <= 0", i + 1,
                              j + 1, alpha[i] + alpha[j]);
                throw std::invalid_argument(buf);
            }
        for (int k = 0; k < m; ++k)
            if (alpha[i] + beta[k] <= 0.0) {
                std::snprintf(buf, sizeof buf, "ParameterSet: alpha[%d] + beta[%d] = %g <= 0", i + 1,
                              k + 1, alpha[i] + beta[k]);
                throw std::invalid_argument(buf);
            }
    }
}

namespace {

ParameterField blank_field(PolygonalDomain d) {
    ParameterField f;
    f.theta.assign(d.cell_count(), 0.0);
    f.unit_cell.assign(d.cell_count(), 0);
    f.halved.assign(d.cell_count(), 0);
    f.domain = std::move(d);
    return f;
}

// Shape of the trapezoidal model at cell (i, j): diagonal, upper bulk,
// beta strip, or reflected strip.
double trapezoid_theta(const ParameterSet& p, int n, int m, int i, int j) {
    if (i == j) return p.alpha[i - 1] + p.alpha_circ;
    if (j <= n) return p.alpha[i - 1] + p.alpha[j - 1];
    if (j <= n + m) return p.alpha[i - 1] + p.beta[j - n - 1];
    return p.alpha[i - 1] + p.alpha[2 * n + m - j];  // alpha_{2n+m-j+1}
}

}  // namespace

ParameterField make_full_space_field(const ParameterSet& p, int n, int m) {
    p.validate();
    require(static_cast<int>(p.alpha.size()) == n && static_cast<int>(p.beta.size()) == m,
            "make_full_space_field: parameter sizes must match (n, m)");
    ParameterField f = blank_field(PolygonalDomain::rectangle(n, n + m + 1));
    f.domain.for_each_cell([&](int i, int j) {
        double th;
        if (j == 1)
            th = p.alpha[i - 1] + p.alpha_circ;
        else if (j <= n + 1)
            th = p.alpha[i - 1] + p.alpha[j - 2];
        else
            th = p.alpha[i - 1] + p.beta[j - n - 2];
        f.theta[f.domain.cell_index(i, j)] = th;
    });
    return f;
}

ParameterField make_trapezoid_field(const ParameterSet& p, int n, int m) {
    p.validate();
    require(static_cast<int>(p.alpha.size()) == n && static_cast<int>(p.beta.size()) == m,
            "make_trapezoid_field: parameter sizes must match (n, m)");
    ParameterField f = blank_field(PolygonalDomain::trapezoid(n, m));
    f.domain.for_each_cell([&](int i, int j) {
        f.theta[f.domain.cell_index(i, j)] = trapezoid_theta(p, n, m, i, j);
    });
    return f;
}

ParameterField make_symmetrized_field(const ParameterSet& p, int n, int m) {
    p.validate();
    require(static_cast<int>(p.alpha.size()) == n && static_cast<int>(p.beta.size()) == m,
            "make_symmetrized_field: parameter sizes must match (n, m)");
    ParameterField f = blank_field(PolygonalDomain::symmetric_union(n, m));
    f.domain.for_each_cell([&](int i, int j) {
        int a = std::min(i, j), b = std::max(i, j);
        int idx = f.domain.cell_index(i, j);
        f.theta[idx] = trapezoid_theta(p, n, m, a, b);
        // Halving acts on the sampled value, not on theta: Gamma^{-1} is not
        // closed under shape scaling, only the rate scales.
        if (i == j) f.halved[idx] = 1;
    });
    return f;
}

ParameterField make_boundary_field(double theta, double theta0, int n, int m, bool trapezoid) {
    require(theta > 0.0 && theta0 > 0.0, "make_boundary_field: need theta, theta0 > 0");
    require(n >= 1 && m >= 1, "make_boundary_field: need n, m >= 1");
    if (!trapezoid) {
        ParameterField f = blank_field(PolygonalDomain::rectangle(n, m));
        f.domain.for_each_cell([&](int i, int j) {
            f.theta[f.domain.cell_index(i, j)] = (j == 1) ? theta0 : theta;
        });
        return f;
    }
    // The quadrant size m corresponds to trapezoid(n, m - n - 1): rows
    // i <= j <= n + m - i.
    require(m >= n + 1, "make_boundary_field: trapezoid variant needs m >= n + 1");
    ParameterField f = blank_field(PolygonalDomain::trapezoid(n, m - n - 1));
    f.domain.for_each_cell([&](int i, int j) {
        f.theta[f.domain.cell_index(i, j)] = (i == j) ? theta0 : theta;
    });
    return f;
}

ParameterField make_stationary_field(double theta, double theta0, int n, int m) {
    require(theta0 > 0.0 && theta0 < theta, "make_stationary_field: need 0 < theta0 < theta");
    require(n >= 1 && m >= 1, "make_stationary_field: need n, m >= 1");
    ParameterField f = blank_field(PolygonalDomain::stationary_quadrant(n, m));
    f.domain.for_each_cell([&](int i, int j) {
        int idx = f.domain.cell_index(i, j);
        if (i == 1 && j == 1) {
            f.unit_cell[idx] = 1;
            f.theta[idx] = 1.0;  // unused
        } else if (j == 1) {
            f.theta[idx] = theta0;
        } else if (i == 1) {
            f.theta[idx] = theta - theta0;
        } else {
            f.theta[idx] = theta;
        }
    });
    return f;
}

bool WeightArray::symmetric() const {
    if (!domain.transpose_closed()) return false;
    bool ok = true;
    domain.for_each_cell([&](int i, int j) {
        if (i < j) ok = ok && (at(i, j) == at(j, i));
    });
    return ok;
}

WeightArray sample_weights(const ParameterField& field, RngStream& rng) {
    WeightArray w;
    w.domain = field.domain;
    w.log_w.assign(field.domain.cell_count(), 0.0);
    const bool sym = field.domain.kind() == DomainKind::symmetric_union;
    field.domain.for_each_cell([&](int i, int j) {
        if (sym && i > j) return;  // mirrored below
        int idx = field.domain.cell_index(i, j);
        double lw;
        if (field.unit_cell[idx]) {
            lw = 0.0;
        } else {
            lw = -std::log(rng.gamma(field.theta[idx]));
            if (field.halved[idx]) lw -= std::log(2.0);
        }
        w.log_w[idx] = lw;
        if (sym && i < j) w.log_w[field.domain.cell_index(j, i)] = lw;
    });
    return w;
}

std::string weight_array_to_csv(const WeightArray& w) {
    std::string out = "i,j,log_w\n";
    char line[80];
    w.domain.for_each_cell([&](int i, int j) {
        std::snprintf(line, sizeof line, "%d,%d,%.17g\n", i, j, w.at(i, j));
        out += line;
    });
    return out;
}

WeightArray weight_array_from_csv(const std::string& csv, const PolygonalDomain& domain) {
    WeightArray w;
    w.domain = domain;
    w.log_w.assign(domain.cell_count(), kNegInf);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int i = 0, j = 0;
        double lw = 0.0;
        if (std::sscanf(line.c_str(), "%d,%d,%lg", &i, &j, &lw) != 3)
            throw std::invalid_argument("weight_array_from_csv: malformed line: " + line);
        w.at(i, j) = lw;
    }
    for (double v : w.log_w)
        if (v == kNegInf) throw std::invalid_argument("weight_array_from_csv: missing cells");
    return w;
}

namespace {

// Log-space DP over anti-diagonals:
// log Z(i,j) = log W(i,j) + lse(log Z(i-1,j), log Z(i,j-1)).
std::vector<double> partition_table(const WeightArray& w) {
    const PolygonalDomain& d = w.domain;
    std::vector<double> z(d.cell_count(), kNegInf);
    if (!d.contains(1, 1)) throw std::invalid_argument("partition: domain must contain (1,1)");
    int max_diag = 0;
    for (int i = 1; i <= d.row_count(); ++i) max_diag = std::max(max_diag, i + d.row_hi(i));
    for (int s = 2; s <= max_diag; ++s) {
        for (int i = std::max(1, s - (d.row_count() ? d.row_hi(1) : 0)); i <= d.row_count() && i < s; ++i) {
            int j = s - i;
            if (!d.contains(i, j)) continue;
            double up = d.contains(i - 1, j) ? z[d.cell_index(i - 1, j)] : kNegInf;
            double left = d.contains(i, j - 1) ? z[d.cell_index(i, j - 1)] : kNegInf;
            double prev = (i == 1 && j == 1) ? 0.0 : log_add_exp(up, left);
            z[d.cell_index(i, j)] = w.at(i, j) + prev;
        }
    }
    return z;
}

// Monotone-path counts; only called on domains with <= 24 cells.
std::vector<uint64_t> path_count_table(const PolygonalDomain& d) {
    std::vector<uint64_t> c(d.cell_count(), 0);
    d.for_each_cell([&](int i, int j) {
        uint64_t v = 0;
        if (i == 1 && j == 1) v = 1;
        if (d.contains(i - 1, j)) v += c[d.cell_index(i - 1, j)];
        if (d.contains(i, j - 1)) v += c[d.cell_index(i, j - 1)];
        c[d.cell_index(i, j)] = v;
    });
    return c;
}

}  // namespace

PartitionResult partition_point_to_point(const WeightArray& w, int ti, int tj) {
    if (!w.domain.contains(ti, tj))
        throw std::invalid_argument("partition_point_to_point: target outside domain");
    auto z = partition_table(w);
    PartitionResult r;
    r.log_z = LogPositive::from_log(z[w.domain.cell_index(ti, tj)]);
    r.endpoint_i = ti;
    r.endpoint_j = tj;
    if (w.domain.cell_count() <= 24)
        r.path_count = path_count_table(w.domain)[w.domain.cell_index(ti, tj)];
    return r;
}

PartitionResult partition_point_to_line(const WeightArray& w, int n, int m) {
    if (w.domain.kind() != DomainKind::trapezoid || w.domain.n() != n || w.domain.m() != m)
        throw std::invalid_argument("partition_point_to_line: expected trapezoid(n, m) weights");
    auto z = partition_table(w);
    std::vector<double> ends(n);
    for (int k = 1; k <= n; ++k) ends[k - 1] = z[w.domain.cell_index(k, 2 * n - k + m + 1)];
    PartitionResult r;
    r.log_z = LogPositive::from_log(log_sum_exp(ends));
    if (w.domain.cell_count() <= 24) {
        auto c = path_count_table(w.domain);
        uint64_t total = 0;
        for (int k = 1; k <= n; ++k) total += c[w.domain.cell_index(k, 2 * n - k + m + 1)];
        r.path_count = total;
    }
    return r;
}

PartitionResult partition_symmetrized(const WeightArray& w, int n, int m) {
    if (w.domain.kind() != DomainKind::symmetric_union || w.domain.n() != n || w.domain.m() != m)
        throw std::invalid_argument("partition_symmetrized: expected symmetric_union(n, m) weights");
    if (!w.symmetric())
        throw std::invalid_argument("partition_symmetrized: weights must be symmetric");
    auto z = partition_table(w);
    std::vector<double> ends;
    ends.reserve(2 * n);
    for (int k = 1; k <= n; ++k) {
        ends.push_back(z[w.domain.cell_index(k, 2 * n - k + m + 1)]);
        ends.push_back(z[w.domain.cell_index(2 * n - k + m + 1, k)]);
    }
    PartitionResult r;
    r.log_z = LogPositive::from_log(log_sum_exp(ends));
    return r;
}

PartitionResult partition_stationary(double theta, double theta0, int n, int m, RngStream& rng) {
    ParameterField f = make_stationary_field(theta, theta0, n, m);
    WeightArray w = sample_weights(f, rng);
    return partition_point_to_point(w, n, m);
}

}  // namespace lgp

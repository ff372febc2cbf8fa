#include "grsk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgp {

bool PolygonalArray::symmetric() const {
    if (!domain.transpose_closed()) return false;
    bool ok = true;
    domain.for_each_cell([&](int i, int j) {
        if (i < j) ok = ok && (at(i, j) == at(j, i));
    });
    return ok;
}

namespace {

// Neighbour sum with the conventions w_{i,0} = w_{0,j} = 0 and
// w_{0,1} + w_{1,0} = 1.
double upper_left_sum(const PolygonalArray& a, int i, int j) {
    if (i == 1 && j == 1) return 1.0;
    return a.at_or_zero(i - 1, j) + a.at_or_zero(i, j - 1);
}

void check_inside(const PolygonalArray& a, int i, int j, const char* who) {
    if (!a.domain.contains(i, j))
        throw std::invalid_argument(std::string(who) + ": cell outside domain");
}

}  // namespace

void local_move_a(PolygonalArray& a, int i, int j) {
    check_inside(a, i, j, "local_move_a");
    a.at(i, j) = a.at(i, j) * upper_left_sum(a, i, j);
}

void local_move_b(PolygonalArray& a, int i, int j) {
    check_inside(a, i, j, "local_move_b");
    if (!a.domain.contains(i + 1, j + 1))
        throw std::invalid_argument("local_move_b: border index");
    double down = 1.0 / a.at(i + 1, j) + 1.0 / a.at(i, j + 1);
    double num = upper_left_sum(a, i, j);
    if (down == 0.0)
        throw std::domain_error("local_move_b: vanishing denominator");
    a.at(i, j) = (1.0 / a.at(i, j)) * num / down;
}

namespace {

// rho_{i,j} = a_{i,j} . b_{i-1,j-1} . ... applied along the diagonal chain
// toward (i, j); the innermost b acts first.
void apply_rho(PolygonalArray& a, int i, int j, MoveTrace* trace) {
    int depth = std::min(i, j) - 1;
    for (int k = depth; k >= 1; --k) {
        local_move_b(a, i - k, j - k);
        if (trace) trace->push_back({'b', i - k, j - k});
    }
    local_move_a(a, i, j);
    if (trace) trace->push_back({'a', i, j});
}

// Outer indices of a row-interval domain: (i, hi_i) whenever the next row
// does not reach column hi_i.
std::vector<std::pair<int, int>> outer_indices(const std::vector<std::pair<int, int>>& rows) {
    std::vector<std::pair<int, int>> out;
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].second < rows[r].first) continue;
        bool next_covers = r + 1 < rows.size() && rows[r + 1].second >= rows[r].second &&
                           rows[r + 1].second >= rows[r + 1].first;
        if (!next_covers) out.push_back({static_cast<int>(r + 1), rows[r].second});
    }
    return out;
}

// Shell recursion of the gRSK induction: transform the interior first, then
// run rho at each outer index (row-major; any order is equivalent, which the
// reversed flag exercises).
void grsk_recurse(PolygonalArray& a, std::vector<std::pair<int, int>>& rows, MoveTrace* trace,
                  bool reversed) {
    bool empty = true;
    for (auto& [lo, hi] : rows)
        if (hi >= lo) {
            empty = false;
            break;
        }
    if (empty) return;
    auto outer = outer_indices(rows);
    std::vector<std::pair<int, int>> interior = rows;
    for (auto& [i, j] : outer) interior[i - 1].second = j - 1;
    grsk_recurse(a, interior, trace, reversed);
    if (reversed) std::reverse(outer.begin(), outer.end());
    for (auto& [i, j] : outer) apply_rho(a, i, j, trace);
}

}  // namespace

GrskOutput grsk(const PolygonalArray& input, bool reverse_outer_order) {
    for (double x : input.v)
        if (!(x > 0.0) || !std::isfinite(x))
            throw std::invalid_argument("grsk: entries must be finite and positive");
    // The move conventions assume a down-left closed shape (every row runs
    // from column 1); the octant trapezoid is handled through its closure or
    // its symmetric union, never directly.
    for (int i = 1; i <= input.domain.row_count(); ++i)
        if (input.domain.row_lo(i) != 1)
            throw std::invalid_argument("grsk: domain rows must start at column 1");
    GrskOutput out;
    out.t = input;
    std::vector<std::pair<int, int>> rows;
    for (int i = 1; i <= input.domain.row_count(); ++i)
        rows.push_back({input.domain.row_lo(i), input.domain.row_hi(i)});
    grsk_recurse(out.t, rows, &out.trace, reverse_outer_order);

    std::map<int, double> tau_log;
    input.domain.for_each_cell([&](int i, int j) {
        tau_log[j - i] += std::log(out.t.at(i, j));
        if (input.domain.is_border(i, j))
            out.border[{i, j}] = LogPositive::from_log(std::log(out.t.at(i, j)));
    });
    for (auto& [q, lv] : tau_log) out.tau[q] = LogPositive::from_log(lv);
    return out;
}

GrskOutput grsk_symmetric(const PolygonalArray& input) {
    if (!input.domain.transpose_closed() || !input.symmetric())
        throw std::invalid_argument("grsk_symmetric: input must be a symmetric array");
    GrskOutput out = grsk(input);
    // The move sequence is mirror-covariant, so the output is symmetric up to
    // rounding; enforce exact symmetry from the upper half.
    double worst = 0.0;
    out.t.domain.for_each_cell([&](int i, int j) {
        if (i < j) {
            double x = out.t.at(i, j), y = out.t.at(j, i);
            worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), 1e-300));
            out.t.at(j, i) = x;
        }
    });
    if (worst > 1e-12)
        throw AccuracyError("grsk_symmetric: output symmetry broken beyond rounding");
    // Rebuild tau/border from the mirrored array.
    out.tau.clear();
    out.border.clear();
    std::map<int, double> tau_log;
    out.t.domain.for_each_cell([&](int i, int j) {
        tau_log[j - i] += std::log(out.t.at(i, j));
        if (out.t.domain.is_border(i, j))
            out.border[{i, j}] = LogPositive::from_log(std::log(out.t.at(i, j)));
    });
    for (auto& [q, lv] : tau_log) out.tau[q] = LogPositive::from_log(lv);
    return out;
}

PolygonalArray replay_trace(const PolygonalArray& input, const MoveTrace& trace) {
    PolygonalArray a = input;
    for (const Move& m : trace) {
        if (m.kind == 'a')
            local_move_a(a, m.i, m.j);
        else
            local_move_b(a, m.i, m.j);
    }
    return a;
}

double grsk_log_jacobian_absdet(const PolygonalArray& input, double step) {
    const int n = input.domain.cell_count();
    std::vector<double> jac(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        PolygonalArray plus = input, minus = input;
        plus.v[k] *= std::exp(step);
        minus.v[k] *= std::exp(-step);
        GrskOutput tp = grsk(plus), tm = grsk(minus);
        for (int r = 0; r < n; ++r)
            jac[static_cast<size_t>(r) * n + k] =
                (std::log(tp.t.v[r]) - std::log(tm.t.v[r])) / (2.0 * step);
    }
    // LU with partial pivoting; |det| as exp of summed log pivots.
    double log_det = 0.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(jac[static_cast<size_t>(r) * n + c]) >
                std::abs(jac[static_cast<size_t>(piv) * n + c]))
                piv = r;
        if (piv != c)
            for (int cc = 0; cc < n; ++cc)
                std::swap(jac[static_cast<size_t>(piv) * n + cc], jac[static_cast<size_t>(c) * n + cc]);
        double d = jac[static_cast<size_t>(c) * n + c];
        if (d == 0.0) return 0.0;
        log_det += std::log(std::abs(d));
        for (int r = c + 1; r < n; ++r) {
            double f = jac[static_cast<size_t>(r) * n + c] / d;
            if (f == 0.0) continue;
            for (int cc = c; cc < n; ++cc)
                jac[static_cast<size_t>(r) * n + cc] -= f * jac[static_cast<size_t>(c) * n + cc];
        }
    }
    return std::exp(log_det);
}

namespace {

double rel_diff(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace

GrskReport verify_grsk_properties(const PolygonalArray& input, const GrskTolerances& tol) {
    GrskReport report;
    GrskOutput out = grsk(input);
    const PolygonalDomain& d = input.domain;

    // (1) energy identity
    {
        double lhs = 0.0;
        d.for_each_cell([&](int i, int j) { lhs += 1.0 / input.at(i, j); });
        double rhs = 1.0 / out.t.at(1, 1);
        d.for_each_cell([&](int i, int j) {
            rhs += (out.t.at_or_zero(i - 1, j) + out.t.at_or_zero(i, j - 1)) / out.t.at(i, j);
        });
        double disc = rel_diff(lhs, rhs);
        report.checks.push_back({"energy", disc, tol.identity_rel, disc <= tol.identity_rel});
    }

    // (2) every border entry equals the DP partition function
    {
        WeightArray w;
        w.domain = d;
        w.log_w.resize(d.cell_count());
        for (int k = 0; k < d.cell_count(); ++k) w.log_w[k] = std::log(input.v[k]);
        double worst = 0.0;
        d.for_each_cell([&](int i, int j) {
            if (!d.is_border(i, j)) return;
            double dp = partition_point_to_point(w, i, j).log_z.log_value;
            worst = std::max(worst, std::abs(std::expm1(std::log(out.t.at(i, j)) - dp)));
        });
        report.checks.push_back({"border_partition", worst, tol.identity_rel, worst <= tol.identity_rel});
    }

    // (3) tau products: prod_{i<=p, j<=q} w = tau_{q-p} at border (p,q), plus
    // the two outer-index column/row ratios; tau over an absent diagonal is
    // the empty product.
    {
        auto tau_log = [&](int q) {
            auto it = out.tau.find(q);
            return it == out.tau.end() ? 0.0 : it->second.log_value;
        };
        double worst = 0.0;
        d.for_each_cell([&](int p, int q) {
            if (!d.is_border(p, q)) return;
            double lhs = 0.0;
            for (int i = 1; i <= p; ++i)
                for (int j = 1; j <= q; ++j) lhs += std::log(input.at(i, j));
            worst = std::max(worst, std::abs(std::expm1(lhs - tau_log(q - p))));
            if (!d.is_outer(p, q)) return;
            double col = 0.0, row = 0.0;
            for (int i = 1; i <= p; ++i) col += std::log(input.at(i, q));
            for (int j = 1; j <= q; ++j) row += std::log(input.at(p, j));
            double tq = tau_log(q - p);
            worst = std::max(worst, std::abs(std::expm1(col - (tq - tau_log(q - p - 1)))));
            worst = std::max(worst, std::abs(std::expm1(row - (tq - tau_log(q - p + 1)))));
        });
        report.checks.push_back({"tau_products", worst, tol.identity_rel, worst <= tol.identity_rel});
    }

    // (4) symmetric diagonal products, when applicable
    if (d.transpose_closed() && input.symmetric()) {
        int ell = 0;
        d.for_each_cell([&](int i, int j) { ell += (i == j) ? 1 : 0; });
        double lhs = std::floor(ell / 2.0) * std::log(4.0);
        for (int i = 1; i <= ell; ++i) lhs += std::log(input.at(i, i));
        double rhs = 0.0;
        for (int j = 1; j <= ell; ++j) {
            double sign = ((ell - j) % 2 == 0) ? 1.0 : -1.0;
            rhs += sign * std::log(out.t.at(j, j));
        }
        double disc = std::abs(std::expm1(lhs - rhs));
        report.checks.push_back({"symmetric_diagonal", disc, tol.identity_rel, disc <= tol.identity_rel});
    }

    // (5) log-coordinate Jacobian
    if (tol.run_jacobian && d.cell_count() <= 30) {
        double det = grsk_log_jacobian_absdet(input, tol.jacobian_step);
        double disc = std::abs(det - 1.0);
        report.checks.push_back({"jacobian", disc, tol.jacobian_abs, disc <= tol.jacobian_abs});
    }

    return report;
}

}  // namespace lgp

#include <doctest.h>

#include <cmath>

#include "grsk.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace lgp;

namespace {

PolygonalArray uniform_array(const PolygonalDomain& d, RngStream& rng) {
    PolygonalArray a{d, std::vector<double>(d.cell_count())};
    for (auto& v : a.v) v = std::exp(2.0 * (2.0 * rng.uniform01() - 1.0));
    return a;
}

PolygonalDomain staircase(int n, int m) {
    std::vector<std::pair<int, int>> rows;
    for (int i = 1; i <= n; ++i) rows.push_back({1, 2 * n + m - i + 1});
    return PolygonalDomain::from_rows(rows, DomainKind::rectangle);
}

}  // namespace

TEST_CASE("local move a") {
    PolygonalArray a = PolygonalArray::ones(PolygonalDomain::rectangle(2, 2));
    a.at(1, 1) = 3.3;
    local_move_a(a, 1, 1);
    CHECK(a.at(1, 1) == doctest::Approx(3.3));  // neighbour sum convention = 1

    PolygonalArray row = PolygonalArray::ones(PolygonalDomain::rectangle(1, 2));
    local_move_a(row, 1, 2);
    CHECK(row.at(1, 2) == doctest::Approx(1.0));  // 1 * (0 + 1)

    PolygonalArray sq = PolygonalArray::ones(PolygonalDomain::rectangle(2, 2));
    local_move_a(sq, 2, 2);
    CHECK(sq.at(2, 2) == doctest::Approx(2.0));

    CHECK_THROWS_AS(local_move_a(sq, 3, 3), std::invalid_argument);
}

TEST_CASE("local move b") {
    PolygonalArray sq = PolygonalArray::ones(PolygonalDomain::rectangle(2, 2));
    local_move_b(sq, 1, 1);
    CHECK(sq.at(1, 1) == doctest::Approx(0.5));

    // border index rejected
    CHECK_THROWS_AS(local_move_b(sq, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(local_move_b(sq, 1, 2), std::invalid_argument);

    // involution at fixed neighbours: apply b twice at (1,1) of a 3x3
    RngStream rng = RngStream::derive(1, 0);
    PolygonalArray t = uniform_array(PolygonalDomain::rectangle(3, 3), rng);
    double before = t.at(1, 1);
    local_move_b(t, 1, 1);
    local_move_b(t, 1, 1);
    CHECK(t.at(1, 1) == doctest::Approx(before).epsilon(1e-14));
}

TEST_CASE("grsk on a single cell is the identity") {
    PolygonalArray a{PolygonalDomain::rectangle(1, 1), {0.42}};
    GrskOutput out = grsk(a);
    CHECK(out.t.at(1, 1) == doctest::Approx(0.42));
}

TEST_CASE("grsk all-ones 2x2 closed form") {
    PolygonalArray a = PolygonalArray::ones(PolygonalDomain::rectangle(2, 2));
    GrskOutput out = grsk(a);
    CHECK(out.t.at(1, 1) == doctest::Approx(0.5));
    CHECK(out.t.at(1, 2) == doctest::Approx(1.0));
    CHECK(out.t.at(2, 1) == doctest::Approx(1.0));
    CHECK(out.t.at(2, 2) == doctest::Approx(2.0));
    // border map holds all three border entries
    CHECK(out.border.size() == 3);
    CHECK(out.border.at({2, 2}).value() == doctest::Approx(2.0));
}

TEST_CASE("border entries equal partition functions") {
    RngStream rng = RngStream::derive(2, 0);
    PolygonalArray a = uniform_array(PolygonalDomain::rectangle(3, 4), rng);
    GrskOutput out = grsk(a);
    WeightArray w{a.domain, std::vector<double>(a.domain.cell_count())};
    for (int k = 0; k < a.domain.cell_count(); ++k) w.log_w[k] = std::log(a.v[k]);
    a.domain.for_each_cell([&](int i, int j) {
        if (!a.domain.is_border(i, j)) return;
        double dp = partition_point_to_point(w, i, j).log_z.log_value;
        CHECK(std::abs(std::expm1(std::log(out.t.at(i, j)) - dp)) < 1e-11);
    });
}

TEST_CASE("outer move order is irrelevant") {
    // permuting the outer rho order means replaying the trace with the
    // per-level outer segments reversed; compare against a manual replay.
    RngStream rng = RngStream::derive(3, 0);
    PolygonalArray a = uniform_array(PolygonalDomain::rectangle(3, 3), rng);
    GrskOutput ref = grsk(a);

    // the recorded trace replays to the same output
    PolygonalArray replayed = replay_trace(a, ref.trace);
    for (int k = 0; k < a.domain.cell_count(); ++k)
        CHECK(replayed.v[k] == doctest::Approx(ref.t.v[k]).epsilon(1e-15));

    // reversed outer order at the top level of a 2x2 (outer indices (1,2),(2,1))
    PolygonalArray c = uniform_array(PolygonalDomain::rectangle(2, 2), rng);
    GrskOutput o1 = grsk(c);
    // apply by hand in the opposite order
    PolygonalArray manual = c;
    // interior = {(1,1)}; rho_{1,1} = a_{1,1}
    local_move_a(manual, 1, 1);
    // outer level of interior domain: (1,2),(2,1) then (2,2)
    local_move_a(manual, 2, 1);  // reversed
    local_move_a(manual, 1, 2);
    local_move_b(manual, 1, 1);
    local_move_a(manual, 2, 2);
    for (int k = 0; k < c.domain.cell_count(); ++k)
        CHECK(manual.v[k] == doctest::Approx(o1.t.v[k]).epsilon(1e-13));

    // engine-level reversal across larger shapes
    std::vector<PolygonalDomain> shapes{PolygonalDomain::rectangle(4, 5), staircase(3, 2),
                                        PolygonalDomain::symmetric_union(2, 1)};
    for (const auto& d : shapes) {
        for (int rep = 0; rep < 5; ++rep) {
            PolygonalArray arr = uniform_array(d, rng);
            GrskOutput fwd = grsk(arr);
            GrskOutput rev = grsk(arr, true);
            for (int k = 0; k < d.cell_count(); ++k) {
                double r = std::abs(fwd.t.v[k] - rev.t.v[k]) / std::abs(fwd.t.v[k]);
                CHECK(r < 1e-13);
            }
        }
    }
}

TEST_CASE("grsk symmetric 2x2 closed form") {
    PolygonalDomain d = PolygonalDomain::rectangle(2, 2);
    RngStream rng = RngStream::derive(4, 0);
    double w11 = 0.9, w22 = 2.1, w12 = 1.4;
    PolygonalArray a{d, {w11, w12, w12, w22}};
    GrskOutput out = grsk_symmetric(a);
    CHECK(out.t.at(1, 1) == doctest::Approx(w12 / 2.0));
    CHECK(out.t.at(2, 2) == doctest::Approx(2.0 * w11 * w22 * w12));
    CHECK(out.t.at(2, 2) / out.t.at(1, 1) == doctest::Approx(4.0 * w11 * w22));
    CHECK(out.t.at(1, 2) == out.t.at(2, 1));

    PolygonalArray single{PolygonalDomain::rectangle(1, 1), {0.77}};
    CHECK(grsk_symmetric(single).t.at(1, 1) == doctest::Approx(0.77));

    PolygonalArray bad{d, {1.0, 2.0, 3.0, 4.0}};
    CHECK_THROWS_AS(grsk_symmetric(bad), std::invalid_argument);
    (void)rng;
}

TEST_CASE("grsk symmetric output is exactly symmetric") {
    RngStream rng = RngStream::derive(5, 0);
    PolygonalDomain d = PolygonalDomain::symmetric_union(3, 1);
    PolygonalArray a{d, std::vector<double>(d.cell_count(), 0.0)};
    d.for_each_cell([&](int i, int j) {
        if (i > j) return;
        double v = std::exp(1.5 * (2.0 * rng.uniform01() - 1.0));
        a.at(i, j) = v;
        if (i < j) a.at(j, i) = v;
    });
    GrskOutput out = grsk_symmetric(a);
    d.for_each_cell([&](int i, int j) {
        if (i < j) CHECK(out.t.at(i, j) == out.t.at(j, i));
    });
}

TEST_CASE("verify_grsk_properties on the all-ones square") {
    PolygonalArray a = PolygonalArray::ones(PolygonalDomain::rectangle(2, 2));
    GrskTolerances tol;
    GrskReport rep = verify_grsk_properties(a, tol);
    CHECK(rep.all_pass());
    // energy on both sides is 4
    double lhs = 0.0;
    a.domain.for_each_cell([&](int i, int j) { lhs += 1.0 / a.at(i, j); });
    CHECK(lhs == doctest::Approx(4.0));
}

TEST_CASE("verify_grsk_properties across shapes") {
    RngStream rng = RngStream::derive(6, 0);
    GrskTolerances tol;
    tol.run_jacobian = false;
    std::vector<PolygonalDomain> shapes{PolygonalDomain::rectangle(5, 7), staircase(4, 3),
                                        PolygonalDomain::symmetric_union(3, 1)};
    for (const auto& d : shapes) {
        for (int rep = 0; rep < 10; ++rep) {
            PolygonalArray a = d.transpose_closed() ? [&] {
                PolygonalArray s{d, std::vector<double>(d.cell_count(), 0.0)};
                d.for_each_cell([&](int i, int j) {
                    if (i > j) return;
                    double v = std::exp(1.2 * (2.0 * rng.uniform01() - 1.0));
                    s.at(i, j) = v;
                    if (i < j) s.at(j, i) = v;
                });
                return s;
            }()
                                                    : uniform_array(d, rng);
            GrskReport r = verify_grsk_properties(a, tol);
            for (auto& c : r.checks) {
                INFO(c.name, " discrepancy ", c.discrepancy);
                CHECK(c.pass);
            }
        }
    }
}

TEST_CASE("log-coordinate Jacobian has unit determinant") {
    RngStream rng = RngStream::derive(7, 0);
    std::vector<PolygonalDomain> shapes{PolygonalDomain::rectangle(4, 6), staircase(2, 1),
                                        PolygonalDomain::symmetric_union(2, 1)};
    for (const auto& d : shapes) {
        for (int rep = 0; rep < 4; ++rep) {
            PolygonalArray a = uniform_array(d, rng);
            double det = grsk_log_jacobian_absdet(a, 1e-6);
            CHECK(std::abs(det - 1.0) < 1e-5);
        }
    }
}

TEST_CASE("symmetric diagonal product identity") {
    RngStream rng = RngStream::derive(8, 0);
    PolygonalDomain d = PolygonalDomain::symmetric_union(3, 1);
    for (int rep = 0; rep < 20; ++rep) {
        PolygonalArray a{d, std::vector<double>(d.cell_count(), 0.0)};
        d.for_each_cell([&](int i, int j) {
            if (i > j) return;
            double v = std::exp(1.4 * (2.0 * rng.uniform01() - 1.0));
            a.at(i, j) = v;
            if (i < j) a.at(j, i) = v;
        });
        GrskOutput out = grsk_symmetric(a);
        int ell = 3;
        double lhs = std::pow(4.0, ell / 2);
        for (int i = 1; i <= ell; ++i) lhs *= a.at(i, i);
        double rhs = 1.0;
        for (int j = 1; j <= ell; ++j) {
            double e = ((ell - j) % 2 == 0) ? 1.0 : -1.0;
            rhs *= std::pow(out.t.at(j, j), e);
        }
        CHECK(std::abs(lhs / rhs - 1.0) < 1e-10);
    }
}

TEST_CASE("tau ratios against raw products") {
    RngStream rng = RngStream::derive(9, 0);
    PolygonalArray a = uniform_array(PolygonalDomain::rectangle(4, 6), rng);
    GrskOutput out = grsk(a);
    // border (4, 6): prod of all entries = tau_2
    double lhs = 0.0;
    a.domain.for_each_cell([&](int i, int j) { lhs += std::log(a.at(i, j)); });
    CHECK(std::abs(std::expm1(lhs - out.tau.at(2).log_value)) < 1e-11);
    // outer (4, 6): column and row ratios
    double col = 0.0, row = 0.0;
    for (int i = 1; i <= 4; ++i) col += std::log(a.at(i, 6));
    for (int j = 1; j <= 6; ++j) row += std::log(a.at(4, j));
    CHECK(std::abs(std::expm1(col - (out.tau.at(2) / out.tau.at(1)).log_value)) < 1e-11);
    CHECK(std::abs(std::expm1(row - (out.tau.at(2) / out.tau.at(3)).log_value)) < 1e-11);
}

TEST_CASE("grsk rejects non-polygonal and non-positive inputs") {
    PolygonalArray bad{PolygonalDomain::rectangle(2, 2), {1.0, -1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(grsk(bad), std::invalid_argument);
    // octant trapezoid rows do not start at column 1; the move conventions
    // require the down-left closed shape
    PolygonalDomain oct = PolygonalDomain::trapezoid(2, 0);
    PolygonalArray t{oct, std::vector<double>(oct.cell_count(), 1.0)};
    CHECK_THROWS_AS(grsk(t), std::invalid_argument);
}

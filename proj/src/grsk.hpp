#pragma once

#include <map>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "special_functions.hpp"

namespace lgp {

// Positive entries in linear space; the local moves mix addition and
// reciprocals, so log space buys nothing here.  Test generators keep
// magnitudes inside [1e-6, 1e6].
struct PolygonalArray {
    PolygonalDomain domain;
    std::vector<double> v;

    static PolygonalArray ones(const PolygonalDomain& d) {
        return PolygonalArray{d, std::vector<double>(d.cell_count(), 1.0)};
    }
    double at(int i, int j) const { return v[domain.cell_index(i, j)]; }
    double& at(int i, int j) { return v[domain.cell_index(i, j)]; }
    // 0 outside the domain, matching the move conventions.
    double at_or_zero(int i, int j) const {
        return domain.contains(i, j) ? v[domain.cell_index(i, j)] : 0.0;
    }
    bool symmetric() const;
};

struct Move {
    char kind;  // 'a' or 'b'
    int i, j;
};

using MoveTrace = std::vector<Move>;

// w_{i,j} <- w_{i,j} (w_{i-1,j} + w_{i,j-1}); the (1,1) neighbour sum is 1.
void local_move_a(PolygonalArray& a, int i, int j);
// w_{i,j} <- w_{i,j}^{-1} (w_{i-1,j} + w_{i,j-1}) (w_{i+1,j}^{-1} + w_{i,j+1}^{-1})^{-1};
// only defined at non-border indices.
void local_move_b(PolygonalArray& a, int i, int j);

struct GrskOutput {
    PolygonalArray t;
    std::map<int, LogPositive> tau;                    // offset q -> prod over j-i = q
    std::map<std::pair<int, int>, LogPositive> border; // border cell -> t value
    MoveTrace trace;
};

// The composition order of the outer-index moves within a shell is
// immaterial; reverse_outer_order exists so the property can be exercised
// end to end.
GrskOutput grsk(const PolygonalArray& input, bool reverse_outer_order = false);
// Same engine; validates the input, asserts symmetry of the output and
// re-mirrors the upper half so t_{i,j} == t_{j,i} holds exactly.
GrskOutput grsk_symmetric(const PolygonalArray& input);

// Replay a recorded move sequence on a fresh copy of the input.
PolygonalArray replay_trace(const PolygonalArray& input, const MoveTrace& trace);

struct IdentityCheck {
    std::string name;
    double discrepancy = 0.0;  // relative, or |det|-1 for the Jacobian
    double tolerance = 0.0;
    bool pass = false;
};

struct GrskReport {
    std::vector<IdentityCheck> checks;
    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct GrskTolerances {
    double identity_rel = 1e-10;
    double jacobian_abs = 1e-5;
    bool run_jacobian = true;     // skipped automatically above 30 cells
    double jacobian_step = 1e-6;
};

// Checks, per the stated tolerance: the energy identity, border entries
// against the DP partition function, the tau-product identities at border
// and outer indices, the symmetric diagonal-product formula, and the
// finite-difference log-coordinate Jacobian.
GrskReport verify_grsk_properties(const PolygonalArray& input, const GrskTolerances& tol);

// |det| of the finite-difference Jacobian of log w -> log t.
double grsk_log_jacobian_absdet(const PolygonalArray& input, double step);

}  // namespace lgp

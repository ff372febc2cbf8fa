#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rng.hpp"
#include "special_functions.hpp"

namespace lgp {

enum class DomainKind {
    rectangle,
    trapezoid,
    symmetric_union,
    stationary_quadrant,
};

// Polygonal lattice domain stored as one contiguous column interval per row.
// All shapes used here are row-convex, with jmin nondecreasing and jmax
// nonincreasing down the rows; this is exactly the down-left closure the
// local-move machinery needs.
class PolygonalDomain {
  public:
    static PolygonalDomain rectangle(int n, int m);
    // {(i,j) : 1 <= i <= n, i <= j <= 2n+m-i+1}
    static PolygonalDomain trapezoid(int n, int m);
    // trapezoid(n, m) united with its transpose
    static PolygonalDomain symmetric_union(int n, int m);
    static PolygonalDomain stationary_quadrant(int n, int m);
    // Arbitrary row intervals (1-based row i -> [lo_i, hi_i]); used by tests
    // and the gRSK engine for peeled sub-domains.
    static PolygonalDomain from_rows(std::vector<std::pair<int, int>> rows, DomainKind kind);

    DomainKind kind() const { return kind_; }
    int n() const { return n_; }
    int m() const { return m_; }
    int row_count() const { return static_cast<int>(rows_.size()); }
    int row_lo(int i) const { return rows_[i - 1].first; }
    int row_hi(int i) const { return rows_[i - 1].second; }
    int cell_count() const { return total_; }

    bool contains(int i, int j) const;
    // Flat index of a cell, row-major; cell must be inside.
    int cell_index(int i, int j) const;

    bool is_border(int i, int j) const { return contains(i, j) && !contains(i + 1, j + 1); }
    bool is_outer(int i, int j) const {
        return contains(i, j) && !contains(i + 1, j) && !contains(i, j + 1) && !contains(i + 1, j + 1);
    }
    bool transpose_closed() const;

    template <typename F>
    void for_each_cell(F&& f) const {
        for (int i = 1; i <= row_count(); ++i)
            for (int j = row_lo(i); j <= row_hi(i); ++j) f(i, j);
    }

    bool operator==(const PolygonalDomain& o) const {
        return rows_ == o.rows_;
    }

  private:
    void finalize();

    DomainKind kind_ = DomainKind::rectangle;
    int n_ = 0, m_ = 0;
    std::vector<std::pair<int, int>> rows_;
    std::vector<int> offsets_;
    int total_ = 0;
};

// Inhomogeneity triple (alpha_circ, alpha, beta) with the positivity
// constraints of the parametrized models.
struct ParameterSet {
    double alpha_circ = 0.0;
    std::vector<double> alpha;
    std::vector<double> beta;

    // Throws std::invalid_argument naming the violated pair.
    void validate() const;
};

enum class Scheme {
    full_space,            // quadrant, alpha/beta columns
    trapezoid,             // trapezoidal point-to-line model
    symmetrized,           // reflection-doubled trapezoid, halved diagonal
    boundary_full,         // quadrant, theta0 on column 1, theta in bulk
    boundary_trapezoid,    // trapezoid, theta0 on the diagonal, theta elsewhere
    stationary,            // stationary boundary weights, unit corner
};

// Per-cell inverse-gamma shapes plus the deterministic-cell and
// halved-diagonal flags.
struct ParameterField {
    PolygonalDomain domain;
    std::vector<double> theta;
    std::vector<uint8_t> unit_cell;    // weight identically 1
    std::vector<uint8_t> halved;       // sampled value divided by 2

    double theta_at(int i, int j) const { return theta[domain.cell_index(i, j)]; }
    bool is_unit(int i, int j) const { return unit_cell[domain.cell_index(i, j)] != 0; }
};

ParameterField make_full_space_field(const ParameterSet& p, int n, int m);
ParameterField make_trapezoid_field(const ParameterSet& p, int n, int m);
ParameterField make_symmetrized_field(const ParameterSet& p, int n, int m);
// paramGUE / paramTrapGUE; sizes follow the n-by-m quadrant convention, the
// trapezoid variant requires m >= n + 1 and maps to trapezoid(n, m - n - 1).
ParameterField make_boundary_field(double theta, double theta0, int n, int m, bool trapezoid);
ParameterField make_stationary_field(double theta, double theta0, int n, int m);

// Sampled weights in log space.
struct WeightArray {
    PolygonalDomain domain;
    std::vector<double> log_w;

    double at(int i, int j) const { return log_w[domain.cell_index(i, j)]; }
    double& at(int i, int j) { return log_w[domain.cell_index(i, j)]; }
    bool symmetric() const;
};

// Independent inverse-gamma draws per cell; symmetric-union domains are
// sampled on i <= j and mirrored so the array is symmetric bit for bit.
WeightArray sample_weights(const ParameterField& field, RngStream& rng);

std::string weight_array_to_csv(const WeightArray& w);
WeightArray weight_array_from_csv(const std::string& csv, const PolygonalDomain& domain);

struct PartitionResult {
    LogPositive log_z;
    int endpoint_i = 0, endpoint_j = 0;   // (0,0) for line/summed endpoints
    std::optional<uint64_t> path_count;   // populated when cell count <= 24
};

PartitionResult partition_point_to_point(const WeightArray& w, int ti, int tj);
// Z^flat over the endpoints (k, 2n-k+m+1), k = 1..n, of trapezoid(n, m).
PartitionResult partition_point_to_line(const WeightArray& w, int n, int m);
// Symmetrized partition function over both half-domains of the union shape.
PartitionResult partition_symmetrized(const WeightArray& w, int n, int m);
PartitionResult partition_stationary(double theta, double theta0, int n, int m, RngStream& rng);

}  // namespace lgp

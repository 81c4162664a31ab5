#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "gfc/curve.hpp"
#include "gfc/periods.hpp"

namespace gfc {

using BigInt = boost::multiprecision::cpp_int;
using BigRow = std::vector<BigInt>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Row s -> (Re entries(s, :), Im entries(s, :)).
Eigen::MatrixXd real_split(const Eigen::MatrixXcd& entries);
Eigen::MatrixXd real_split(const PeriodMatrix& pm);

/// Number of singular values above rank_tol * largest.
int lattice_rank(const Eigen::MatrixXd& vectors, double rank_tol = 1e-8);

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

/// First continued-fraction convergent p/q of x with |x - p/q| <= tol.
/// Empty if every such convergent has q > max_den.
std::optional<Fraction> rational_approximation(double x, std::int64_t max_den, double tol);

/// Row-style Hermite normal form of the integer row span of `input`: upper
/// triangular, positive pivots, entries above each pivot in [0, pivot).
/// combinations(r, s) expresses row r as a combination of input row s.
struct HermiteForm {
    std::vector<BigRow> rows;
    std::vector<BigRow> combinations;
};
HermiteForm hermite_normal_form(const std::vector<BigRow>& input);

struct LatticeBasis {
    /// One basis vector per row.
    Eigen::MatrixXd basis;
    /// coefficients(s, :) * basis reproduces generator s.
    IntMatrix coefficients;
    /// generator_combinations(r, :) * generators reproduces basis row r.
    IntMatrix generator_combinations;
    double residual = 0.0;
    double abs_det = 0.0;
    /// Generators picked as the initial independent set.
    std::vector<Eigen::Index> pivot_rows;
    /// Common denominator of generator coordinates over the pivot rows.
    BigInt denominator = 1;
};

struct ExtractOptions {
    int expected_rank = 0;
    std::int64_t denominator_bound = 1;
    double rank_tol = 1e-8;
    double match_tol = 1e-7;
    double residual_tol = 1e-6;
};

/// expected_rank = 2g, denominator bound k^(2n).
ExtractOptions default_extract_options(const CurveSpec& spec);

LatticeBasis extract_basis(const Eigen::MatrixXd& vectors, const ExtractOptions& options);
LatticeBasis extract_basis(const Eigen::MatrixXd& vectors, const CurveSpec& spec);

/// Integer coordinates of `vectors` in the square `basis`, when they exist.
struct Expressibility {
    bool integral = false;
    double max_coordinate_error = 0.0;
    double residual = 0.0;
    IntMatrix coordinates;
};
Expressibility express_in_basis(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& vectors,
                                double tol = 1e-6);

/// Both lattices contain each other's generators with integer coordinates.
bool same_lattice(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-6);

}  // namespace gfc

#pragma once

#include "bifractal/bernstein.hpp"
#include "bifractal/field.hpp"

#include <cstddef>
#include <vector>

namespace bifractal {

/// Input of the epsilon-driven constructors. `seed` is the rough function whose
/// graph dimension the output inherits (e.g. a lifted Weierstrass series).
struct ApproxRequest {
    Field2D target;
    double epsilon = 0.1;
    Field2D seed;
    /// Bernstein degrees tried, in order, for the Lipschitz part.
    std::vector<int> degree_schedule{1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    std::size_t check_resolution = 257;
    std::size_t seed_norm_resolution = 1025;
};

void validate(const ApproxRequest& req);

struct DenseApproximant {
    Field2D result;            ///< h_* = g + (epsilon / (2 ||h||)) h
    Field2D lipschitz_part;    ///< g = B_{m,m}(f)
    BernsteinDegrees degrees;
    double lipschitz_error = 0.0; ///< sampled ||f - g||
    double seed_norm = 0.0;       ///< sampled ||h||
    double seed_weight = 0.0;     ///< epsilon / (2 ||h||)
};

/// Picks the first scheduled degree with sampled ||f - B f|| < epsilon / 2.
/// Throws ApproximationError if the schedule runs out.
[[nodiscard]] DenseApproximant dense_approximant(const ApproxRequest& req);

struct ShiftedApproximant {
    Field2D result;
    DenseApproximant inner; ///< built at epsilon / 2
    double shift = 0.0;     ///< result = inner.result + shift
};

/// g = h_* + epsilon/2 >= f >= 0. Requires f >= -1e-12 on the check grid.
[[nodiscard]] ShiftedApproximant nonnegative_approximant(const ApproxRequest& req);
/// g = h_* - epsilon/2 <= f.
[[nodiscard]] ShiftedApproximant lower_approximant(const ApproxRequest& req);
/// g = h_* + epsilon/2 >= f.
[[nodiscard]] ShiftedApproximant upper_approximant(const ApproxRequest& req);

struct ConvexApproximant {
    Field2D result;             ///< g = iterated integral of `derivative`
    ShiftedApproximant derivative; ///< h' >= 0 close to D^(m,n) f
    double derivative_epsilon = 0.0;
};

/// (m,n)-convex approximant: approximates D^(m,n) f (supplied as `dmn_f`)
/// by a non-negative rough h' within epsilon / ((b-a)^m (d-c)^n), then
/// integrates it back m times in x and n times in y.
[[nodiscard]] ConvexApproximant convex_approximant(const Field2D& f, const Field2D& dmn_f, int m, int n,
                                                   double epsilon, const Field2D& seed,
                                                   std::size_t quadrature_resolution = 513);

struct BasisSet {
    std::vector<Field2D> fields;
    std::vector<double> integrals;
    double gram_condition = 0.0;
};

/// Integrates each field and checks numerical independence (Gram condition
/// number of grid samples below 1e10); throws ArgumentError otherwise.
[[nodiscard]] BasisSet make_basis(std::vector<Field2D> fields, std::size_t grid_resolution = 33);

struct OneSidedSolution {
    std::vector<double> coefficients;
    double objective = 0.0;      ///< sum c_i int g_i
    std::size_t grid_resolution = 0;
    double max_violation = 0.0;  ///< max over grid of sum c_i g_i - f
    std::size_t pivots = 0;

    [[nodiscard]] Field2D as_field(const BasisSet& basis) const;
};

inline constexpr double kLpFeasibilityTol = 1e-9;

/// Best one-sided approximation from below on the grid relaxation:
/// maximize sum c_i int g_i subject to sum c_i g_i(p) <= f(p) at every node p.
[[nodiscard]] OneSidedSolution best_one_sided_below(const Field2D& f, const BasisSet& basis,
                                                    std::size_t grid_resolution = 33);

} // namespace bifractal

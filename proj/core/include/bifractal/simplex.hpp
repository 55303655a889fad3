#pragma once

#include <cstddef>
#include <vector>

namespace bifractal {

/// minimize c^T y  subject to  A y = b,  y >= 0.
/// A is rows x cols, row-major.
struct EqualityLp {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> A;
    std::vector<double> b;
    std::vector<double> c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    std::vector<double> y;      ///< primal solution
    std::vector<double> duals;  ///< multipliers pi with c - A^T pi >= 0 at optimum
    double objective = 0.0;
    std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's rule (deterministic, no cycling).
[[nodiscard]] LpResult solve_equality_lp(const EqualityLp& lp, double pivot_tol = 1e-10);

} // namespace bifractal

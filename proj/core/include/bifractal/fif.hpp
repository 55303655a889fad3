#pragma once

#include "bifractal/bernstein.hpp"
#include "bifractal/boxdim.hpp"
#include "bifractal/field.hpp"
#include "bifractal/grid.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bifractal {

/// Rectangular net: knots x_0 = a < ... < x_N = b and y_0 = c < ... < y_M = d.
struct Net {
    Rect domain;
    std::vector<double> knots_x;
    std::vector<double> knots_y;

    [[nodiscard]] std::size_t cells_x() const noexcept { return knots_x.size() - 1; }
    [[nodiscard]] std::size_t cells_y() const noexcept { return knots_y.size() - 1; }
    /// True when both knot vectors are the uniform ones make_net would build.
    [[nodiscard]] bool uniform() const;
};

/// Uniform net with N x M cells (N, M >= 2).
[[nodiscard]] Net make_net(const Rect& domain, int N, int M);
/// Explicit knots; must be strictly increasing with the domain endpoints at the ends.
[[nodiscard]] Net make_net(const Rect& domain, std::vector<double> knots_x, std::vector<double> knots_y);

/// Affine u_i : I -> I_i. Odd cells keep orientation, even cells flip it, so
/// neighbouring images meet at shared knots.
class AxisMap {
public:
    AxisMap(Interval whole, double left_knot, double right_knot, bool increasing);

    [[nodiscard]] double forward(double t) const noexcept;
    [[nodiscard]] double inverse(double t) const noexcept;
    /// Contraction ratio (x_i - x_{i-1}) / (b - a).
    [[nodiscard]] double ratio() const noexcept { return (right_ - left_) / whole_.width(); }
    [[nodiscard]] bool increasing() const noexcept { return increasing_; }
    [[nodiscard]] Interval image() const noexcept { return {left_, right_}; }

private:
    Interval whole_;
    double left_;
    double right_;
    bool increasing_;
};

struct ContractionSystem {
    std::vector<AxisMap> u; ///< u[i-1] is u_i
    std::vector<AxisMap> v; ///< v[j-1] is v_j

    /// 1-based cell index of x; points on a shared knot go to the lower cell.
    [[nodiscard]] std::size_t cell_x(double x) const;
    [[nodiscard]] std::size_t cell_y(double y) const;
    /// Q_ij(p) = (u_i^{-1}(x), v_j^{-1}(y)) for 1-based i, j.
    [[nodiscard]] Point2 expand(std::size_t i, std::size_t j, Point2 p) const;
};

[[nodiscard]] ContractionSystem make_maps(const Net& net);

enum class InitialIterate { Germ, Zero };

struct FractalSurfaceSpec {
    Field2D germ;  ///< f
    Field2D base;  ///< s, must match f at the four domain corners
    Field2D scale; ///< alpha, sup-norm < 1
    Net net;
    int refinement = 32;  ///< grid has refinement * N + 1 nodes per axis
    double tol = 1e-10;   ///< stop once the sup of a sweep update is <= tol
    int max_iter = 0;     ///< 0: ceil(log(tol) / log ||alpha||) + 16
    InitialIterate initial = InitialIterate::Germ;
};

struct FractalSurface {
    GridSample values;
    Net net;
    int refinement = 0;
    int iterations = 0;
    double residual = 0.0;             ///< sup of the last sweep update
    double equation_residual = 0.0;    ///< sup |g - f - alpha (g o Q - s o Q)| at the grid nodes
    double alpha_sup = 0.0;
    std::vector<double> deltas;        ///< sup-norm of every sweep update
    bool interpolated = false;         ///< iterate read off-grid (non-uniform net)
    std::optional<BernsteinDegrees> degrees; ///< set when built by fractal_operator

    [[nodiscard]] Field2D as_field() const;
};

[[nodiscard]] FractalSurface solve_fractal_surface(const FractalSurfaceSpec& spec);

/// F^alpha_{m,n}(f): the fractal surface with base s = B_{m,n}(f).
[[nodiscard]] FractalSurface fractal_operator(const Field2D& f, const Field2D& alpha, const Net& net,
                                              BernsteinDegrees deg, int refinement = 32, double tol = 1e-10);

struct PerturbationReport {
    double lhs = 0.0;          ///< ||f - F f||
    double sharp_rhs = 0.0;    ///< ||alpha|| ||F f - B f||
    double relaxed_rhs = 0.0;  ///< ||alpha|| (||F f|| + ||f||)
    double slack = 0.0;
    double margin = 0.0;       ///< sharp_rhs + slack - lhs
    [[nodiscard]] bool holds() const noexcept { return margin >= 0.0; }
};

/// Evaluates both sides of ||f - F f|| <= ||alpha|| ||F f - B f|| on the surface grid.
[[nodiscard]] PerturbationReport perturbation_check(const Field2D& f, const Field2D& alpha, BernsteinDegrees deg,
                                                    const FractalSurface& surface);

/// Holder data: |f(x) - f(y)| <= K_f d^sigma, |s(x) - s(y)| <= K_s d^sigma and
/// the reverse bound k_f d^sigma at some y within every delta < delta0.
struct HolderWitness {
    double sigma = 1.0;
    double K_f = 1.0;
    double K_s = 1.0;
    double k_f = 1.0;
    double delta0 = 0.1;
    std::optional<double> K_falpha; ///< Holder constant of the fractal surface, if known
};

void validate(const HolderWitness& w);

/// min(1/M, k_f / ((K_falpha + K_s) M^sigma)). Needs K_falpha.
[[nodiscard]] double alpha_admissible_bound(const HolderWitness& w, int M);

/// max |g(p) - g(q)| / |p - q|^sigma over axis-aligned node pairs at distance <= delta0.
[[nodiscard]] double estimate_holder_constant(const GridSample& g, double sigma, double delta0);

struct DimFormulaReport {
    double sigma = 0.0;
    double target = 0.0;          ///< 3 - sigma
    double alpha = 0.0;
    double bound = 0.0;
    double K_falpha = 0.0;
    bool K_falpha_estimated = false;
    int iterations = 0;
    DimensionEstimate estimate;
    [[nodiscard]] double gap() const noexcept { return estimate.slope - target; }
};

/// Solves the surface with constant alpha on the uniform M x M net, base
/// s = B_{1,1}(f), and box-counts its graph.
[[nodiscard]] DimFormulaReport dim_formula_experiment(const HolderWitness& w, const Field2D& f, int M,
                                                      double alpha, int refinement, double tol,
                                                      const ScaleSchedule& schedule);

} // namespace bifractal

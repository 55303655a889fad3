#include "bifractal/approx.hpp"

#include "bifractal/calculus.hpp"
#include "bifractal/errors.hpp"
#include "bifractal/grid.hpp"
#include "bifractal/sampling.hpp"
#include "bifractal/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bifractal {

void validate(const ApproxRequest& req)
{
    if (!(req.epsilon > 0.0) || !std::isfinite(req.epsilon)) {
        throw ArgumentError("epsilon must be positive and finite");
    }
    if (!(req.seed.domain() == req.target.domain())) {
        throw ArgumentError("seed and target must share a domain");
    }
    if (req.degree_schedule.empty()) {
        throw ArgumentError("degree schedule is empty");
    }
    for (int d : req.degree_schedule) {
        validate(BernsteinDegrees{d, d});
    }
    if (req.check_resolution < 2 || req.seed_norm_resolution < 2) {
        throw ArgumentError("check and seed-norm resolutions must be >= 2");
    }
}

DenseApproximant dense_approximant(const ApproxRequest& req)
{
    validate(req);
    const GridSample check = sample(req.target, req.check_resolution, req.check_resolution);
    const std::vector<double> xs = check.xs();
    const std::vector<double> ys = check.ys();
    const double half = req.epsilon / 2.0;

    double best_err = std::numeric_limits<double>::infinity();
    int best_deg = 0;
    DenseApproximant out;
    bool found = false;
    for (int d : req.degree_schedule) {
        const BernsteinDegrees deg{d, d};
        Field2D g = bernstein_apply(req.target, deg);
        const double err = max_abs_diff(check.values, g.tabulate(xs, ys));
        if (err < best_err) {
            best_err = err;
            best_deg = d;
        }
        if (err < half) {
            out.lipschitz_part = std::move(g);
            out.degrees = deg;
            out.lipschitz_error = err;
            found = true;
            break;
        }
    }
    if (!found) {
        throw ApproximationError("degree schedule exhausted: best sampled ||f - B f|| = " + format_real(best_err) +
                                 " at degree " + std::to_string(best_deg) + ", need < " + format_real(half));
    }
    out.seed_norm = sup_norm(req.seed, req.seed_norm_resolution);
    if (!(out.seed_norm > 0.0)) {
        throw ArgumentError("seed must not vanish (sampled sup-norm is 0)");
    }
    out.seed_weight = req.epsilon / (2.0 * out.seed_norm);
    out.result = affine_combination({{1.0, out.lipschitz_part}, {out.seed_weight, req.seed}});
    return out;
}

namespace {

ShiftedApproximant shifted(const ApproxRequest& req, double sign)
{
    ApproxRequest inner = req;
    inner.epsilon = req.epsilon / 2.0;
    ShiftedApproximant out;
    out.inner = dense_approximant(inner);
    out.shift = sign * req.epsilon / 2.0;
    out.result = constant_shift(out.inner.result, out.shift);
    return out;
}

} // namespace

ShiftedApproximant nonnegative_approximant(const ApproxRequest& req)
{
    validate(req);
    const GridSample check = sample(req.target, req.check_resolution, req.check_resolution);
    const double lowest = *std::min_element(check.values.begin(), check.values.end());
    if (lowest < -1e-12) {
        throw PreconditionError("nonnegative_approximant: target takes the value " + format_real(lowest) +
                                " on the check grid");
    }
    return shifted(req, 1.0);
}

ShiftedApproximant lower_approximant(const ApproxRequest& req) { return shifted(req, -1.0); }
ShiftedApproximant upper_approximant(const ApproxRequest& req) { return shifted(req, 1.0); }

ConvexApproximant convex_approximant(const Field2D& f, const Field2D& dmn_f, int m, int n, double epsilon,
                                     const Field2D& seed, std::size_t quadrature_resolution)
{
    if (m < 1 || n < 1) {
        throw ArgumentError("convex_approximant: m and n must be >= 1");
    }
    if (!(dmn_f.domain() == f.domain())) {
        throw ArgumentError("convex_approximant: f and its mixed partial must share a domain");
    }
    const Rect& dom = f.domain();
    constexpr std::size_t probes = 257;
    for (std::size_t k = 0; k < probes; ++k) {
        const double y = dom.y.node(k, probes);
        const double x = dom.x.node(k, probes);
        const double left = f.eval(dom.x.lo, y);
        const double bottom = f.eval(x, dom.y.lo);
        if (std::abs(left) > 1e-9 || std::abs(bottom) > 1e-9) {
            throw PreconditionError("convex_approximant: f must vanish on x = a and y = c (found " +
                                    format_real(std::max(std::abs(left), std::abs(bottom))) + ")");
        }
    }
    ConvexApproximant out;
    out.derivative_epsilon = epsilon / (std::pow(dom.x.width(), m) * std::pow(dom.y.width(), n));
    ApproxRequest req;
    req.target = dmn_f;
    req.seed = seed;
    req.epsilon = out.derivative_epsilon;
    out.derivative = nonnegative_approximant(req);
    out.result = iterated_integral(out.derivative.result, m, n, quadrature_resolution);
    return out;
}

BasisSet make_basis(std::vector<Field2D> fields, std::size_t grid_resolution)
{
    if (fields.empty()) {
        throw ArgumentError("make_basis: no fields");
    }
    if (grid_resolution < 2) {
        throw ArgumentError("make_basis: grid resolution must be >= 2");
    }
    const Rect dom = fields.front().domain();
    for (const Field2D& g : fields) {
        if (!(g.domain() == dom)) {
            throw ArgumentError("make_basis: fields must share a domain");
        }
    }
    const std::size_t k = fields.size();
    const std::size_t p = grid_resolution * grid_resolution;
    Eigen::MatrixXd S(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k));
    BasisSet out;
    for (std::size_t c = 0; c < k; ++c) {
        const GridSample s = sample(fields[c], grid_resolution, grid_resolution);
        for (std::size_t r = 0; r < p; ++r) {
            S(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.values[r];
        }
        out.integrals.push_back(integrate(fields[c]));
    }
    const Eigen::MatrixXd gram = S.transpose() * S;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    out.gram_condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(out.gram_condition < 1e10)) {
        throw ArgumentError("make_basis: fields are not numerically independent (Gram condition " +
                            format_real(out.gram_condition) + ")");
    }
    out.fields = std::move(fields);
    return out;
}

Field2D OneSidedSolution::as_field(const BasisSet& basis) const
{
    std::vector<WeightedField> terms;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        terms.push_back({coefficients[k], basis.fields[k]});
    }
    return affine_combination(std::move(terms));
}

OneSidedSolution best_one_sided_below(const Field2D& f, const BasisSet& basis, std::size_t grid_resolution)
{
    if (grid_resolution < 16) {
        throw ArgumentError("best_one_sided_below: grid resolution must be >= 16");
    }
    if (basis.fields.empty() || !(basis.fields.front().domain() == f.domain())) {
        throw ArgumentError("best_one_sided_below: basis must be non-empty and share the target's domain");
    }
    const std::size_t k = basis.fields.size();
    const GridSample fs = sample(f, grid_resolution, grid_resolution);
    const std::size_t p = fs.values.size();

    // Dual form: min f^T y  s.t.  G^T y = integrals, y >= 0. Its multipliers
    // are the primal coefficients.
    EqualityLp lp;
    lp.rows = k;
    lp.cols = p;
    lp.A.resize(k * p);
    std::vector<std::vector<double>> g(k);
    for (std::size_t c = 0; c < k; ++c) {
        g[c] = sample(basis.fields[c], grid_resolution, grid_resolution).values;
        std::copy(g[c].begin(), g[c].end(), lp.A.begin() + static_cast<std::ptrdiff_t>(c * p));
    }
    lp.b = basis.integrals;
    lp.c = fs.values;
    const LpResult res = solve_equality_lp(lp);
    if (res.status == LpStatus::Infeasible) {
        throw UnboundedError("best_one_sided_below: the integral can grow without bound under the constraints");
    }
    if (res.status == LpStatus::Unbounded) {
        throw InfeasibleError("best_one_sided_below: no combination lies below f on the grid");
    }

    OneSidedSolution out;
    out.coefficients = res.duals;
    out.grid_resolution = grid_resolution;
    out.pivots = res.pivots;
    double obj = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        obj += out.coefficients[c] * basis.integrals[c];
    }
    out.objective = obj;
    double violation = -std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < p; ++q) {
        double h = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            h += out.coefficients[c] * g[c][q];
        }
        violation = std::max(violation, h - fs.values[q]);
    }
    out.max_violation = violation;
    return out;
}

} // namespace bifractal

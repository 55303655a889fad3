#include "bifractal/fif.hpp"

#include "bifractal/errors.hpp"
#include "bifractal/parallel.hpp"
#include "bifractal/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bifractal {

bool Net::uniform() const
{
    auto check = [](const Interval& axis, const std::vector<double>& knots) {
        for (std::size_t i = 0; i < knots.size(); ++i) {
            if (knots[i] != axis.node(i, knots.size())) {
                return false;
            }
        }
        return true;
    };
    return check(domain.x, knots_x) && check(domain.y, knots_y);
}

namespace {

std::vector<double> uniform_knots(const Interval& axis, int cells)
{
    std::vector<double> knots(static_cast<std::size_t>(cells) + 1);
    for (std::size_t i = 0; i < knots.size(); ++i) {
        knots[i] = axis.node(i, knots.size());
    }
    return knots;
}

void check_knots(const Interval& axis, std::vector<double>& knots, const char* name)
{
    if (knots.size() < 3) {
        throw ArgumentError(std::string(name) + ": need at least 2 cells (3 knots)");
    }
    const double slack = 1e-12 * axis.width();
    if (std::abs(knots.front() - axis.lo) > slack || std::abs(knots.back() - axis.hi) > slack) {
        throw ArgumentError(std::string(name) + ": first and last knots must be the domain endpoints");
    }
    knots.front() = axis.lo;
    knots.back() = axis.hi;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i] > knots[i - 1])) {
            throw ArgumentError(std::string(name) + ": knots must be strictly increasing (knot " + std::to_string(i) +
                                " = " + format_real(knots[i]) + ")");
        }
    }
}

} // namespace

Net make_net(const Rect& domain, int N, int M)
{
    validate(domain);
    if (N < 2 || M < 2) {
        throw ArgumentError("make_net: N and M must be >= 2, got " + std::to_string(N) + ", " + std::to_string(M));
    }
    return {domain, uniform_knots(domain.x, N), uniform_knots(domain.y, M)};
}

Net make_net(const Rect& domain, std::vector<double> knots_x, std::vector<double> knots_y)
{
    validate(domain);
    check_knots(domain.x, knots_x, "knots_x");
    check_knots(domain.y, knots_y, "knots_y");
    return {domain, std::move(knots_x), std::move(knots_y)};
}

AxisMap::AxisMap(Interval whole, double left_knot, double right_knot, bool increasing)
    : whole_(whole), left_(left_knot), right_(right_knot), increasing_(increasing)
{
}

double AxisMap::forward(double t) const noexcept
{
    const double s = (t - whole_.lo) / whole_.width();
    return increasing_ ? left_ + s * (right_ - left_) : right_ - s * (right_ - left_);
}

double AxisMap::inverse(double t) const noexcept
{
    const double s = increasing_ ? (t - left_) / (right_ - left_) : (right_ - t) / (right_ - left_);
    return whole_.lo + s * whole_.width();
}

namespace {

std::vector<AxisMap> axis_maps(const Interval& whole, const std::vector<double>& knots)
{
    std::vector<AxisMap> maps;
    maps.reserve(knots.size() - 1);
    for (std::size_t i = 1; i < knots.size(); ++i) {
        maps.emplace_back(whole, knots[i - 1], knots[i], i % 2 == 1);
    }
    return maps;
}

std::size_t cell_of(const std::vector<AxisMap>& maps, double t)
{
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (t <= maps[i].image().hi) {
            return i + 1;
        }
    }
    return maps.size();
}

} // namespace

std::size_t ContractionSystem::cell_x(double x) const { return cell_of(u, x); }
std::size_t ContractionSystem::cell_y(double y) const { return cell_of(v, y); }

Point2 ContractionSystem::expand(std::size_t i, std::size_t j, Point2 p) const
{
    if (i < 1 || i > u.size() || j < 1 || j > v.size()) {
        throw ArgumentError("expand: cell index out of range");
    }
    return {u[i - 1].inverse(p.x), v[j - 1].inverse(p.y)};
}

ContractionSystem make_maps(const Net& net)
{
    return {axis_maps(net.domain.x, net.knots_x), axis_maps(net.domain.y, net.knots_y)};
}

Field2D FractalSurface::as_field() const { return tabulated(values, "fractal-surface"); }

namespace {

// Where Q sends each grid node along one axis: the image coordinate and, for
// reading the iterate, the grid cell (lo) and weight towards lo + 1.
struct AxisImage {
    std::vector<double> coord;
    std::vector<std::size_t> lo;
    std::vector<double> weight;
    bool exact = true;
};

AxisImage axis_image(const Interval& axis, const std::vector<double>& knots, const std::vector<AxisMap>& maps,
                     int refinement, bool uniform)
{
    const std::size_t cells = knots.size() - 1;
    const auto R = static_cast<std::size_t>(refinement);
    const std::size_t n = R * cells + 1;
    AxisImage img;
    img.coord.resize(n);
    img.lo.resize(n);
    img.weight.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (uniform) {
            // Integer arithmetic: Q sends nodes onto nodes.
            const std::size_t i = k == 0 ? 1 : (k + R - 1) / R;
            const std::size_t l = k - (i - 1) * R;
            const std::size_t target = (i % 2 == 1) ? l * cells : (R - l) * cells;
            img.lo[k] = target;
            img.coord[k] = axis.node(target, n);
            continue;
        }
        const double x = axis.node(k, n);
        const std::size_t i = cell_of(maps, x);
        const double t = std::clamp(maps[i - 1].inverse(x), axis.lo, axis.hi);
        img.coord[k] = t;
        double u = (t - axis.lo) / axis.width() * static_cast<double>(n - 1);
        const double nearest = std::nearbyint(u);
        if (std::abs(u - nearest) <= 1e-9) {
            u = nearest;
        }
        const double base = std::min(std::floor(u), static_cast<double>(n - 1));
        img.lo[k] = static_cast<std::size_t>(base);
        img.weight[k] = u - base;
        if (img.weight[k] != 0.0) {
            img.exact = false;
        }
    }
    return img;
}

// out[p] = scale[p] * v(Q p) for all grid nodes p; returns max |out|.
double apply_scaled_composition(const std::vector<double>& v, const std::vector<double>& scale, const AxisImage& ix,
                                const AxisImage& iy, std::size_t nx, std::vector<double>& out)
{
    const std::size_t ny = iy.lo.size();
    const bool exact = ix.exact && iy.exact;
    std::vector<double> row_max(ny, 0.0);
    parallel_for(ny, [&](std::size_t j0, std::size_t j1) {
        for (std::size_t j = j0; j < j1; ++j) {
            const std::size_t yl = iy.lo[j];
            const double wy = iy.weight[j];
            double m = 0.0;
            for (std::size_t i = 0; i < nx; ++i) {
                const std::size_t xl = ix.lo[i];
                double value;
                if (exact) {
                    value = v[yl * nx + xl];
                } else {
                    const double wx = ix.weight[i];
                    const double v00 = v[yl * nx + xl];
                    const double v10 = wx == 0.0 ? v00 : v[yl * nx + xl + 1];
                    const double lower = v00 + wx * (v10 - v00);
                    if (wy == 0.0) {
                        value = lower;
                    } else {
                        const double v01 = v[(yl + 1) * nx + xl];
                        const double v11 = wx == 0.0 ? v01 : v[(yl + 1) * nx + xl + 1];
                        const double upper = v01 + wx * (v11 - v01);
                        value = lower + wy * (upper - lower);
                    }
                }
                const std::size_t p = j * nx + i;
                out[p] = scale[p] * value;
                m = std::max(m, std::abs(out[p]));
            }
            row_max[j] = m;
        }
    });
    return *std::max_element(row_max.begin(), row_max.end());
}

} // namespace

FractalSurface solve_fractal_surface(const FractalSurfaceSpec& spec)
{
    const Net& net = spec.net;
    const Rect& dom = net.domain;
    if (!(spec.germ.domain() == dom) || !(spec.base.domain() == dom) || !(spec.scale.domain() == dom)) {
        throw ArgumentError("solve_fractal_surface: germ, base and scale must live on the net's domain");
    }
    if (spec.refinement < 1) {
        throw ArgumentError("solve_fractal_surface: refinement must be >= 1");
    }
    if (!(spec.tol > 0.0)) {
        throw ArgumentError("solve_fractal_surface: tol must be positive");
    }
    for (double x : {dom.x.lo, dom.x.hi}) {
        for (double y : {dom.y.lo, dom.y.hi}) {
            const double gap = std::abs(spec.base.eval(x, y) - spec.germ.eval(x, y));
            if (gap > 1e-9) {
                throw ArgumentError("solve_fractal_surface: base and germ differ by " + format_real(gap) +
                                    " at corner (" + format_real(x) + ", " + format_real(y) + ")");
            }
        }
    }

    const bool uniform = net.uniform();
    const ContractionSystem maps = make_maps(net);
    const AxisImage ix = axis_image(dom.x, net.knots_x, maps.u, spec.refinement, uniform);
    const AxisImage iy = axis_image(dom.y, net.knots_y, maps.v, spec.refinement, uniform);
    const std::size_t nx = ix.lo.size();
    const std::size_t ny = iy.lo.size();

    FractalSurface out;
    out.net = net;
    out.refinement = spec.refinement;
    out.interpolated = !(ix.exact && iy.exact);
    out.values = GridSample(dom, nx, ny);
    const std::vector<double> xs = out.values.xs();
    const std::vector<double> ys = out.values.ys();

    const std::vector<double> f = spec.germ.tabulate(xs, ys);
    const std::vector<double> alpha = spec.scale.tabulate(xs, ys);
    const std::vector<double> sq = spec.base.tabulate(ix.coord, iy.coord);
    out.alpha_sup = std::max(max_abs(alpha), sup_norm(spec.scale, 257));
    if (!(out.alpha_sup < 1.0)) {
        throw AdmissibilityError("scale function must satisfy ||alpha|| < 1, got " + format_real(out.alpha_sup));
    }
    int max_iter = spec.max_iter;
    if (max_iter <= 0) {
        const double lead = out.alpha_sup > 0.0 ? std::ceil(std::log(spec.tol) / std::log(out.alpha_sup)) : 0.0;
        max_iter = static_cast<int>(lead) + 16;
    }

    std::vector<double>& g = out.values.values;
    if (spec.initial == InitialIterate::Germ) {
        g = f;
    } else {
        std::fill(g.begin(), g.end(), 0.0);
    }

    // First sweep directly: g1 = f + alpha (g0 o Q - s o Q).
    std::vector<double> gq(g.size());
    (void)apply_scaled_composition(g, std::vector<double>(g.size(), 1.0), ix, iy, nx, gq);
    std::vector<double> update(g.size());
    double delta = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        const double next = f[p] + alpha[p] * (gq[p] - sq[p]);
        update[p] = next - g[p];
        g[p] = next;
        delta = std::max(delta, std::abs(update[p]));
    }
    out.deltas.push_back(delta);

    // Later sweeps in increment form: g_{k+1} - g_k = alpha (g_k - g_{k-1}) o Q.
    std::vector<double> next_update(g.size());
    while (delta > spec.tol) {
        if (static_cast<int>(out.deltas.size()) >= max_iter) {
            throw ConvergenceError("fixed-point iteration stopped after " + std::to_string(max_iter) +
                                       " sweeps with residual " + format_real(delta),
                                   out.deltas);
        }
        delta = apply_scaled_composition(update, alpha, ix, iy, nx, next_update);
        for (std::size_t p = 0; p < g.size(); ++p) {
            g[p] += next_update[p];
        }
        update.swap(next_update);
        out.deltas.push_back(delta);
    }
    out.iterations = static_cast<int>(out.deltas.size());
    out.residual = delta;

    (void)apply_scaled_composition(g, std::vector<double>(g.size(), 1.0), ix, iy, nx, gq);
    double eq = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        eq = std::max(eq, std::abs(g[p] - f[p] - alpha[p] * (gq[p] - sq[p])));
    }
    out.equation_residual = eq;
    return out;
}

FractalSurface fractal_operator(const Field2D& f, const Field2D& alpha, const Net& net, BernsteinDegrees deg,
                                int refinement, double tol)
{
    FractalSurfaceSpec spec{f, bernstein_apply(f, deg), alpha, net, refinement, tol};
    FractalSurface s = solve_fractal_surface(spec);
    s.degrees = deg;
    return s;
}

PerturbationReport perturbation_check(const Field2D& f, const Field2D& alpha, BernsteinDegrees deg,
                                      const FractalSurface& surface)
{
    if (!surface.degrees || surface.degrees->m != deg.m || surface.degrees->n != deg.n) {
        throw ArgumentError("perturbation_check: surface was not built by fractal_operator with these degrees");
    }
    if (!(surface.values.domain == f.domain()) || !(alpha.domain() == f.domain())) {
        throw ArgumentError("perturbation_check: domain mismatch");
    }
    const std::vector<double> xs = surface.values.xs();
    const std::vector<double> ys = surface.values.ys();
    const std::vector<double> fv = f.tabulate(xs, ys);
    const std::vector<double> bv = bernstein_apply(f, deg).tabulate(xs, ys);
    const std::vector<double>& Ff = surface.values.values;
    const double alpha_sup = max_abs(alpha.tabulate(xs, ys));

    PerturbationReport r;
    r.lhs = max_abs_diff(fv, Ff);
    r.sharp_rhs = alpha_sup * max_abs_diff(Ff, bv);
    r.relaxed_rhs = alpha_sup * (max_abs(Ff) + max_abs(fv));
    r.slack = 10.0 * surface.residual + surface.equation_residual;
    r.margin = r.sharp_rhs + r.slack - r.lhs;
    return r;
}

void validate(const HolderWitness& w)
{
    if (!(w.sigma > 0.0 && w.sigma <= 1.0)) {
        throw ArgumentError("HolderWitness: sigma must lie in (0, 1]");
    }
    if (!(w.K_f > 0.0) || !(w.K_s > 0.0) || !(w.k_f > 0.0) || !(w.delta0 > 0.0)) {
        throw ArgumentError("HolderWitness: K_f, K_s, k_f and delta0 must be positive");
    }
    if (w.K_falpha && !(*w.K_falpha > 0.0)) {
        throw ArgumentError("HolderWitness: K_falpha must be positive");
    }
}

double alpha_admissible_bound(const HolderWitness& w, int M)
{
    validate(w);
    if (!w.K_falpha) {
        throw ArgumentError("alpha_admissible_bound: K_falpha is required");
    }
    if (M < 2) {
        throw ArgumentError("alpha_admissible_bound: M must be >= 2");
    }
    const double Md = static_cast<double>(M);
    return std::min(1.0 / Md, w.k_f / ((*w.K_falpha + w.K_s) * std::pow(Md, w.sigma)));
}

double estimate_holder_constant(const GridSample& g, double sigma, double delta0)
{
    if (!(sigma > 0.0 && sigma <= 1.0) || !(delta0 > 0.0)) {
        throw ArgumentError("estimate_holder_constant: need sigma in (0, 1] and delta0 > 0");
    }
    const double hx = g.domain.x.width() / static_cast<double>(g.nx - 1);
    const double hy = g.domain.y.width() / static_cast<double>(g.ny - 1);
    double best = 0.0;
    // Dyadic offsets up to delta0 along each axis.
    for (std::size_t k = 1; k < g.nx && static_cast<double>(k) * hx <= std::max(delta0, hx); k *= 2) {
        const double scale = std::pow(static_cast<double>(k) * hx, sigma);
        for (std::size_t j = 0; j < g.ny; ++j) {
            for (std::size_t i = 0; i + k < g.nx; ++i) {
                best = std::max(best, std::abs(g.at(i + k, j) - g.at(i, j)) / scale);
            }
        }
    }
    for (std::size_t k = 1; k < g.ny && static_cast<double>(k) * hy <= std::max(delta0, hy); k *= 2) {
        const double scale = std::pow(static_cast<double>(k) * hy, sigma);
        for (std::size_t j = 0; j + k < g.ny; ++j) {
            for (std::size_t i = 0; i < g.nx; ++i) {
                best = std::max(best, std::abs(g.at(i, j + k) - g.at(i, j)) / scale);
            }
        }
    }
    return best;
}

DimFormulaReport dim_formula_experiment(const HolderWitness& w, const Field2D& f, int M, double alpha,
                                        int refinement, double tol, const ScaleSchedule& schedule)
{
    validate(w);
    if (M < 2) {
        throw ArgumentError("dim_formula_experiment: M must be >= 2");
    }
    DimFormulaReport report;
    report.sigma = w.sigma;
    report.target = 3.0 - w.sigma;
    report.alpha = alpha;
    if (w.K_falpha) {
        report.K_falpha = *w.K_falpha;
        report.bound = alpha_admissible_bound(w, M);
        if (!(std::abs(alpha) < report.bound)) {
            throw ArgumentError("dim_formula_experiment: |alpha| = " + format_real(std::abs(alpha)) +
                                " violates the admissibility bound " + format_real(report.bound));
        }
    }
    const Net net = make_net(f.domain(), M, M);
    FractalSurfaceSpec spec{f, bernstein_apply(f, {1, 1}), constant(alpha, f.domain()), net, refinement, tol};
    const FractalSurface surface = solve_fractal_surface(spec);
    report.iterations = surface.iterations;
    if (!w.K_falpha) {
        HolderWitness filled = w;
        filled.K_falpha = estimate_holder_constant(surface.values, w.sigma, w.delta0);
        report.K_falpha = *filled.K_falpha;
        report.K_falpha_estimated = true;
        report.bound = alpha_admissible_bound(filled, M);
        if (!(std::abs(alpha) < report.bound)) {
            throw ArgumentError("dim_formula_experiment: |alpha| = " + format_real(std::abs(alpha)) +
                                " violates the admissibility bound " + format_real(report.bound) +
                                " (K_falpha estimated from the solved surface)");
        }
    }
    report.estimate = dim_sample(surface.values, schedule);
    return report;
}

} // namespace bifractal

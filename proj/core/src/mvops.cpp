#include "bifractal/mvops.hpp"

#include "bifractal/errors.hpp"
#include "bifractal/grid.hpp"
#include "bifractal/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bifractal {

std::string_view family_name(Family f) noexcept
{
    switch (f) {
    case Family::W:
        return "W";
    case Family::T:
        return "T";
    case Family::V:
        return "V";
    }
    return "?";
}

void PropertyReport::add(ProbeRecord r)
{
    records.push_back(std::move(r));
    ++probes;
}

void PropertyReport::finish()
{
    worst_margin = records.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (const ProbeRecord& r : records) {
        worst_margin = std::min(worst_margin, r.margin);
    }
    pass = worst_margin >= -num_tol;
}

namespace {

double checked_alpha_sup(const Field2D& alpha)
{
    const double a = sup_norm(alpha);
    if (!(a < 1.0)) {
        throw AdmissibilityError("scale function must satisfy ||alpha|| < 1, got " + format_real(a));
    }
    return a;
}

GridSample solve(const FamilySelector& sel, const FamilyMember& m, const Field2D& f)
{
    return fractal_operator(f, m.alpha, m.net, m.degrees, sel.refinement, sel.tol).values;
}

double lipschitz_factor(double q) { return (1.0 + q) / (1.0 - q); }

// Sup of |h| as seen by one member: its grid, a fine sample and the Bernstein lattice.
double member_norm(const Field2D& h, const GridSample& grid, BernsteinDegrees deg)
{
    const double on_grid = max_abs(h.tabulate(grid.xs(), grid.ys()));
    const double lattice = max_abs(bernstein_lattice(h, deg).values);
    return std::max({on_grid, lattice, sup_norm(h)});
}

void check_selector(const FamilySelector& sel)
{
    if (sel.members.empty()) {
        throw ArgumentError("family section is empty");
    }
    if (!(sel.q >= 0.0 && sel.q < 1.0)) {
        throw AdmissibilityError("family bound q must lie in [0, 1), got " + format_real(sel.q));
    }
}

} // namespace

FamilySelector w_family(const Net& net, const Field2D& alpha, int degree_cap, int refinement, double tol)
{
    if (degree_cap < 1 || degree_cap > kMaxBernsteinDegree) {
        throw ArgumentError("w_family: degree cap must lie in [1, " + std::to_string(kMaxBernsteinDegree) + "]");
    }
    FamilySelector sel{Family::W, {}, checked_alpha_sup(alpha), refinement, tol};
    for (int m = 1; m <= degree_cap; ++m) {
        for (int n = 1; n <= degree_cap; ++n) {
            sel.members.push_back({"m=" + std::to_string(m) + ",n=" + std::to_string(n), net, {m, n}, alpha});
        }
    }
    return sel;
}

FamilySelector t_family(const Net& net, BernsteinDegrees deg, std::vector<Field2D> alphas, double q, int refinement,
                        double tol)
{
    validate(deg);
    if (alphas.empty() || alphas.size() > 16) {
        throw ArgumentError("t_family: need between 1 and 16 alpha probes");
    }
    if (!(q >= 0.0 && q < 1.0)) {
        throw AdmissibilityError("t_family: q must lie in [0, 1), got " + format_real(q));
    }
    FamilySelector sel{Family::T, {}, q, refinement, tol};
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const double a = sup_norm(alphas[k]);
        if (a > q) {
            throw AdmissibilityError("t_family: alpha probe " + std::to_string(k) + " has sup-norm " + format_real(a) +
                                     " > q = " + format_real(q));
        }
        sel.members.push_back({"alpha[" + std::to_string(k) + "]", net, deg, std::move(alphas[k])});
    }
    return sel;
}

FamilySelector v_family(const Rect& domain, std::span<const int> net_sizes, const Field2D& alpha, BernsteinDegrees deg,
                        int refinement, double tol)
{
    validate(deg);
    if (net_sizes.empty()) {
        throw ArgumentError("v_family: no net sizes");
    }
    FamilySelector sel{Family::V, {}, checked_alpha_sup(alpha), refinement, tol};
    for (int n : net_sizes) {
        sel.members.push_back({"N=" + std::to_string(n), make_net(domain, n, n), deg, alpha});
    }
    return sel;
}

PropertyReport check_process(const FamilySelector& sel, const Field2D& f, std::span<const double> lambdas)
{
    check_selector(sel);
    for (double l : lambdas) {
        if (!(l > 0.0)) {
            throw ArgumentError("check_process: lambdas must be positive");
        }
    }
    PropertyReport r;
    r.property = "process";
    r.num_tol = 10.0 * sel.tol;
    const Field2D zero = constant(0.0, f.domain());
    for (const FamilyMember& m : sel.members) {
        const GridSample base = solve(sel, m, f);
        for (double l : lambdas) {
            const GridSample lifted = solve(sel, m, scaled(f, l));
            double diff = 0.0;
            for (std::size_t p = 0; p < base.values.size(); ++p) {
                diff = std::max(diff, std::abs(lifted.values[p] - l * base.values[p]));
            }
            r.add({m.label + ",lambda=" + format_real(l), diff, 0.0, -diff});
        }
        const double at_zero = max_abs(solve(sel, m, zero).values);
        r.add({m.label + ",zero", at_zero, 0.0, -at_zero});
    }
    r.headline = static_cast<double>(lambdas.size());
    r.finish();
    return r;
}

PropertyReport check_lipschitz(const FamilySelector& sel, const Field2D& f, const Field2D& g)
{
    check_selector(sel);
    const Field2D h = difference(f, g);
    const double L = lipschitz_factor(sel.q);
    PropertyReport r;
    r.property = "lipschitz";
    r.num_tol = 10.0 * sel.tol;
    r.headline = 0.0;
    for (const FamilyMember& m : sel.members) {
        const GridSample Ff = solve(sel, m, f);
        const GridSample Fg = solve(sel, m, g);
        const double dist = member_norm(h, Ff, m.degrees);
        if (!(dist > 0.0)) {
            throw ArgumentError("check_lipschitz: f and g coincide");
        }
        const double lhs = max_abs_diff(Ff.values, Fg.values);
        r.headline = std::max(r.headline, lhs / dist);
        r.add({m.label, lhs, L * dist, L * dist - lhs});
    }
    r.finish();
    return r;
}

PropertyReport norm_bound_check(const Net& net, BernsteinDegrees deg, double q, std::span<const Field2D> probes,
                                std::span<const Field2D> alphas, int refinement, double tol)
{
    if (probes.empty()) {
        throw ArgumentError("norm_bound_check: no probes");
    }
    if (!(q >= 0.0 && q < 1.0)) {
        throw AdmissibilityError("norm_bound_check: q must lie in [0, 1), got " + format_real(q));
    }
    bool has_zero = false;
    for (const Field2D& a : alphas) {
        const double s = sup_norm(a);
        if (s > q) {
            throw AdmissibilityError("norm_bound_check: alpha probe with sup-norm " + format_real(s) + " > q");
        }
        has_zero = has_zero || s == 0.0;
    }
    if (!has_zero) {
        throw ArgumentError("norm_bound_check: alpha probes must include the zero function");
    }
    PropertyReport r;
    r.property = "norm";
    r.num_tol = 10.0 * tol;
    r.headline = 1.0 + q / (1.0 - q) * 2.0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const double fn = sup_norm(probes[k]);
        if (!(fn > 0.0)) {
            throw ArgumentError("norm_bound_check: probe " + std::to_string(k) + " vanishes");
        }
        double best = std::numeric_limits<double>::infinity();
        for (const Field2D& a : alphas) {
            const FractalSurface s = fractal_operator(probes[k], a, net, deg, refinement, tol);
            best = std::min(best, max_abs(s.values.values) / fn);
        }
        r.add({"probe[" + std::to_string(k) + "]", best, r.headline, r.headline - best});
    }
    r.finish();
    return r;
}

PropertyReport continuity_probe(const FamilySelector& sel, const Field2D& f, const Field2D& w, int K)
{
    check_selector(sel);
    if (K < 1) {
        throw ArgumentError("continuity_probe: K must be >= 1");
    }
    const double L = lipschitz_factor(sel.q);
    PropertyReport r;
    r.property = "continuity";
    r.num_tol = 10.0 * sel.tol;
    r.headline = L;
    for (const FamilyMember& m : sel.members) {
        const GridSample base = solve(sel, m, f);
        double previous = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= K; ++k) {
            const double weight = 1.0 / static_cast<double>(k);
            const GridSample moved = solve(sel, m, affine_combination({{1.0, f}, {weight, w}}));
            const double diff = max_abs_diff(moved.values, base.values);
            const double dist = member_norm(scaled(w, weight), base, m.degrees);
            const std::string label = m.label + ",k=" + std::to_string(k);
            r.add({label, diff, L * dist, L * dist - diff});
            if (k > 1) {
                r.add({label + ",monotone", diff, previous, previous - diff});
            }
            previous = diff;
        }
    }
    r.finish();
    return r;
}

double multivalued_witness(const Field2D& f, const Field2D& alpha, const Net& net, int degree, int refinement,
                           double tol)
{
    const FractalSurface a = fractal_operator(f, alpha, net, {1, 1}, refinement, tol);
    const FractalSurface b = fractal_operator(f, alpha, net, {degree, degree}, refinement, tol);
    return max_abs_diff(a.values.values, b.values.values);
}

} // namespace bifractal

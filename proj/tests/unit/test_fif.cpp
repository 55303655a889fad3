#include <doctest.h>

#include "bifractal/errors.hpp"
#include "bifractal/fif.hpp"
#include "bifractal/sampling.hpp"

#include <cmath>
#include <random>

using namespace bifractal;

namespace {

// Q written from the knot vector: lower-index cell, odd cells increasing.
double expand_axis(const std::vector<double>& knots, double t)
{
    std::size_t i = 1;
    while (i + 1 < knots.size() && t > knots[i]) {
        ++i;
    }
    const double a = knots.front();
    const double b = knots.back();
    const double lo = knots[i - 1];
    const double hi = knots[i];
    const double s = (i % 2 == 1) ? (t - lo) / (hi - lo) : (hi - t) / (hi - lo);
    return a + s * (b - a);
}

// F_K(p) = f(p) + alpha(p) (F_{K-1}(Q p) - s(Q p)), F_0 = f.
double recursive_oracle(const Field2D& f, const Field2D& s, const Field2D& alpha, const Net& net, double x, double y,
                        int depth)
{
    if (depth == 0) {
        return f(x, y);
    }
    const double qx = expand_axis(net.knots_x, x);
    const double qy = expand_axis(net.knots_y, y);
    return f(x, y) + alpha(x, y) * (recursive_oracle(f, s, alpha, net, qx, qy, depth - 1) - s(qx, qy));
}

Field2D smooth_a() { return trig({{1.0, TrigFactor::Sin, 1.0, TrigFactor::Sin, 1.0}}, kUnitSquare); }
Field2D smooth_b()
{
    return polynomial({{0.2, 1.0, -0.5}, {0.7, 0.0, 0.3}, {-1.0, 0.4, 0.0}}, kUnitSquare);
}

Field2D random_field(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 4);
    std::uniform_int_distribution<int> kind(0, 1);
    auto factor = [&] { return kind(gen) == 0 ? TrigFactor::Sin : TrigFactor::Cos; };
    std::vector<TrigTerm> terms;
    for (int k = 0; k < 3; ++k) {
        terms.push_back({amp(gen), factor(), static_cast<double>(freq(gen)), factor(), static_cast<double>(freq(gen))});
    }
    return constant_shift(trig(terms, kUnitSquare), amp(gen));
}

} // namespace

TEST_CASE("nets")
{
    const Net n = make_net(kUnitSquare, 2, 2);
    CHECK(n.knots_x == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(n.uniform());
    const Net e = make_net(kUnitSquare, {0.0, 0.3, 1.0}, {0.0, 0.5, 1.0});
    CHECK(!e.uniform());
    CHECK_THROWS_AS((void)make_net(kUnitSquare, {0.0, 0.6, 0.4, 1.0}, {0.0, 0.5, 1.0}), ArgumentError);
    CHECK_THROWS_AS((void)make_net(kUnitSquare, {0.1, 0.5, 1.0}, {0.0, 0.5, 1.0}), ArgumentError);
    CHECK_THROWS_AS((void)make_net(kUnitSquare, 1, 3), ArgumentError);
}

TEST_CASE("contraction maps")
{
    const ContractionSystem m = make_maps(make_net(kUnitSquare, 2, 2));
    CHECK(m.u[0].forward(0.0) == 0.0);
    CHECK(m.u[0].forward(1.0) == 0.5);
    CHECK(m.u[1].forward(0.0) == 1.0);
    CHECK(m.u[1].forward(1.0) == 0.5);
    CHECK(m.u[0].ratio() == 0.5);

    const Net n4 = make_net({{-1.0, 3.0}, {0.0, 2.0}}, 4, 4);
    const ContractionSystem m4 = make_maps(n4);
    for (std::size_t i = 0; i < 4; ++i) {
        const AxisMap& u = m4.u[i];
        const double dx = u.inverse(0.3) - u.inverse(0.2);
        CHECK(std::abs(dx) == doctest::Approx(0.4).epsilon(1e-12)); // expansion factor N = 4
        CHECK(u.inverse(u.forward(1.7)) == doctest::Approx(1.7).epsilon(1e-14));
    }
    // Shared knots: both neighbouring inverses agree.
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(m4.u[i - 1].inverse(n4.knots_x[i]) == doctest::Approx(m4.u[i].inverse(n4.knots_x[i])).epsilon(1e-14));
    }
    CHECK(m4.cell_x(0.0) == 1);   // knot 0 is shared by cells 1 and 2
    CHECK(m4.cell_x(0.5) == 2);
    CHECK(m4.cell_x(-1.0) == 1);
    CHECK(m4.cell_x(3.0) == 4);
    const Point2 q = m4.expand(2, 3, {0.5, 1.2});
    CHECK(q.x == doctest::Approx(3.0 - 0.5 * 4.0).epsilon(1e-14));
    CHECK(q.y == doctest::Approx((1.2 - 1.0) * 4.0).epsilon(1e-14));
}

TEST_CASE("trivial surfaces")
{
    const Field2D f = smooth_a();
    const Net net = make_net(kUnitSquare, 4, 4);
    const FractalSurface z = solve_fractal_surface({f, bernstein_apply(f, {3, 3}), constant(0.0, kUnitSquare), net, 8});
    CHECK(z.iterations == 1);
    CHECK(z.values.values == sample(f, 33, 33).values);

    const FractalSurface same = solve_fractal_surface({f, f, constant(0.4, kUnitSquare), net, 8});
    CHECK(max_abs_diff(same.values.values, sample(f, 33, 33).values) <= 1e-10);
}

TEST_CASE("solver matches the recursive oracle")
{
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<std::size_t> pick(0, 64);
    for (int N : {2, 4}) {
        const Net net = make_net(kUnitSquare, N, N);
        const Field2D f = random_field(gen);
        const Field2D s = bernstein_apply(f, {2, 3});
        const Field2D alpha = trig({{0.45, TrigFactor::Sin, 2.0, TrigFactor::Cos, 1.0}}, kUnitSquare);
        const int R = 64 / N;
        const FractalSurface surf = solve_fractal_surface({f, s, alpha, net, R});
        REQUIRE(surf.values.nx == 65);
        CHECK(!surf.interpolated);
        for (int k = 0; k < 40; ++k) {
            const std::size_t i = pick(gen);
            const std::size_t j = pick(gen);
            const double want = recursive_oracle(f, s, alpha, net, surf.values.x_at(i), surf.values.y_at(j), 45);
            CHECK(std::abs(surf.values.at(i, j) - want) <= 1e-9);
        }
    }
}

TEST_CASE("fixed-point invariants on seeded cases")
{
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> a(-0.8, 0.8);
    constexpr double tol = 1e-10;
    for (int c = 0; c < 6; ++c) {
        const int N = c % 2 == 0 ? 2 : 4;
        const int R = c < 3 ? 32 : 64;
        const Net net = make_net(kUnitSquare, N, N);
        const Field2D f = random_field(gen);
        const Field2D alpha = constant(a(gen), kUnitSquare);
        const FractalSurface s = fractal_operator(f, alpha, net, {4, 4}, R, tol);
        const double bound = tol / (1.0 - s.alpha_sup);

        CHECK(s.residual <= tol);
        CHECK(s.equation_residual <= bound);
        for (std::size_t k = 1; k < s.deltas.size(); ++k) {
            CHECK(s.deltas[k] <= (s.alpha_sup + 1e-12) * s.deltas[k - 1]);
        }
        for (std::size_t i = 0; i <= static_cast<std::size_t>(N); ++i) {
            for (std::size_t j = 0; j <= static_cast<std::size_t>(N); ++j) {
                const double got = s.values.at(i * static_cast<std::size_t>(R), j * static_cast<std::size_t>(R));
                CHECK(std::abs(got - f(net.knots_x[i], net.knots_y[j])) <= 10.0 * tol);
            }
        }
        FractalSurfaceSpec zero{f, bernstein_apply(f, {4, 4}), alpha, net, R, tol};
        zero.initial = InitialIterate::Zero;
        const FractalSurface z = solve_fractal_surface(zero);
        CHECK(max_abs_diff(z.values.values, s.values.values) <= 2.0 * bound);
    }
}

TEST_CASE("operator identities")
{
    const Net net = make_net(kUnitSquare, 4, 4);
    const Field2D one = constant(1.0, kUnitSquare);
    for (double a : {0.2, -0.2, 0.6, -0.6}) {
        const FractalSurface s = fractal_operator(one, constant(a, kUnitSquare), net, {3, 5}, 16);
        for (double v : s.values.values) {
            CHECK(std::abs(v - 1.0) <= 1e-10);
        }
    }
    const Field2D f = smooth_a();
    const Field2D g = smooth_b();
    const Field2D alpha = trig({{0.5, TrigFactor::Cos, 1.0, TrigFactor::Cos, 3.0}}, kUnitSquare);
    const FractalSurface lhs = fractal_operator(affine_combination({{2.0, f}, {3.0, g}}), alpha, net, {6, 6}, 16);
    const FractalSurface Ff = fractal_operator(f, alpha, net, {6, 6}, 16);
    const FractalSurface Fg = fractal_operator(g, alpha, net, {6, 6}, 16);
    double worst = 0.0;
    for (std::size_t p = 0; p < lhs.values.values.size(); ++p) {
        worst = std::max(worst, std::abs(lhs.values.values[p] - 2.0 * Ff.values.values[p] - 3.0 * Fg.values.values[p]));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("perturbation inequality")
{
    const Field2D f = smooth_a();
    const Net net = make_net(kUnitSquare, 4, 4);
    const Field2D zero = constant(0.0, kUnitSquare);
    const PerturbationReport z = perturbation_check(f, zero, {8, 8}, fractal_operator(f, zero, net, {8, 8}, 64));
    CHECK(z.lhs == 0.0);
    CHECK(z.sharp_rhs == 0.0);

    const Field2D a = constant(0.3, kUnitSquare);
    const PerturbationReport r = perturbation_check(f, a, {8, 8}, fractal_operator(f, a, net, {8, 8}, 64));
    CHECK(r.holds());
    CHECK(r.lhs <= r.sharp_rhs + 1e-9);
    CHECK(r.sharp_rhs <= r.relaxed_rhs);
    CHECK(r.lhs > 0.0);

    const Field2D one = constant(1.0, kUnitSquare);
    CHECK(perturbation_check(one, a, {2, 2}, fractal_operator(one, a, net, {2, 2}, 8)).lhs <= 1e-10);
    CHECK_THROWS_AS((void)perturbation_check(f, a, {4, 4}, fractal_operator(f, a, net, {8, 8}, 8)), ArgumentError);
}

TEST_CASE("non-uniform nets interpolate the iterate")
{
    const Net net = make_net(kUnitSquare, {0.0, 0.3, 1.0}, {0.0, 0.6, 1.0});
    const Field2D f = smooth_b();
    const Field2D s = bernstein_apply(f, {1, 1});
    const Field2D alpha = constant(0.2, kUnitSquare);
    const FractalSurface surf = solve_fractal_surface({f, s, alpha, net, 64});
    CHECK(surf.interpolated);
    double worst = 0.0;
    for (std::size_t j = 0; j < surf.values.ny; j += 8) {
        for (std::size_t i = 0; i < surf.values.nx; i += 8) {
            const double want = recursive_oracle(f, s, alpha, net, surf.values.x_at(i), surf.values.y_at(j), 30);
            worst = std::max(worst, std::abs(surf.values.at(i, j) - want));
        }
    }
    CHECK(worst <= 1e-3);
    MESSAGE("non-uniform interpolation error " << worst);
}

TEST_CASE("solver errors")
{
    const Field2D f = smooth_a();
    const Net net = make_net(kUnitSquare, 2, 2);
    CHECK_THROWS_AS((void)fractal_operator(f, constant(1.2, kUnitSquare), net, {2, 2}, 8), AdmissibilityError);
    const Field2D shifted = constant_shift(f, 0.1);
    CHECK_THROWS_AS((void)solve_fractal_surface({f, shifted, constant(0.3, kUnitSquare), net, 8}), ArgumentError);

    FractalSurfaceSpec spec{smooth_b(), bernstein_apply(smooth_b(), {2, 2}), constant(0.9, kUnitSquare), net, 8};
    spec.max_iter = 3;
    try {
        (void)solve_fractal_surface(spec);
        FAIL("expected a convergence error");
    } catch (const ConvergenceError& e) {
        CHECK(e.history().size() == 3);
    }
    const Net other = make_net({{0.0, 2.0}, {0.0, 1.0}}, 2, 2);
    CHECK_THROWS_AS((void)fractal_operator(f, constant(0.1, kUnitSquare), other, {2, 2}, 8), ArgumentError);
}

TEST_CASE("admissibility bound")
{
    HolderWitness w{1.0, 1.0, 1.0, 1e9, 0.1, 1.0};
    CHECK(alpha_admissible_bound(w, 4) == 0.25);
    HolderWitness v{1.0, 1.0, 4.0, 1.0, 0.1, 6.0};
    CHECK(alpha_admissible_bound(v, 2) == doctest::Approx(0.05));
    HolderWitness h{0.5, 2.0, 1.5, 0.3, 0.05, 2.5};
    double previous = 1.0;
    for (int M = 2; M <= 64; ++M) {
        const double b = alpha_admissible_bound(h, M);
        CHECK(b <= previous);
        previous = b;
    }
    HolderWitness missing = h;
    missing.K_falpha.reset();
    CHECK_THROWS_AS((void)alpha_admissible_bound(missing, 2), ArgumentError);
    HolderWitness negative = h;
    negative.k_f = -1.0;
    CHECK_THROWS_AS((void)alpha_admissible_bound(negative, 2), ArgumentError);
    CHECK_THROWS_AS((void)alpha_admissible_bound(h, 1), ArgumentError);
}

TEST_CASE("holder constant estimate")
{
    const GridSample lin = sample(polynomial({{0.0}, {3.0}}, kUnitSquare), 129, 129);
    CHECK(estimate_holder_constant(lin, 1.0, 0.1) == doctest::Approx(3.0).epsilon(1e-12));
    // Lipschitz data estimated with sigma = 1/2 grows like sqrt(d).
    CHECK(estimate_holder_constant(lin, 0.5, 0.1) <= 3.0 * std::sqrt(0.1) + 1e-12);
}

TEST_CASE("dimension formula experiment in the smooth regime")
{
    const Field2D f = polynomial({{0.0, 1.0}, {1.0, 0.0}}, kUnitSquare);
    const HolderWitness w{1.0, 2.0, 2.0, 1.0, 0.05, std::nullopt};
    const DimFormulaReport r = dim_formula_experiment(w, f, 2, 0.01, 256, 1e-10, ScaleSchedule::dyadic(1.0, 3, 7));
    CHECK(r.K_falpha_estimated);
    CHECK(r.target == 2.0);
    CHECK(std::abs(r.estimate.slope - 2.0) <= 0.1);
    CHECK(!r.estimate.scales.empty());
    CHECK(r.estimate.counts.size() == r.estimate.scales.size());
    CHECK(r.estimate.r2 > 0.9);
    CHECK_THROWS_AS((void)dim_formula_experiment(w, f, 2, 0.6, 256, 1e-10, ScaleSchedule::dyadic(1.0, 3, 7)),
                    ArgumentError);
}

#include <doctest.h>

#include "bifractal/approx.hpp"
#include "bifractal/boxdim.hpp"
#include "bifractal/calculus.hpp"
#include "bifractal/errors.hpp"
#include "bifractal/sampling.hpp"
#include "bifractal/simplex.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>

using namespace bifractal;

namespace {

Field2D shen_lift()
{
    return lift_sum(shen_series({0.5, 4, Wave::Cosine, 1e-10}, kUnitInterval), kUnitInterval);
}

Field2D smooth() { return trig({{1.0, TrigFactor::Sin, 1.0, TrigFactor::Sin, 1.0}}, kUnitSquare); }

Field2D x_plus_y_squared() { return polynomial({{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, kUnitSquare); }

// Vertex enumeration for tiny standard-form LPs: every choice of `rows`
// columns, solved by Gaussian elimination.
double brute_force_min(const EqualityLp& lp)
{
    const std::size_t m = lp.rows;
    const std::size_t n = lp.cols;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(m);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
        if (depth == m) {
            std::vector<double> M(m * (m + 1));
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t c = 0; c < m; ++c) {
                    M[r * (m + 1) + c] = lp.A[r * n + pick[c]];
                }
                M[r * (m + 1) + m] = lp.b[r];
            }
            for (std::size_t c = 0; c < m; ++c) {
                std::size_t piv = c;
                for (std::size_t r = c; r < m; ++r) {
                    if (std::abs(M[r * (m + 1) + c]) > std::abs(M[piv * (m + 1) + c])) {
                        piv = r;
                    }
                }
                if (std::abs(M[piv * (m + 1) + c]) < 1e-12) {
                    return;
                }
                for (std::size_t k = 0; k <= m; ++k) {
                    std::swap(M[c * (m + 1) + k], M[piv * (m + 1) + k]);
                }
                for (std::size_t r = 0; r < m; ++r) {
                    if (r != c) {
                        const double fct = M[r * (m + 1) + c] / M[c * (m + 1) + c];
                        for (std::size_t k = 0; k <= m; ++k) {
                            M[r * (m + 1) + k] -= fct * M[c * (m + 1) + k];
                        }
                    }
                }
            }
            double obj = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                const double y = M[c * (m + 1) + m] / M[c * (m + 1) + c];
                if (y < -1e-12) {
                    return;
                }
                obj += lp.c[pick[c]] * y;
            }
            best = std::min(best, obj);
            return;
        }
        for (std::size_t j = start; j < n; ++j) {
            pick[depth] = j;
            rec(depth + 1, j + 1);
        }
    };
    rec(0, 0);
    return best;
}

} // namespace

TEST_CASE("simplex against vertex enumeration")
{
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.1, 2.0);
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        EqualityLp lp{3, 7, {}, {}, {}};
        for (std::size_t k = 0; k < 21; ++k) {
            lp.A.push_back(u(gen));
        }
        // b from a positive combination keeps the problem feasible; positive
        // costs keep it bounded.
        for (std::size_t r = 0; r < 3; ++r) {
            double v = 0.0;
            for (std::size_t c = 0; c < 7; ++c) {
                v += lp.A[r * 7 + c] * pos(gen);
            }
            lp.b.push_back(v);
        }
        for (std::size_t c = 0; c < 7; ++c) {
            lp.c.push_back(pos(gen));
        }
        const LpResult r = solve_equality_lp(lp);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.objective == doctest::Approx(brute_force_min(lp)).epsilon(1e-9));
        // Dual feasibility and strong duality.
        double dual_obj = 0.0;
        for (std::size_t row = 0; row < 3; ++row) {
            dual_obj += lp.b[row] * r.duals[row];
        }
        CHECK(dual_obj == doctest::Approx(r.objective).epsilon(1e-9));
        for (std::size_t c = 0; c < 7; ++c) {
            double reduced = lp.c[c];
            for (std::size_t row = 0; row < 3; ++row) {
                reduced -= lp.A[row * 7 + c] * r.duals[row];
            }
            CHECK(reduced >= -1e-9);
        }
        ++solved;
    }
    CHECK(solved == 40);
}

TEST_CASE("simplex status detection")
{
    // y1 + y2 = -1 with y >= 0 is infeasible.
    const EqualityLp infeasible{1, 2, {1.0, 1.0}, {-1.0}, {1.0, 1.0}};
    CHECK(solve_equality_lp(infeasible).status == LpStatus::Infeasible);
    // min -y1 with y1 - y2 = 0 is unbounded.
    const EqualityLp unbounded{1, 2, {1.0, -1.0}, {0.0}, {-1.0, 0.0}};
    CHECK(solve_equality_lp(unbounded).status == LpStatus::Unbounded);
    // Redundant rows are tolerated.
    const EqualityLp redundant{2, 2, {1.0, 1.0, 2.0, 2.0}, {1.0, 2.0}, {1.0, 3.0}};
    const LpResult r = solve_equality_lp(redundant);
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("best one-sided approximation certificates")
{
    const BasisSet ones = make_basis({constant(1.0, kUnitSquare)});
    const OneSidedSolution a = best_one_sided_below(x_plus_y_squared(), ones);
    CHECK(std::abs(a.coefficients[0]) <= 1e-9);
    CHECK(std::abs(a.objective) <= 1e-9);

    const OneSidedSolution b = best_one_sided_below(constant(1.0, kUnitSquare), ones);
    CHECK(std::abs(b.coefficients[0] - 1.0) <= 1e-9);
    CHECK(std::abs(b.objective - 1.0) <= 1e-9);

    const Field2D x = polynomial({{0.0}, {1.0}}, kUnitSquare);
    const BasisSet lin = make_basis({constant(1.0, kUnitSquare), x});
    const OneSidedSolution c = best_one_sided_below(x, lin);
    CHECK(std::abs(c.coefficients[0]) <= 1e-9);
    CHECK(std::abs(c.coefficients[1] - 1.0) <= 1e-9);
    CHECK(std::abs(c.objective - 0.5) <= 1e-9);
    for (const OneSidedSolution& s : {a, b, c}) {
        CHECK(s.max_violation <= kLpFeasibilityTol);
    }
    const Field2D h = c.as_field(lin);
    CHECK(h(0.3, 0.8) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("one-sided optimum on span{1} is the sampled minimum")
{
    const Rect d{{0.0, 2.0}, {-1.0, 0.5}};
    const Field2D f = trig({{1.0, TrigFactor::Sin, 1.3, TrigFactor::Cos, 0.7}, {0.5, TrigFactor::Cos, 2.0, TrigFactor::Sin, 1.0}}, d);
    const BasisSet ones = make_basis({constant(1.0, d)});
    const OneSidedSolution s = best_one_sided_below(f, ones, 33);
    const GridSample g = sample(f, 33, 33);
    const double lowest = *std::min_element(g.values.begin(), g.values.end());
    CHECK(s.objective == doctest::Approx(lowest * d.area()).epsilon(1e-9));
}

TEST_CASE("one-sided objective grows as the constraint grid coarsens")
{
    const Field2D f = constant_shift(smooth(), 0.2);
    const BasisSet basis = make_basis({constant(1.0, kUnitSquare), polynomial({{0.0}, {1.0}}, kUnitSquare),
                                       polynomial({{0.0, 1.0}}, kUnitSquare), x_plus_y_squared()});
    const OneSidedSolution fine = best_one_sided_below(f, basis, 65);
    const OneSidedSolution mid = best_one_sided_below(f, basis, 33);
    const OneSidedSolution coarse = best_one_sided_below(f, basis, 17);
    CHECK(fine.objective <= mid.objective + 1e-12);
    CHECK(mid.objective <= coarse.objective + 1e-12);
    for (const OneSidedSolution& s : {fine, mid, coarse}) {
        CHECK(s.max_violation <= kLpFeasibilityTol);
    }
    const OneSidedSolution again = best_one_sided_below(f, basis, 33);
    CHECK(again.coefficients == mid.coefficients);
}

TEST_CASE("long degenerate pivot runs stay feasible and tight")
{
    // oscillating targets on {1, x, xy} take thousands of Bland pivots at 65^2
    const BasisSet basis = make_basis({constant(1.0, kUnitSquare), polynomial({{0.0}, {1.0}}, kUnitSquare),
                                       polynomial({{0.0}, {0.0, 1.0}}, kUnitSquare)});
    std::mt19937_64 gen(909);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        const Field2D f = trig({{amp(gen), TrigFactor::Cos, 3.0, TrigFactor::Sin, 2.0},
                                {amp(gen), TrigFactor::Sin, 1.0, TrigFactor::Cos, 3.0}},
                               kUnitSquare);
        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t res : {17, 33, 65}) {
            const OneSidedSolution s = best_one_sided_below(f, basis, res);
            CHECK(s.max_violation <= kLpFeasibilityTol);
            CHECK(s.max_violation >= -kLpFeasibilityTol); // some constraint is active
            CHECK(s.objective <= previous + 1e-12);
            previous = s.objective;
        }
    }
}

TEST_CASE("basis and LP errors")
{
    const Field2D one = constant(1.0, kUnitSquare);
    CHECK_THROWS_AS((void)make_basis({one, scaled(one, 2.0)}), ArgumentError);
    CHECK_THROWS_AS((void)make_basis({}), ArgumentError);
    CHECK_THROWS_AS((void)best_one_sided_below(one, make_basis({one}), 8), ArgumentError);

    // A field vanishing on the constraint grid but with positive integral
    // leaves the objective unbounded.
    GridSample spikes(kUnitSquare, 65, 65);
    for (std::size_t j = 0; j < 65; ++j) {
        for (std::size_t i = 1; i < 65; i += 2) {
            spikes.at(i, j) = 1.0;
        }
    }
    CHECK_THROWS_AS((void)make_basis({tabulated(spikes)}, 33), ArgumentError);
    const BasisSet hidden = make_basis({tabulated(spikes)}, 65);
    CHECK_THROWS_AS((void)best_one_sided_below(one, hidden, 33), UnboundedError);
}

TEST_CASE("dense approximant")
{
    const Field2D h = shen_lift();
    for (double eps : {0.05, 0.2}) {
        const DenseApproximant d = dense_approximant({smooth(), eps, h});
        CHECK(sup_distance(smooth(), d.result, 257) < eps);
        CHECK(d.lipschitz_error < eps / 2.0);
        for (double x : {0.0, 0.13, 0.5, 0.91}) {
            for (double y : {0.2, 0.77, 1.0}) {
                const double diff = d.result(x, y) - d.lipschitz_part(x, y);
                CHECK(std::abs(diff - d.seed_weight * h(x, y)) <= 1e-12);
            }
        }
    }
    ApproxRequest hopeless{smooth(), 1e-6, h};
    hopeless.degree_schedule = {1, 2};
    CHECK_THROWS_AS((void)dense_approximant(hopeless), ApproximationError);
    CHECK_THROWS_AS((void)dense_approximant({smooth(), 0.1, constant(0.0, kUnitSquare)}), ArgumentError);
    CHECK_THROWS_AS((void)dense_approximant({smooth(), -0.1, h}), ArgumentError);
}

TEST_CASE("shifted approximants")
{
    const Field2D h = shen_lift();
    const ShiftedApproximant z = nonnegative_approximant({constant(0.0, kUnitSquare), 0.2, h});
    const GridSample zs = sample(z.result, 257, 257);
    CHECK(*std::min_element(zs.values.begin(), zs.values.end()) >= 0.0);
    CHECK(max_abs(zs.values) < 0.2);

    const ShiftedApproximant q = nonnegative_approximant({x_plus_y_squared(), 0.1, h});
    const GridSample qs = sample(q.result, 257, 257);
    CHECK(*std::min_element(qs.values.begin(), qs.values.end()) >= 0.0);
    for (double x : {0.1, 0.6}) {
        CHECK(q.result(x, 0.4) - q.inner.result(x, 0.4) == doctest::Approx(0.05).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)nonnegative_approximant({constant_shift(smooth(), -0.5), 0.1, h}), PreconditionError);

    const Field2D one = constant(1.0, kUnitSquare);
    const ShiftedApproximant lo = lower_approximant({one, 0.2, h});
    const ShiftedApproximant up = upper_approximant({one, 0.2, h});
    const GridSample ls = sample(lo.result, 257, 257);
    const GridSample us = sample(up.result, 257, 257);
    for (std::size_t p = 0; p < ls.values.size(); ++p) {
        CHECK(ls.values[p] < 1.0);
        CHECK(us.values[p] > 1.0);
    }
    CHECK(sup_distance(one, lo.result, 257) < 0.2);
    CHECK(sup_distance(one, up.result, 257) < 0.2);
}

TEST_CASE("dimension of the approximant against its seed")
{
    const Field2D h = shen_lift();
    const DenseApproximant d = dense_approximant({smooth(), 0.2, h});
    const double seed = dim_graph(h).slope;
    const double out = dim_graph(d.result).slope;
    MESSAGE("seed slope " << seed << ", approximant slope " << out);
    CHECK(out >= 1.9);
    CHECK(out <= 3.1);
}

TEST_CASE("convex approximant")
{
    const Field2D xy = polynomial({{0.0, 0.0}, {0.0, 1.0}}, kUnitSquare);
    const Field2D one = constant(1.0, kUnitSquare);
    const Field2D h = shen_lift();
    const ConvexApproximant c = convex_approximant(xy, one, 1, 1, 0.1, h, 257);
    CHECK(sup_distance(xy, c.result, 257) < 0.1 * 1.05);
    CHECK(c.derivative_epsilon == 0.1);
    const double step = 1.0 / 64.0;
    for (double x : {0.25, 0.5, 0.75}) {
        for (double y : {0.25, 0.5, 0.75}) {
            CHECK(mixed_partial(c.result, {x, y}, step) >= -1e-6);
        }
    }

    // m = 2: f = x^2 y / 2 has D^(2,1) f = 1.
    const Field2D f21 = polynomial({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.5}}, kUnitSquare);
    const ConvexApproximant c21 = convex_approximant(f21, one, 2, 1, 0.05, h, 257);
    CHECK(sup_distance(f21, c21.result, 257) < 0.05 * 1.05);
    CHECK(mixed_partial(c21.result, {0.5, 0.5}, 1.0 / 32.0, 2, 1) >= -1e-6);

    CHECK_THROWS_AS((void)convex_approximant(constant_shift(xy, 1.0), one, 1, 1, 0.1, h), PreconditionError);
    CHECK_THROWS_AS((void)convex_approximant(xy, constant(-1.0, kUnitSquare), 1, 1, 0.1, h), PreconditionError);
    CHECK_THROWS_AS((void)convex_approximant(xy, one, 0, 1, 0.1, h), ArgumentError);
}

#include <doctest.h>

#include "bifractal/bernstein.hpp"
#include "bifractal/errors.hpp"
#include "bifractal/sampling.hpp"

#include <cmath>
#include <random>

using namespace bifractal;

namespace {

// Raw binomial double sum, fine for small degrees.
double bernstein_reference(const Field2D& f, int m, int n, double x, double y)
{
    const Rect& d = f.domain();
    const double s = (x - d.x.lo) / d.x.width();
    const double t = (y - d.y.lo) / d.y.width();
    long double sum = 0.0L;
    for (int i = 0; i <= m; ++i) {
        const long double bi = std::tgamma(m + 1.0L) / (std::tgamma(i + 1.0L) * std::tgamma(m - i + 1.0L)) *
                               std::pow(static_cast<long double>(s), i) *
                               std::pow(1.0L - static_cast<long double>(s), m - i);
        for (int j = 0; j <= n; ++j) {
            const long double bj = std::tgamma(n + 1.0L) / (std::tgamma(j + 1.0L) * std::tgamma(n - j + 1.0L)) *
                                   std::pow(static_cast<long double>(t), j) *
                                   std::pow(1.0L - static_cast<long double>(t), n - j);
            sum += bi * bj * f(d.x.node(static_cast<std::size_t>(i), static_cast<std::size_t>(m) + 1),
                               d.y.node(static_cast<std::size_t>(j), static_cast<std::size_t>(n) + 1));
        }
    }
    return static_cast<double>(sum);
}

std::vector<Field2D> smooth_catalog(const Rect& d)
{
    return {
        trig({{1.0, TrigFactor::Sin, 1.0, TrigFactor::Sin, 1.0}}, d),
        trig({{1.0, TrigFactor::Cos, 2.0, TrigFactor::Cos, 1.0}}, d),
        polynomial({{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, d),
        polynomial({{0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}}, d),
        trig({{0.5, TrigFactor::Sin, 3.0, TrigFactor::Cos, 0.5}, {0.25, TrigFactor::Cos, 1.0, TrigFactor::Sin, 2.0}},
             d),
    };
}

} // namespace

TEST_CASE("degree validation")
{
    CHECK_THROWS_AS(validate(BernsteinDegrees{0, 3}), ArgumentError);
    CHECK_THROWS_AS(validate(BernsteinDegrees{3, kMaxBernsteinDegree + 1}), ArgumentError);
    CHECK_NOTHROW(validate(BernsteinDegrees{kMaxBernsteinDegree, 1}));
}

TEST_CASE("basis is a partition of unity")
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int deg : {1, 3, 50, 200, 512}) {
        for (int k = 0; k < 20; ++k) {
            const std::vector<double> b = bernstein_basis(deg, u(gen));
            double sum = 0.0;
            for (double v : b) {
                CHECK(v >= 0.0);
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("matches the binomial double sum")
{
    const Rect d{{-1.0, 2.0}, {0.5, 1.5}};
    const Field2D f = trig({{1.0, TrigFactor::Sin, 1.3, TrigFactor::Cos, 2.0}}, d);
    for (auto [m, n] : {std::pair{1, 1}, std::pair{3, 5}, std::pair{8, 2}, std::pair{12, 12}}) {
        const Field2D b = bernstein_apply(f, {m, n});
        for (double x : {-1.0, -0.4, 0.3, 1.1, 2.0}) {
            for (double y : {0.5, 0.8, 1.2, 1.5}) {
                CHECK(b(x, y) == doctest::Approx(bernstein_reference(f, m, n, x, y)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("constant fixation and linear precision")
{
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Field2D one = constant(1.0, kUnitSquare);
    const Field2D x = polynomial({{0.0}, {1.0}}, kUnitSquare);
    for (auto deg : {BernsteinDegrees{1, 1}, BernsteinDegrees{7, 64}, BernsteinDegrees{64, 64}}) {
        const Field2D b1 = bernstein_apply(one, deg);
        const Field2D bx = bernstein_apply(x, deg);
        for (int k = 0; k < 10000 / 3; ++k) {
            const double px = u(gen);
            const double py = u(gen);
            CHECK(std::abs(b1(px, py) - 1.0) <= 1e-12);
            CHECK(std::abs(bx(px, py) - px) <= 1e-12);
        }
    }
}

TEST_CASE("positivity and range contraction")
{
    const Field2D f = trig({{1.0, TrigFactor::Sin, 5.0, TrigFactor::Sin, 3.0}}, kUnitSquare);
    const BernsteinDegrees deg{9, 6};
    const GridSample lattice = bernstein_lattice(f, deg);
    CHECK(lattice.nx == 10);
    CHECK(lattice.ny == 7);
    const double lo = *std::min_element(lattice.values.begin(), lattice.values.end());
    const double hi = *std::max_element(lattice.values.begin(), lattice.values.end());
    const GridSample b = sample(bernstein_apply(f, deg), 101, 101);
    for (double v : b.values) {
        CHECK(v >= lo - 1e-15);
        CHECK(v <= hi + 1e-15);
    }
    const Field2D sq = polynomial({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}, kUnitSquare);
    for (double v : sample(bernstein_apply(difference(sq, constant(0.0, kUnitSquare)), {5, 5}), 65, 65).values) {
        CHECK(v >= 0.0);
    }
}

TEST_CASE("uniform convergence trend")
{
    for (const Field2D& f : smooth_catalog(kUnitSquare)) {
        const double e10 = sup_distance(f, bernstein_apply(f, {10, 10}), 257);
        const double e20 = sup_distance(f, bernstein_apply(f, {20, 20}), 257);
        const double e40 = sup_distance(f, bernstein_apply(f, {40, 40}), 257);
        CHECK(e10 > e20);
        CHECK(e20 > e40);
    }
}

TEST_CASE("norm probe")
{
    const Field2D one = constant(1.0, kUnitSquare);
    const std::vector<Field2D> ones{one};
    CHECK(bernstein_norm_probe(ones, {8, 8}) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 6);
    std::vector<Field2D> probes;
    for (int k = 0; k < 10; ++k) {
        probes.push_back(trig({{amp(gen), TrigFactor::Sin, static_cast<double>(freq(gen)), TrigFactor::Cos,
                                static_cast<double>(freq(gen))},
                               {amp(gen), TrigFactor::Cos, static_cast<double>(freq(gen)), TrigFactor::Sin,
                                static_cast<double>(freq(gen))}},
                              kUnitSquare));
    }
    CHECK(bernstein_norm_probe(probes, {12, 7}) <= 1.0 + 1e-9);
    probes.push_back(one);
    CHECK(bernstein_norm_probe(probes, {12, 7}) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<Field2D> plus{probes[0]};
    const std::vector<Field2D> minus{scaled(probes[0], -1.0)};
    CHECK(bernstein_norm_probe(plus, {4, 4}) == bernstein_norm_probe(minus, {4, 4}));

    CHECK_THROWS_AS((void)bernstein_norm_probe(std::span<const Field2D>{}, {4, 4}), ArgumentError);
    const std::vector<Field2D> zero{constant(0.0, kUnitSquare)};
    CHECK_THROWS_AS((void)bernstein_norm_probe(zero, {4, 4}), ArgumentError);
}

#include <doctest.h>

#include "bifractal/errors.hpp"
#include "bifractal/mvops.hpp"
#include "bifractal/sampling.hpp"

#include <cmath>
#include <random>

using namespace bifractal;

namespace {

Field2D sinsin() { return trig({{1.0, TrigFactor::Sin, 1.0, TrigFactor::Sin, 1.0}}, kUnitSquare); }

Field2D random_trig(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 4);
    return trig({{amp(gen), TrigFactor::Sin, static_cast<double>(freq(gen)), TrigFactor::Cos,
                  static_cast<double>(freq(gen))},
                 {amp(gen), TrigFactor::Cos, static_cast<double>(freq(gen)), TrigFactor::Cos,
                  static_cast<double>(freq(gen))}},
                kUnitSquare);
}

} // namespace

TEST_CASE("family builders")
{
    const Net net = make_net(kUnitSquare, 2, 2);
    const FamilySelector w = w_family(net, constant(0.3, kUnitSquare), 3);
    CHECK(w.members.size() == 9);
    CHECK(w.q == doctest::Approx(0.3));
    CHECK(w.members[5].label == "m=2,n=3");
    CHECK(family_name(w.family) == "W");

    const FamilySelector t = t_family(net, {2, 2}, {constant(0.0, kUnitSquare), constant(-0.4, kUnitSquare)}, 0.5);
    CHECK(t.members.size() == 2);
    CHECK_THROWS_AS((void)t_family(net, {2, 2}, {constant(0.7, kUnitSquare)}, 0.5), AdmissibilityError);

    const std::vector<int> sizes{2, 4, 8};
    const FamilySelector v = v_family(kUnitSquare, sizes, constant(0.2, kUnitSquare), {2, 2});
    CHECK(v.members[2].net.cells_x() == 8);
    CHECK_THROWS_AS((void)w_family(net, constant(1.0, kUnitSquare), 2), AdmissibilityError);
}

TEST_CASE("process property")
{
    const Net net = make_net(kUnitSquare, 2, 2);
    const FamilySelector w = w_family(net, constant(0.4, kUnitSquare), 4);
    const std::vector<double> lambdas{0.5, 2.0, 7.0};
    const PropertyReport r = check_process(w, sinsin(), lambdas);
    CHECK(r.pass);
    CHECK(r.worst_margin >= -10.0 * w.tol);
    CHECK(r.evidence == "finite-section evidence");
    CHECK(r.probes == w.members.size() * 4);

    const std::vector<double> unit{1.0};
    const PropertyReport same = check_process(w, sinsin(), unit);
    for (const ProbeRecord& rec : same.records) {
        CHECK(rec.observed == 0.0);
    }
    const std::vector<double> bad{-1.0};
    CHECK_THROWS_AS((void)check_process(w, sinsin(), bad), ArgumentError);
}

TEST_CASE("lipschitz envelope")
{
    const Net net = make_net(kUnitSquare, 2, 2);
    const FamilySelector w = w_family(net, constant(0.5, kUnitSquare), 2);
    const PropertyReport shift = check_lipschitz(w, sinsin(), constant_shift(sinsin(), 0.1));
    for (const ProbeRecord& rec : shift.records) {
        CHECK(rec.observed == doctest::Approx(0.1).epsilon(1e-8));
    }
    CHECK(shift.pass);

    const FamilySelector z = w_family(net, constant(0.0, kUnitSquare), 2);
    std::mt19937_64 first(1);
    const PropertyReport zr = check_lipschitz(z, sinsin(), random_trig(first));
    CHECK(zr.headline <= 1.0 + 1e-12);

    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> a(-0.5, 0.5);
    double worst = 1.0;
    for (int k = 0; k < 20; ++k) {
        const FamilySelector t = t_family(net, {3, 3}, {constant(a(gen), kUnitSquare)}, 0.5, 8);
        const PropertyReport r = check_lipschitz(t, random_trig(gen), random_trig(gen));
        CHECK(r.pass);
        CHECK(r.headline <= 3.0 + 1e-6);
        worst = std::min(worst, r.worst_margin);
    }
    CHECK(worst >= -1e-9);
    CHECK_THROWS_AS((void)check_lipschitz(w, sinsin(), sinsin()), ArgumentError);
}

TEST_CASE("norm bound")
{
    const Net net = make_net(kUnitSquare, 2, 2);
    std::mt19937_64 gen(5);
    const std::vector<Field2D> probes{random_trig(gen), random_trig(gen), constant(1.0, kUnitSquare)};
    const std::vector<Field2D> alphas{constant(0.0, kUnitSquare), constant(0.5, kUnitSquare),
                                      constant(-0.5, kUnitSquare)};
    const PropertyReport r = norm_bound_check(net, {4, 4}, 0.5, probes, alphas);
    CHECK(r.pass);
    CHECK(r.headline == 3.0);
    for (const ProbeRecord& rec : r.records) {
        CHECK(rec.observed <= 1.0 + 1e-12);
    }
    CHECK(r.records[2].observed == doctest::Approx(1.0).epsilon(1e-10));

    const std::vector<Field2D> no_zero{constant(0.5, kUnitSquare)};
    CHECK_THROWS_AS((void)norm_bound_check(net, {4, 4}, 0.5, probes, no_zero), ArgumentError);
    CHECK_THROWS_AS((void)norm_bound_check(net, {4, 4}, 0.5, std::span<const Field2D>{}, alphas), ArgumentError);
}

TEST_CASE("continuity probe")
{
    const Net net = make_net(kUnitSquare, 2, 2);
    const FamilySelector sel = w_family(net, constant(0.3, kUnitSquare), 1);
    const Field2D w = trig({{1.0, TrigFactor::Cos, 1.0, TrigFactor::Cos, 1.0}}, kUnitSquare);
    const PropertyReport r = continuity_probe(sel, sinsin(), w, 8);
    CHECK(r.pass);
    // Differences decay like 1/k.
    const double first = r.records.front().observed;
    const double last = r.records[r.records.size() - 2].observed;
    CHECK(last * 8.0 == doctest::Approx(first).epsilon(1e-6));

    const PropertyReport z = continuity_probe(sel, sinsin(), constant(0.0, kUnitSquare), 4);
    for (const ProbeRecord& rec : z.records) {
        CHECK(rec.observed == 0.0);
    }
}

TEST_CASE("multi-valuedness witness")
{
    const Net net = make_net(kUnitSquare, 2, 2);
    const double gap = multivalued_witness(sinsin(), constant(0.4, kUnitSquare), net, 4);
    CHECK(gap > 100.0 * 1e-10);
    CHECK(multivalued_witness(polynomial({{0.0, 1.0}, {1.0, 0.0}}, kUnitSquare), constant(0.4, kUnitSquare), net, 4) <=
          1e-9);
}

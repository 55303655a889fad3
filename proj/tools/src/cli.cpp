#include "bifractal_cli/cli.hpp"

#include "bifractal_cli/json_out.hpp"
#include "bifractal_cli/reports.hpp"
#include "bifractal_cli/suite.hpp"
#include "seeded.hpp"

#include "bifractal/approx.hpp"
#include "bifractal/bernstein.hpp"
#include "bifractal/boxdim.hpp"
#include "bifractal/errors.hpp"
#include "bifractal/field_spec.hpp"
#include "bifractal/fif.hpp"
#include "bifractal/grid.hpp"
#include "bifractal/mvops.hpp"
#include "bifractal/sampling.hpp"

#include <CLI11.hpp>

#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace bifractal::cli {

using nlohmann::json;

namespace {

void emit(std::ostream& out, const std::string& path, const json& doc)
{
    if (path.empty()) {
        out << dump_json(doc) << '\n';
    } else {
        write_json_file(path, doc);
    }
}

bool is_1d(const json& doc)
{
    const auto kind = doc.find("kind");
    if (kind != doc.end() && kind->is_string()) {
        const std::string k = kind->get<std::string>();
        if (k == "weierstrass-shen" || k == "weierstrass-mw") {
            return true;
        }
    }
    const auto dom = doc.find("domain");
    return dom != doc.end() && dom->is_array() && dom->size() == 2;
}

/// Dyadic schedule that fits a stored grid: finest columns keep at least
/// kMinIntervalsPerColumn intervals, at most seven scales.
ScaleSchedule fitted_schedule(double width, std::size_t intervals)
{
    int kmax = 0;
    while (intervals % (std::size_t{2} << kmax) == 0 && intervals / (std::size_t{2} << kmax) >= kMinIntervalsPerColumn) {
        ++kmax;
    }
    if (kmax < 3) {
        throw ArgumentError("grid too coarse for box counting: " + std::to_string(intervals) +
                            " intervals give fewer than three dyadic scales");
    }
    return ScaleSchedule::dyadic(width, std::max(1, kmax - 6), kmax);
}

struct DimOptions {
    std::string field;
    std::string grid;
    std::string out;
    int kmin = -1;
    int kmax = -1;
    std::size_t resolution = 0;
    bool one_d = false;
};

void run_dim(const DimOptions& o, std::ostream& out)
{
    const bool custom = o.kmin >= 0 || o.kmax >= 0;
    if (custom && (o.kmin < 0 || o.kmax < 0)) {
        throw ArgumentError("give both --kmin and --kmax");
    }
    DimensionEstimate e;
    if (!o.grid.empty()) {
        const GridSample g = read_csv_file(o.grid);
        const ScaleSchedule s = custom ? ScaleSchedule::dyadic(g.domain.x.width(), o.kmin, o.kmax)
                                       : fitted_schedule(g.domain.x.width(), std::min(g.nx, g.ny) - 1);
        e = dim_sample(g, s);
    } else {
        const json doc = read_json_file(o.field);
        if (o.one_d || is_1d(doc)) {
            const Field1D f = parse_field1d(doc);
            const ScaleSchedule s =
                custom ? ScaleSchedule::dyadic(f.domain().width(), o.kmin, o.kmax) : default_schedule(f.domain());
            e = dim_graph(f, s, o.resolution);
        } else {
            const Field2D f = parse_field2d(doc);
            const ScaleSchedule s =
                custom ? ScaleSchedule::dyadic(f.domain().x.width(), o.kmin, o.kmax) : default_schedule(f.domain());
            e = dim_graph(f, s, o.resolution);
        }
    }
    emit(out, o.out, to_json(e));
}

struct SurfaceOptions {
    std::string config;
    std::string out;
    std::string meta;
    std::optional<int> refinement;
    std::optional<double> tol;
};

void run_surface(const SurfaceOptions& o, std::ostream& out)
{
    json doc = read_json_file(o.config);
    if (o.refinement) {
        doc["refinement"] = *o.refinement;
    }
    if (o.tol) {
        doc["tol"] = *o.tol;
    }
    const FractalSurface s = solve_fractal_surface(parse_surface_spec(doc));
    write_csv_file(o.out, s.values);
    const json meta = surface_meta(s);
    if (!o.meta.empty()) {
        write_json_file(o.meta, meta);
    }
    out << dump_json({{"grid", o.out}, {"iterations", s.iterations}, {"residual", s.residual}}, -1) << '\n';
}

struct BernsteinOptions {
    std::string field;
    std::string out;
    int m = 8;
    int n = 8;
    std::size_t resolution = 257;
};

void run_bernstein(const BernsteinOptions& o, std::ostream& out)
{
    const Field2D f = parse_field2d(read_json_file(o.field));
    const GridSample g = sample(bernstein_apply(f, {o.m, o.n}), o.resolution, o.resolution);
    write_csv_file(o.out, g);
    out << dump_json({{"grid", o.out}, {"degrees", {o.m, o.n}}}, -1) << '\n';
}

struct ApproxOptions {
    std::string mode;
    std::string config;
    std::string out;
    std::string report;
    std::size_t resolution = 257;
};

const json& required(const json& doc, const char* key)
{
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw ValidationError(key, "missing");
    }
    return *it;
}

ApproxRequest request_of(const json& doc)
{
    ApproxRequest req;
    req.target = parse_field2d(required(doc, "target"));
    req.seed = parse_field2d(required(doc, "seed"));
    const json& eps = required(doc, "epsilon");
    if (!eps.is_number()) {
        throw ValidationError("epsilon", "expected a number");
    }
    req.epsilon = eps.get<double>();
    if (const auto it = doc.find("degree_schedule"); it != doc.end()) {
        req.degree_schedule = it->get<std::vector<int>>();
    }
    if (const auto it = doc.find("check_resolution"); it != doc.end()) {
        req.check_resolution = it->get<std::size_t>();
    }
    return req;
}

json dense_json(const DenseApproximant& d)
{
    return {{"degrees", {d.degrees.m, d.degrees.n}},
            {"lipschitzError", d.lipschitz_error},
            {"seedNorm", d.seed_norm},
            {"seedWeight", d.seed_weight}};
}

void run_approx(const ApproxOptions& o, std::ostream& out)
{
    const json doc = read_json_file(o.config);
    json report{{"mode", o.mode}};
    Field2D result;
    if (o.mode == "lp") {
        const Field2D f = parse_field2d(required(doc, "target"));
        std::vector<Field2D> fields;
        for (const json& b : required(doc, "basis")) {
            fields.push_back(parse_field2d_or_constant(b, f.domain()));
        }
        const std::size_t grid = doc.value("grid", std::size_t{33});
        const BasisSet basis = make_basis(std::move(fields), grid);
        const OneSidedSolution s = best_one_sided_below(f, basis, grid);
        result = s.as_field(basis);
        report["certificate"] = {{"coefficients", s.coefficients},
                                 {"objective", s.objective},
                                 {"maxViolation", s.max_violation},
                                 {"gridResolution", s.grid_resolution},
                                 {"pivots", s.pivots},
                                 {"gramCondition", basis.gram_condition}};
    } else if (o.mode == "convex") {
        const Field2D f = parse_field2d(required(doc, "target"));
        const Field2D d = parse_field2d(required(doc, "derivative"));
        const Field2D seed = parse_field2d(required(doc, "seed"));
        const double eps = required(doc, "epsilon").get<double>();
        const ConvexApproximant c = convex_approximant(f, d, doc.value("m", 1), doc.value("n", 1), eps, seed);
        result = c.result;
        report["epsilon"] = eps;
        report["achievedError"] = sup_distance(f, result);
        report["derivativeEpsilon"] = c.derivative_epsilon;
        report["derivative"] = dense_json(c.derivative.inner);
        report["dimDerivative"] = to_json(dim_graph(c.derivative.result));
        report["dimSeed"] = to_json(dim_graph(seed));
    } else {
        const ApproxRequest req = request_of(doc);
        if (o.mode == "dense") {
            const DenseApproximant d = dense_approximant(req);
            result = d.result;
            report["approximant"] = dense_json(d);
        } else if (o.mode == "nonneg" || o.mode == "below" || o.mode == "above") {
            const ShiftedApproximant s = o.mode == "nonneg"  ? nonnegative_approximant(req)
                                         : o.mode == "below" ? lower_approximant(req)
                                                             : upper_approximant(req);
            result = s.result;
            report["approximant"] = dense_json(s.inner);
            report["shift"] = s.shift;
        } else {
            throw ArgumentError("unknown approx mode '" + o.mode + "'");
        }
        report["epsilon"] = req.epsilon;
        report["achievedError"] = sup_distance(req.target, result);
        report["dimSeed"] = to_json(dim_graph(req.seed));
    }
    report["dimOutput"] = to_json(dim_graph(result));
    write_csv_file(o.out, sample(result, o.resolution, o.resolution));
    emit(out, o.report, report);
}

struct MvOptions {
    std::string property;
    std::string family = "W";
    std::uint64_t seed = 0;
    std::string config;
    std::string out;
};

int run_mvcheck(const MvOptions& o, std::ostream& out)
{
    const json cfg = o.config.empty() ? json::object() : read_json_file(o.config);
    const int N = cfg.value("N", 2);
    const double q = cfg.value("q", 0.5);
    const double a = cfg.value("alpha", 0.3);
    const int cap = cfg.value("degree_cap", 4);
    const int R = cfg.value("refinement", 16);
    const double tol = cfg.value("tol", 1e-10);
    const BernsteinDegrees deg{cfg.value("m", 2), cfg.value("n", 2)};

    std::mt19937_64 gen(o.seed);
    const Field2D f = random_trig(gen, 1.0, 3);
    const Field2D g = random_trig(gen, 1.0, 3);
    const Field2D w = random_trig(gen, 1.0, 3);
    const Net net = make_net(kUnitSquare, N, N);
    std::vector<Field2D> probes_alpha{constant(0.0, kUnitSquare), constant(q, kUnitSquare),
                                      constant(-q, kUnitSquare), constant(0.5 * q, kUnitSquare),
                                      constant(-0.5 * q, kUnitSquare)};
    const double shift = uniform(gen, -0.5 * q, 0.5 * q);
    probes_alpha.push_back(affine_combination({{0.5 * q, random_trig(gen, 0.5, 2)}}, shift));

    FamilySelector sel;
    if (o.family == "W") {
        sel = w_family(net, constant(a, kUnitSquare), cap, R, tol);
    } else if (o.family == "T") {
        sel = t_family(net, deg, probes_alpha, q, R, tol);
    } else if (o.family == "V") {
        const std::vector<int> sizes{2, 4, 8};
        sel = v_family(kUnitSquare, sizes, constant(a, kUnitSquare), deg, R, tol);
    } else {
        throw ArgumentError("unknown family '" + o.family + "' (expected W, T or V)");
    }

    PropertyReport rep;
    if (o.property == "process") {
        const std::vector<double> lambdas = cfg.value("lambdas", std::vector<double>{0.5, 2.0, 7.0});
        rep = check_process(sel, f, lambdas);
    } else if (o.property == "lipschitz") {
        rep = check_lipschitz(sel, f, g);
    } else if (o.property == "norm") {
        const std::vector<Field2D> probes{f, g, constant(1.0, kUnitSquare)};
        rep = norm_bound_check(net, deg, q, probes, probes_alpha, R, tol);
    } else if (o.property == "continuity") {
        rep = continuity_probe(sel, f, w, cfg.value("K", 8));
    } else {
        throw ArgumentError("unknown property '" + o.property + "'");
    }
    json doc = to_json(rep);
    doc["family"] = o.family;
    doc["seed"] = o.seed;
    emit(out, o.out, doc);
    return rep.pass ? 0 : 1;
}

int run_selftest(const std::string& path, std::ostream& out)
{
    const SuiteReport rep = run_suite(&out);
    if (!path.empty()) {
        write_json_file(path, rep.to_json());
    }
    out << (rep.pass() ? "selftest passed" : "selftest FAILED") << '\n';
    return rep.pass() ? 0 : 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bivariate fractal surfaces, Bernstein operators, box dimensions and constrained approximants."};
    app.name("bifractal");
    app.require_subcommand(1);
    std::function<int()> action;

    SurfaceOptions so;
    auto* surface = app.add_subcommand("surface", "solve a fractal surface from a config document");
    surface->add_option("--config", so.config, "surface config (JSON)")->required();
    surface->add_option("--out", so.out, "grid CSV path")->required();
    surface->add_option("--meta", so.meta, "metadata JSON path");
    surface->add_option("--refinement", so.refinement, "override: grid nodes per cell");
    surface->add_option("--tol", so.tol, "override: sweep tolerance");
    surface->callback([&] { action = [&] { run_surface(so, out); return 0; }; });

    DimOptions dopt;
    auto* dim = app.add_subcommand("dim", "box-counting dimension of a graph");
    auto* dfield = dim->add_option("--field", dopt.field, "field spec (JSON)");
    auto* dgrid = dim->add_option("--grid", dopt.grid, "grid CSV");
    dfield->excludes(dgrid);
    dim->add_option("--out", dopt.out, "report path (stdout if omitted)");
    dim->add_option("--kmin", dopt.kmin, "coarsest dyadic level");
    dim->add_option("--kmax", dopt.kmax, "finest dyadic level");
    dim->add_option("--resolution", dopt.resolution, "samples per axis (0: automatic)");
    dim->add_flag("--1d", dopt.one_d, "read the field spec as univariate");
    dim->callback([&] {
        if (dopt.field.empty() && dopt.grid.empty()) {
            throw CLI::RequiredError("--field or --grid");
        }
        action = [&] { run_dim(dopt, out); return 0; };
    });

    BernsteinOptions bo;
    auto* bern = app.add_subcommand("bernstein", "sample B_{m,n} f on a grid");
    bern->add_option("--field", bo.field, "field spec (JSON)")->required();
    bern->add_option("-m", bo.m, "degree in x");
    bern->add_option("-n", bo.n, "degree in y");
    bern->add_option("--out", bo.out, "grid CSV path")->required();
    bern->add_option("--resolution", bo.resolution, "samples per axis");
    bern->callback([&] { action = [&] { run_bernstein(bo, out); return 0; }; });

    ApproxOptions ao;
    auto* approx = app.add_subcommand("approx", "dimension-preserving and constrained approximants");
    approx->add_option("--mode", ao.mode, "dense, nonneg, below, above, convex or lp")
        ->required()
        ->check(CLI::IsMember({"dense", "nonneg", "below", "above", "convex", "lp"}));
    approx->add_option("--config", ao.config, "approximation config (JSON)")->required();
    approx->add_option("--out", ao.out, "output grid CSV path")->required();
    approx->add_option("--report", ao.report, "report path (stdout if omitted)");
    approx->add_option("--resolution", ao.resolution, "output samples per axis");
    approx->callback([&] { action = [&] { run_approx(ao, out); return 0; }; });

    MvOptions mo;
    auto* mv = app.add_subcommand("mvcheck", "finite-section checks of the multi-valued operators");
    mv->add_option("--property", mo.property, "process, lipschitz, norm or continuity")
        ->required()
        ->check(CLI::IsMember({"process", "lipschitz", "norm", "continuity"}));
    mv->add_option("--family", mo.family, "W, T or V")->check(CLI::IsMember({"W", "T", "V"}));
    mv->add_option("--seed", mo.seed, "seed for the probe fields");
    mv->add_option("--config", mo.config, "optional parameters (JSON)");
    mv->add_option("--out", mo.out, "report path (stdout if omitted)");
    mv->callback([&] { action = [&] { return run_mvcheck(mo, out); }; });

    std::string st_out;
    auto* st = app.add_subcommand("selftest", "run the acceptance suite");
    st->add_option("--out", st_out, "report path");
    st->callback([&] { action = [&] { return run_selftest(st_out, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    try {
        return action();
    } catch (const Error& e) {
        out << dump_json(error_json(e)) << '\n';
        return 2;
    } catch (const json::exception& e) {
        out << dump_json({{"error", {{"type", "parse"}, {"message", e.what()}}}}) << '\n';
        return 2;
    }
}

} // namespace bifractal::cli

#include "bifractal_cli/reports.hpp"

namespace bifractal::cli {

using nlohmann::json;

json to_json(const DimensionEstimate& e)
{
    return {
        {"scales", e.scales},
        {"counts", e.counts},
        {"slope", e.slope},
        {"intercept", e.intercept},
        {"r2", e.r2},
        {"ci", e.half_width},
        {"slopeDropFinest", e.slope_drop_finest},
        {"slopeDropCoarsest", e.slope_drop_coarsest},
    };
}

json to_json(const PropertyReport& r)
{
    json records = json::array();
    for (const ProbeRecord& p : r.records) {
        records.push_back({{"label", p.label}, {"observed", p.observed}, {"bound", p.bound}, {"margin", p.margin}});
    }
    return {
        {"property", r.property},
        {"evidence", r.evidence},
        {"probes", r.probes},
        {"worstMargin", r.worst_margin},
        {"numTol", r.num_tol},
        {"pass", r.pass},
        {"headline", r.headline},
        {"records", records},
    };
}

json to_json(const Net& net)
{
    return {
        {"domain", {net.domain.x.lo, net.domain.x.hi, net.domain.y.lo, net.domain.y.hi}},
        {"knotsX", net.knots_x},
        {"knotsY", net.knots_y},
    };
}

json surface_meta(const FractalSurface& s)
{
    json meta{
        {"iterations", s.iterations},
        {"residual", s.residual},
        {"equationResidual", s.equation_residual},
        {"alphaSup", s.alpha_sup},
        {"net", to_json(s.net)},
        {"refinement", s.refinement},
        {"shape", {s.values.nx, s.values.ny}},
        {"interpolated", s.interpolated},
        {"deltas", s.deltas},
    };
    if (s.degrees) {
        meta["degrees"] = {s.degrees->m, s.degrees->n};
    }
    return meta;
}

json to_json(const DimFormulaReport& r)
{
    return {
        {"sigma", r.sigma},
        {"target", r.target},
        {"alpha", r.alpha},
        {"bound", r.bound},
        {"KFalpha", r.K_falpha},
        {"KFalphaEstimated", r.K_falpha_estimated},
        {"iterations", r.iterations},
        {"estimate", to_json(r.estimate)},
        {"gap", r.gap()},
    };
}

json error_json(const Error& e)
{
    json err{{"type", e.category()}, {"message", e.what()}};
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        err["key"] = v->key();
    }
    if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) {
        err["history"] = c->history();
    }
    return {{"error", err}};
}

} // namespace bifractal::cli

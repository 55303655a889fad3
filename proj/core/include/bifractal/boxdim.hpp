#pragma once

#include "bifractal/field.hpp"
#include "bifractal/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bifractal {

/// Strictly decreasing box sizes, each dividing the domain side(s).
struct ScaleSchedule {
    std::vector<double> deltas;

    /// width / 2^k for k = kmin..kmax.
    [[nodiscard]] static ScaleSchedule dyadic(double width, int kmin, int kmax);
    /// Same schedule without its finest (or coarsest) scale.
    [[nodiscard]] ScaleSchedule drop_finest() const;
    [[nodiscard]] ScaleSchedule drop_coarsest() const;
};

/// k = 4..14 dyadic on the interval.
[[nodiscard]] ScaleSchedule default_schedule(const Interval& domain);
/// k = 3..9 dyadic on the x side of the rectangle.
[[nodiscard]] ScaleSchedule default_schedule(const Rect& domain);

struct DimensionEstimate {
    std::vector<double> scales;
    std::vector<std::int64_t> counts;
    double slope = 0.0;      ///< the dimension estimate
    double intercept = 0.0;
    double r2 = 0.0;
    double half_width = 0.0; ///< 95% confidence half-width of the slope
    /// Slopes of the two one-shorter sub-schedules (NaN with < 4 scales).
    double slope_drop_finest = 0.0;
    double slope_drop_coarsest = 0.0;
};

/// Minimum number of sample intervals per box column along each axis.
inline constexpr std::size_t kMinIntervalsPerColumn = 4;

/// Column counting: each delta-column contributes ceil(osc / delta) + 1 boxes,
/// where osc is the sampled oscillation over the closed column.
[[nodiscard]] std::int64_t box_count_graph(const Sample1D& sample, double delta);
[[nodiscard]] std::int64_t box_count_graph(const GridSample& sample, double delta);

/// Least squares of log N against log(1/delta).
[[nodiscard]] DimensionEstimate estimate_dim(std::span<const double> scales, std::span<const std::int64_t> counts);

[[nodiscard]] DimensionEstimate dim_sample(const Sample1D& sample, const ScaleSchedule& schedule);
[[nodiscard]] DimensionEstimate dim_sample(const GridSample& sample, const ScaleSchedule& schedule);

/// Samples the field (resolution 0 picks kMinIntervalsPerColumn intervals per
/// finest column) and estimates the graph's box dimension.
[[nodiscard]] DimensionEstimate dim_graph(const Field1D& f, const ScaleSchedule& schedule, std::size_t resolution = 0);
[[nodiscard]] DimensionEstimate dim_graph(const Field2D& f, const ScaleSchedule& schedule, std::size_t resolution = 0);
[[nodiscard]] DimensionEstimate dim_graph(const Field1D& f);
[[nodiscard]] DimensionEstimate dim_graph(const Field2D& f);

} // namespace bifractal

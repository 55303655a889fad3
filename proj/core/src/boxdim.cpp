#include "bifractal/boxdim.hpp"

#include "bifractal/errors.hpp"
#include "bifractal/parallel.hpp"
#include "bifractal/sampling.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bifractal {

ScaleSchedule ScaleSchedule::dyadic(double width, int kmin, int kmax)
{
    if (!(width > 0.0) || kmin < 0 || kmax - kmin < 2) {
        throw ArgumentError("dyadic schedule needs width > 0, 0 <= kmin and at least 3 scales");
    }
    ScaleSchedule s;
    for (int k = kmin; k <= kmax; ++k) {
        s.deltas.push_back(std::ldexp(width, -k));
    }
    return s;
}

ScaleSchedule ScaleSchedule::drop_finest() const
{
    ScaleSchedule s = *this;
    if (!s.deltas.empty()) {
        s.deltas.pop_back();
    }
    return s;
}

ScaleSchedule ScaleSchedule::drop_coarsest() const
{
    ScaleSchedule s = *this;
    if (!s.deltas.empty()) {
        s.deltas.erase(s.deltas.begin());
    }
    return s;
}

ScaleSchedule default_schedule(const Interval& domain) { return ScaleSchedule::dyadic(domain.width(), 4, 14); }
ScaleSchedule default_schedule(const Rect& domain) { return ScaleSchedule::dyadic(domain.x.width(), 3, 9); }

namespace {

void check_schedule(const ScaleSchedule& s)
{
    if (s.deltas.size() < 3) {
        throw ArgumentError("scale schedule needs at least 3 scales");
    }
    for (std::size_t k = 0; k < s.deltas.size(); ++k) {
        if (!(s.deltas[k] > 0.0) || (k > 0 && !(s.deltas[k] < s.deltas[k - 1]))) {
            throw ArgumentError("scale schedule must be positive and strictly decreasing");
        }
    }
}

// Number of delta-columns along an axis and sample intervals per column.
std::size_t columns(double width, double delta, std::size_t n, std::size_t& per_column)
{
    const double c = std::nearbyint(width / delta);
    if (c < 1.0 || std::abs(c * delta - width) > 1e-9 * width) {
        throw ArgumentError("box size " + format_real(delta) + " does not divide the side " + format_real(width));
    }
    const auto cols = static_cast<std::size_t>(c);
    const std::size_t intervals = n - 1;
    if (intervals % cols != 0 || intervals / cols < kMinIntervalsPerColumn) {
        throw ArgumentError("sample with " + std::to_string(n) + " nodes is too coarse or misaligned for box size " +
                            format_real(delta) + " (need a multiple of " +
                            std::to_string(kMinIntervalsPerColumn * cols) + " intervals)");
    }
    per_column = intervals / cols;
    return cols;
}

std::int64_t column_boxes(double lo, double hi, double delta)
{
    return static_cast<std::int64_t>(std::ceil((hi - lo) / delta)) + 1;
}

struct Line {
    double slope;
    double intercept;
};

Line fit(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double subset_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t skip)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k != skip) {
            xs.push_back(x[k]);
            ys.push_back(y[k]);
        }
    }
    return fit(xs, ys).slope;
}

} // namespace

std::int64_t box_count_graph(const Sample1D& sample, double delta)
{
    if (sample.size() < 2) {
        throw ArgumentError("box_count_graph: need at least 2 samples");
    }
    std::size_t s = 0;
    const std::size_t cols = columns(sample.domain.width(), delta, sample.size(), s);
    std::int64_t total = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        const auto first = sample.values.begin() + static_cast<std::ptrdiff_t>(c * s);
        const auto [lo, hi] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(s + 1));
        total += column_boxes(*lo, *hi, delta);
    }
    return total;
}

std::int64_t box_count_graph(const GridSample& sample, double delta)
{
    if (sample.nx < 2 || sample.ny < 2) {
        throw ArgumentError("box_count_graph: need at least 2 x 2 samples");
    }
    std::size_t sx = 0;
    std::size_t sy = 0;
    const std::size_t cx = columns(sample.domain.x.width(), delta, sample.nx, sx);
    const std::size_t cy = columns(sample.domain.y.width(), delta, sample.ny, sy);
    std::vector<std::int64_t> per_strip(cx, 0);
    parallel_for(cx, [&](std::size_t c0, std::size_t c1) {
        std::vector<double> rmin(sample.ny);
        std::vector<double> rmax(sample.ny);
        for (std::size_t c = c0; c < c1; ++c) {
            for (std::size_t j = 0; j < sample.ny; ++j) {
                const double* row = sample.values.data() + j * sample.nx + c * sx;
                const auto [lo, hi] = std::minmax_element(row, row + sx + 1);
                rmin[j] = *lo;
                rmax[j] = *hi;
            }
            std::int64_t count = 0;
            for (std::size_t r = 0; r < cy; ++r) {
                const std::size_t j0 = r * sy;
                const double lo = *std::min_element(rmin.begin() + static_cast<std::ptrdiff_t>(j0),
                                                    rmin.begin() + static_cast<std::ptrdiff_t>(j0 + sy + 1));
                const double hi = *std::max_element(rmax.begin() + static_cast<std::ptrdiff_t>(j0),
                                                    rmax.begin() + static_cast<std::ptrdiff_t>(j0 + sy + 1));
                count += column_boxes(lo, hi, delta);
            }
            per_strip[c] = count;
        }
    });
    std::int64_t total = 0;
    for (std::int64_t v : per_strip) {
        total += v;
    }
    return total;
}

DimensionEstimate estimate_dim(std::span<const double> scales, std::span<const std::int64_t> counts)
{
    if (scales.size() != counts.size()) {
        throw ArgumentError("estimate_dim: scales and counts differ in length");
    }
    if (scales.size() < 3) {
        throw ArgumentError("estimate_dim: need at least 3 scales");
    }
    std::vector<double> x(scales.size());
    std::vector<double> y(scales.size());
    for (std::size_t k = 0; k < scales.size(); ++k) {
        if (!(scales[k] > 0.0) || counts[k] <= 0) {
            throw ArgumentError("estimate_dim: scales and counts must be positive");
        }
        x[k] = std::log(1.0 / scales[k]);
        y[k] = std::log(static_cast<double>(counts[k]));
    }
    for (std::size_t k = 1; k < x.size(); ++k) {
        if (x[k] == x[0]) {
            throw ArgumentError("estimate_dim: scales must not all coincide");
        }
    }

    DimensionEstimate e;
    e.scales.assign(scales.begin(), scales.end());
    e.counts.assign(counts.begin(), counts.end());
    const Line line = fit(x, y);
    e.slope = line.slope;
    e.intercept = line.intercept;

    const double n = static_cast<double>(x.size());
    double my = 0.0;
    double mx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        my += y[k];
        mx += x[k];
    }
    my /= n;
    mx /= n;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = y[k] - (line.intercept + line.slope * x[k]);
        ss_res += r * r;
        ss_tot += (y[k] - my) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    e.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    const boost::math::students_t dist(n - 2.0);
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    e.half_width = t * std::sqrt(ss_res / (n - 2.0) / sxx);

    if (x.size() >= 4) {
        const auto finest = static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
        const auto coarsest = static_cast<std::size_t>(std::min_element(x.begin(), x.end()) - x.begin());
        e.slope_drop_finest = subset_slope(x, y, finest);
        e.slope_drop_coarsest = subset_slope(x, y, coarsest);
    } else {
        e.slope_drop_finest = std::numeric_limits<double>::quiet_NaN();
        e.slope_drop_coarsest = std::numeric_limits<double>::quiet_NaN();
    }
    return e;
}

DimensionEstimate dim_sample(const Sample1D& sample, const ScaleSchedule& schedule)
{
    check_schedule(schedule);
    std::vector<std::int64_t> counts;
    for (double d : schedule.deltas) {
        counts.push_back(box_count_graph(sample, d));
    }
    return estimate_dim(schedule.deltas, counts);
}

DimensionEstimate dim_sample(const GridSample& sample, const ScaleSchedule& schedule)
{
    check_schedule(schedule);
    std::vector<std::int64_t> counts;
    for (double d : schedule.deltas) {
        counts.push_back(box_count_graph(sample, d));
    }
    return estimate_dim(schedule.deltas, counts);
}

namespace {

std::size_t auto_resolution(double width, double finest)
{
    return kMinIntervalsPerColumn * static_cast<std::size_t>(std::nearbyint(width / finest)) + 1;
}

} // namespace

DimensionEstimate dim_graph(const Field1D& f, const ScaleSchedule& schedule, std::size_t resolution)
{
    check_schedule(schedule);
    const std::size_t n = resolution != 0 ? resolution : auto_resolution(f.domain().width(), schedule.deltas.back());
    return dim_sample(sample(f, n), schedule);
}

DimensionEstimate dim_graph(const Field2D& f, const ScaleSchedule& schedule, std::size_t resolution)
{
    check_schedule(schedule);
    const double finest = schedule.deltas.back();
    const std::size_t nx = resolution != 0 ? resolution : auto_resolution(f.domain().x.width(), finest);
    const std::size_t ny = resolution != 0 ? resolution : auto_resolution(f.domain().y.width(), finest);
    return dim_sample(sample(f, nx, ny), schedule);
}

DimensionEstimate dim_graph(const Field1D& f) { return dim_graph(f, default_schedule(f.domain())); }
DimensionEstimate dim_graph(const Field2D& f) { return dim_graph(f, default_schedule(f.domain())); }

} // namespace bifractal

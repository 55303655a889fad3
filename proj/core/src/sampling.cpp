#include "bifractal/sampling.hpp"

#include "bifractal/errors.hpp"
#include "bifractal/parallel.hpp"

#include <cmath>
#include <string>

namespace bifractal {

GridSample sample(const Field2D& f, std::size_t nx, std::size_t ny)
{
    if (nx < 2 || ny < 2) {
        throw ArgumentError("sample: nx and ny must be >= 2");
    }
    GridSample g(f.domain(), nx, ny);
    const std::vector<double> xs = g.xs();
    const std::vector<double> ys = g.ys();
    // Row blocks are independent; values do not depend on the split.
    constexpr std::size_t kRowsPerTask = 16;
    const std::size_t tasks = (ny + kRowsPerTask - 1) / kRowsPerTask;
    parallel_for(tasks, [&](std::size_t begin, std::size_t end) {
        const std::size_t row0 = begin * kRowsPerTask;
        const std::size_t row1 = std::min(ny, end * kRowsPerTask);
        f.node().tabulate(xs, std::span(ys).subspan(row0, row1 - row0),
                          std::span(g.values).subspan(row0 * nx, (row1 - row0) * nx));
    });
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        if (!std::isfinite(g.values[k])) {
            const double x = xs[k % nx];
            const double y = ys[k / nx];
            throw NumericError("non-finite field value at (" + format_real(x) + ", " + format_real(y) + ")", x, y);
        }
    }
    return g;
}

Sample1D sample(const Field1D& f, std::size_t n)
{
    if (n < 2) {
        throw ArgumentError("sample: n must be >= 2");
    }
    Sample1D s{f.domain(), std::vector<double>(n)};
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = s.domain.node(i, n);
    }
    constexpr std::size_t kPerTask = 4096;
    const std::size_t tasks = (n + kPerTask - 1) / kPerTask;
    parallel_for(tasks, [&](std::size_t begin, std::size_t end) {
        const std::size_t i0 = begin * kPerTask;
        const std::size_t i1 = std::min(n, end * kPerTask);
        f.node().tabulate(std::span(xs).subspan(i0, i1 - i0), std::span(s.values).subspan(i0, i1 - i0));
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.values[i])) {
            throw NumericError("non-finite field value at x = " + format_real(xs[i]), xs[i], 0.0);
        }
    }
    return s;
}

double sup_norm(const Field2D& f, std::size_t resolution)
{
    if (resolution < 2) {
        throw ArgumentError("sup_norm: resolution must be >= 2");
    }
    return max_abs(sample(f, resolution, resolution).values);
}

double sup_norm(const Field1D& f, std::size_t resolution)
{
    if (resolution < 2) {
        throw ArgumentError("sup_norm: resolution must be >= 2");
    }
    return max_abs(sample(f, resolution).values);
}

double sup_distance(const Field2D& f, const Field2D& g, std::size_t resolution)
{
    return sup_norm(difference(f, g), resolution);
}

} // namespace bifractal

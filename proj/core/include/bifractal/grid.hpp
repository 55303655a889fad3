#pragma once

#include "bifractal/domain.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace bifractal {

/// Uniform rectangular sample of a 2D field. Row-major: values[j * nx + i]
/// holds f(x_i, y_j) with x_i = a + i (b - a) / (nx - 1).
struct GridSample {
    Rect domain;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values;

    GridSample() = default;
    GridSample(Rect d, std::size_t nx_, std::size_t ny_, double fill = 0.0);

    [[nodiscard]] double x_at(std::size_t i) const noexcept { return domain.x.node(i, nx); }
    [[nodiscard]] double y_at(std::size_t j) const noexcept { return domain.y.node(j, ny); }
    [[nodiscard]] double& at(std::size_t i, std::size_t j) noexcept { return values[j * nx + i]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const noexcept { return values[j * nx + i]; }
    [[nodiscard]] std::vector<double> xs() const;
    [[nodiscard]] std::vector<double> ys() const;

    /// Piecewise-bilinear read-out between nodes (exact at nodes).
    [[nodiscard]] double bilinear(double x, double y) const;
};

/// Uniform sample of a 1D field on `domain`.
struct Sample1D {
    Interval domain;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double x_at(std::size_t i) const noexcept { return domain.node(i, values.size()); }
};

/// 17 significant digits, round-trip exact for doubles.
[[nodiscard]] std::string format_real(double v);

/// CSV interchange: "# domain a b c d", "# shape nx ny", then ny rows of nx values.
void write_csv(std::ostream& os, const GridSample& g);
[[nodiscard]] GridSample read_csv(std::istream& is);
void write_csv_file(const std::string& path, const GridSample& g);
[[nodiscard]] GridSample read_csv_file(const std::string& path);

/// Largest |v| over the values.
[[nodiscard]] double max_abs(const std::vector<double>& v) noexcept;
/// Largest |a - b| element-wise; sizes must match.
[[nodiscard]] double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

} // namespace bifractal

#pragma once

#include <cstddef>

namespace bifractal {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
    [[nodiscard]] bool contains(double t) const noexcept { return t >= lo && t <= hi; }

    /// k-th of n uniformly spaced nodes; the last node is exactly `hi`.
    [[nodiscard]] double node(std::size_t k, std::size_t n) const noexcept
    {
        if (k + 1 >= n) {
            return hi;
        }
        return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// The rectangle I x J.
struct Rect {
    Interval x;
    Interval y;

    [[nodiscard]] bool contains(Point2 p) const noexcept { return x.contains(p.x) && y.contains(p.y); }
    [[nodiscard]] double area() const noexcept { return x.width() * y.width(); }

    friend bool operator==(const Rect&, const Rect&) = default;
};

inline constexpr Rect kUnitSquare{{0.0, 1.0}, {0.0, 1.0}};
inline constexpr Interval kUnitInterval{0.0, 1.0};

/// Throws ArgumentError unless lo < hi on every axis.
void validate(const Interval& i);
void validate(const Rect& r);

} // namespace bifractal

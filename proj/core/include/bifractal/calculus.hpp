#pragma once

#include "bifractal/field.hpp"

#include <cstddef>

namespace bifractal {

inline constexpr std::size_t kDefaultQuadratureResolution = 513;

/// f(x, y) = int_a^x int_c^y g(t, s) ds dt via cumulative composite trapezoid
/// on a resolution^2 node grid, bilinear between nodes. Exactly zero along
/// x = a and y = c.
[[nodiscard]] Field2D cumulative_integral2(const Field2D& g, std::size_t resolution = kDefaultQuadratureResolution);

/// m-fold cumulative integration in x and n-fold in y (separable trapezoid
/// passes); D^(m,n) of the result recovers h up to quadrature error.
[[nodiscard]] Field2D iterated_integral(const Field2D& h, int m, int n,
                                        std::size_t resolution = kDefaultQuadratureResolution);

/// Central finite-difference estimate of D^(kx,ky) f at p with step h.
/// Requires p to sit at least max(kx,ky) h / 2 (and at least h) from the boundary.
[[nodiscard]] double mixed_partial(const Field2D& f, Point2 p, double h, int kx = 1, int ky = 1);

/// 1e-3 of the narrower domain side.
[[nodiscard]] double default_fd_step(const Rect& domain) noexcept;

/// Composite Simpson double integral on a resolution^2 grid (resolution odd).
[[nodiscard]] double integrate(const Field2D& f, std::size_t resolution = 257);

} // namespace bifractal

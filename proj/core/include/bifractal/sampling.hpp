#pragma once

#include "bifractal/field.hpp"
#include "bifractal/grid.hpp"

#include <cstddef>

namespace bifractal {

/// Uniform nx x ny sample, row-major. Throws NumericError at the first
/// non-finite value (carrying the point) and ArgumentError for nx or ny < 2.
[[nodiscard]] GridSample sample(const Field2D& f, std::size_t nx, std::size_t ny);
[[nodiscard]] Sample1D sample(const Field1D& f, std::size_t n);

inline constexpr std::size_t kDefaultSupResolution = 1025;

/// max |f| over a uniform resolution x resolution sample. A lower estimate of
/// the true sup-norm; nested refinements (2k+1) never decrease it.
[[nodiscard]] double sup_norm(const Field2D& f, std::size_t resolution = kDefaultSupResolution);
[[nodiscard]] double sup_norm(const Field1D& f, std::size_t resolution = kDefaultSupResolution);
/// Sampled sup |f - g|.
[[nodiscard]] double sup_distance(const Field2D& f, const Field2D& g, std::size_t resolution = kDefaultSupResolution);

} // namespace bifractal

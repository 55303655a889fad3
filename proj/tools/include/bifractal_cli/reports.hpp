#pragma once

#include "bifractal/approx.hpp"
#include "bifractal/boxdim.hpp"
#include "bifractal/errors.hpp"
#include "bifractal/fif.hpp"
#include "bifractal/mvops.hpp"

#include <nlohmann/json.hpp>

namespace bifractal::cli {

[[nodiscard]] nlohmann::json to_json(const DimensionEstimate& e);
[[nodiscard]] nlohmann::json to_json(const PropertyReport& r);
[[nodiscard]] nlohmann::json to_json(const Net& net);
/// Surface metadata (everything except the grid values).
[[nodiscard]] nlohmann::json surface_meta(const FractalSurface& s);
[[nodiscard]] nlohmann::json to_json(const DimFormulaReport& r);
[[nodiscard]] nlohmann::json error_json(const Error& e);

} // namespace bifractal::cli

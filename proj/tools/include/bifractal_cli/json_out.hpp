#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace bifractal::cli {

/// Serializes with every real at 17 significant digits; non-finite reals
/// become null. Object keys come out sorted, so equal documents give equal bytes.
[[nodiscard]] std::string dump_json(const nlohmann::json& doc, int indent = 2);

/// Throws IoError when the file cannot be written.
void write_json_file(const std::string& path, const nlohmann::json& doc);
[[nodiscard]] nlohmann::json read_json_file(const std::string& path);

} // namespace bifractal::cli

#include "bifractal_cli/json_out.hpp"

#include "bifractal/errors.hpp"
#include "bifractal/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace bifractal::cli {

namespace {

void emit(std::ostringstream& os, const nlohmann::json& j, int indent, int depth)
{
    const auto newline = [&](int d) {
        if (indent >= 0) {
            os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << (first ? "" : ",");
            first = false;
            newline(depth + 1);
            os << nlohmann::json(it.key()).dump() << (indent >= 0 ? ": " : ":");
            emit(os, it.value(), indent, depth + 1);
        }
        newline(depth);
        os << '}';
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << '[';
        bool first = true;
        for (const auto& v : j) {
            os << (first ? "" : ",");
            first = false;
            newline(depth + 1);
            emit(os, v, indent, depth + 1);
        }
        newline(depth);
        os << ']';
        return;
    }
    case nlohmann::json::value_t::number_float: {
        const double v = j.get<double>();
        os << (std::isfinite(v) ? format_real(v) : "null");
        return;
    }
    default:
        os << j.dump();
    }
}

} // namespace

std::string dump_json(const nlohmann::json& doc, int indent)
{
    std::ostringstream os;
    emit(os, doc, indent, 0);
    return os.str();
}

void write_json_file(const std::string& path, const nlohmann::json& doc)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    f << dump_json(doc) << '\n';
    if (!f) {
        throw IoError("failed writing '" + path + "'");
    }
}

nlohmann::json read_json_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open '" + path + "'");
    }
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
}

} // namespace bifractal::cli

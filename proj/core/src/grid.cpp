#include "bifractal/grid.hpp"

#include "bifractal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bifractal {

GridSample::GridSample(Rect d, std::size_t nx_, std::size_t ny_, double fill)
    : domain(d), nx(nx_), ny(ny_), values(nx_ * ny_, fill)
{
}

std::vector<double> GridSample::xs() const
{
    std::vector<double> out(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        out[i] = x_at(i);
    }
    return out;
}

std::vector<double> GridSample::ys() const
{
    std::vector<double> out(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        out[j] = y_at(j);
    }
    return out;
}

namespace {

// Cell index and local coordinate of t on n uniform nodes over `axis`.
// Coordinates within rounding of a node snap onto it so read-out is exact there.
std::pair<std::size_t, double> locate(const Interval& axis, std::size_t n, double t)
{
    const auto last = static_cast<double>(n - 1);
    double u = (t - axis.lo) / axis.width() * last;
    const double nearest = std::nearbyint(u);
    if (std::abs(u - nearest) <= 1e-9) {
        u = nearest;
    }
    if (u <= 0.0) {
        return {0, 0.0};
    }
    if (u >= last) {
        return {n - 1, 0.0};
    }
    const double cell = std::floor(u);
    return {static_cast<std::size_t>(cell), u - cell};
}

} // namespace

double GridSample::bilinear(double x, double y) const
{
    const auto [i, tx] = locate(domain.x, nx, x);
    const auto [j, ty] = locate(domain.y, ny, y);
    const double v00 = at(i, j);
    if (tx == 0.0 && ty == 0.0) {
        return v00;
    }
    if (ty == 0.0) {
        return v00 + tx * (at(i + 1, j) - v00);
    }
    if (tx == 0.0) {
        return v00 + ty * (at(i, j + 1) - v00);
    }
    const double lower = v00 + tx * (at(i + 1, j) - v00);
    const double upper = at(i, j + 1) + tx * (at(i + 1, j + 1) - at(i, j + 1));
    return lower + ty * (upper - lower);
}

std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const GridSample& g)
{
    os << "# domain " << format_real(g.domain.x.lo) << ' ' << format_real(g.domain.x.hi) << ' '
       << format_real(g.domain.y.lo) << ' ' << format_real(g.domain.y.hi) << '\n';
    os << "# shape " << g.nx << ' ' << g.ny << '\n';
    std::string line;
    for (std::size_t j = 0; j < g.ny; ++j) {
        line.clear();
        for (std::size_t i = 0; i < g.nx; ++i) {
            if (i > 0) {
                line += ',';
            }
            line += format_real(g.at(i, j));
        }
        line += '\n';
        os << line;
    }
}

namespace {

double parse_number(const std::string& token, std::size_t row)
{
    if (token.empty()) {
        throw ParseError("empty value in CSV row " + std::to_string(row));
    }
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ParseError("bad value '" + token + "' in CSV row " + std::to_string(row));
    }
    return v;
}

} // namespace

GridSample read_csv(std::istream& is)
{
    std::string line;
    bool have_domain = false;
    bool have_shape = false;
    Rect domain;
    std::size_t nx = 0;
    std::size_t ny = 0;
    while (!(have_domain && have_shape) && std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] != '#') {
            throw ParseError("CSV grid must start with '# domain' and '# shape' headers");
        }
        std::istringstream hs(line.substr(1));
        std::string key;
        hs >> key;
        if (key == "domain") {
            if (!(hs >> domain.x.lo >> domain.x.hi >> domain.y.lo >> domain.y.hi)) {
                throw ParseError("malformed '# domain' header");
            }
            have_domain = true;
        } else if (key == "shape") {
            long long a = 0;
            long long b = 0;
            if (!(hs >> a >> b) || a < 2 || b < 2) {
                throw ParseError("malformed '# shape' header (need nx, ny >= 2)");
            }
            nx = static_cast<std::size_t>(a);
            ny = static_cast<std::size_t>(b);
            have_shape = true;
        }
    }
    if (!have_domain || !have_shape) {
        throw ParseError("CSV grid is missing its '# domain' or '# shape' header");
    }
    validate(domain);
    GridSample g(domain, nx, ny);
    std::size_t row = 0;
    while (row < ny && std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string token = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (col >= nx) {
                throw ParseError("too many values in CSV row " + std::to_string(row));
            }
            g.at(col++, row) = parse_number(token, row);
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (col != nx) {
            throw ParseError("CSV row " + std::to_string(row) + " has " + std::to_string(col) + " values, expected " +
                             std::to_string(nx));
        }
        ++row;
    }
    if (row != ny) {
        throw ParseError("CSV grid has " + std::to_string(row) + " rows, expected " + std::to_string(ny));
    }
    return g;
}

void write_csv_file(const std::string& path, const GridSample& g)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_csv(os, g);
    if (!os) {
        throw IoError("write to '" + path + "' failed");
    }
}

GridSample read_csv_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return read_csv(is);
}

double max_abs(const std::vector<double>& v) noexcept
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) {
        throw ArgumentError("max_abs_diff: size mismatch");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

} // namespace bifractal

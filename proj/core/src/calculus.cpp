#include "bifractal/calculus.hpp"

#include "bifractal/errors.hpp"
#include "bifractal/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bifractal {

namespace {

void check_resolution(std::size_t resolution)
{
    if (resolution < 2) {
        throw ArgumentError("quadrature resolution must be >= 2");
    }
}

// In-place cumulative trapezoid along x (each row) of a row-major grid.
void cumulate_x(GridSample& g)
{
    const double h = g.domain.x.width() / static_cast<double>(g.nx - 1);
    for (std::size_t j = 0; j < g.ny; ++j) {
        double prev = g.at(0, j);
        g.at(0, j) = 0.0;
        for (std::size_t i = 1; i < g.nx; ++i) {
            const double cur = g.at(i, j);
            g.at(i, j) = g.at(i - 1, j) + 0.5 * h * (prev + cur);
            prev = cur;
        }
    }
}

void cumulate_y(GridSample& g)
{
    const double h = g.domain.y.width() / static_cast<double>(g.ny - 1);
    std::vector<double> prev(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(g.nx));
    std::fill(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(g.nx), 0.0);
    for (std::size_t j = 1; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double cur = g.at(i, j);
            g.at(i, j) = g.at(i, j - 1) + 0.5 * h * (prev[i] + cur);
            prev[i] = cur;
        }
    }
}

} // namespace

Field2D cumulative_integral2(const Field2D& g, std::size_t resolution)
{
    check_resolution(resolution);
    const GridSample gs = sample(g, resolution, resolution);
    GridSample F(g.domain(), resolution, resolution, 0.0);
    const double hx = g.domain().x.width() / static_cast<double>(resolution - 1);
    const double hy = g.domain().y.width() / static_cast<double>(resolution - 1);
    const double cell = 0.25 * hx * hy;
    for (std::size_t j = 1; j < resolution; ++j) {
        for (std::size_t i = 1; i < resolution; ++i) {
            const double avg = gs.at(i - 1, j - 1) + gs.at(i, j - 1) + gs.at(i - 1, j) + gs.at(i, j);
            F.at(i, j) = F.at(i - 1, j) + F.at(i, j - 1) - F.at(i - 1, j - 1) + cell * avg;
        }
    }
    return tabulated(std::move(F), "cumulative-integral");
}

Field2D iterated_integral(const Field2D& h, int m, int n, std::size_t resolution)
{
    check_resolution(resolution);
    if (m < 1 || n < 1) {
        throw ArgumentError("iterated_integral: m and n must be >= 1");
    }
    GridSample G = sample(h, resolution, resolution);
    for (int k = 0; k < m; ++k) {
        cumulate_x(G);
    }
    for (int k = 0; k < n; ++k) {
        cumulate_y(G);
    }
    return tabulated(std::move(G), "iterated-integral");
}

namespace {

double binomial(int n, int k)
{
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

} // namespace

double mixed_partial(const Field2D& f, Point2 p, double h, int kx, int ky)
{
    if (!(h > 0.0)) {
        throw ArgumentError("mixed_partial: step must be positive");
    }
    if (kx < 0 || ky < 0 || kx + ky == 0) {
        throw ArgumentError("mixed_partial: orders must be non-negative and not both zero");
    }
    const Rect& d = f.domain();
    // Every stencil spans [p - h, p + h] along a differentiated axis.
    const bool x_ok = kx == 0 || (p.x - h >= d.x.lo && p.x + h <= d.x.hi);
    const bool y_ok = ky == 0 || (p.y - h >= d.y.lo && p.y + h <= d.y.hi);
    if (!d.contains(p) || !x_ok || !y_ok) {
        throw DomainError("mixed_partial: point (" + format_real(p.x) + ", " + format_real(p.y) +
                          ") lies closer than the step to the boundary");
    }
    // Order-k central difference with spacing 2h / k (nodes p +- h at the ends).
    const double sx = kx > 0 ? 2.0 * h / kx : 0.0;
    const double sy = ky > 0 ? 2.0 * h / ky : 0.0;
    double acc = 0.0;
    for (int i = 0; i <= kx; ++i) {
        const double x = p.x + (0.5 * kx - i) * sx;
        for (int j = 0; j <= ky; ++j) {
            const double y = p.y + (0.5 * ky - j) * sy;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binomial(kx, i) * binomial(ky, j) * f.eval(x, y);
        }
    }
    return acc / (std::pow(sx, kx) * std::pow(sy, ky));
}

double default_fd_step(const Rect& domain) noexcept
{
    return 1e-3 * std::min(domain.x.width(), domain.y.width());
}

double integrate(const Field2D& f, std::size_t resolution)
{
    if (resolution < 3 || resolution % 2 == 0) {
        throw ArgumentError("integrate: resolution must be odd and >= 3");
    }
    const GridSample g = sample(f, resolution, resolution);
    auto weight = [resolution](std::size_t k) {
        if (k == 0 || k + 1 == resolution) {
            return 1.0;
        }
        return k % 2 == 1 ? 4.0 : 2.0;
    };
    double acc = 0.0;
    for (std::size_t j = 0; j < resolution; ++j) {
        double row = 0.0;
        for (std::size_t i = 0; i < resolution; ++i) {
            row += weight(i) * g.at(i, j);
        }
        acc += weight(j) * row;
    }
    const double hx = f.domain().x.width() / static_cast<double>(resolution - 1);
    const double hy = f.domain().y.width() / static_cast<double>(resolution - 1);
    return acc * hx * hy / 9.0;
}

} // namespace bifractal

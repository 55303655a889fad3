#include "bifractal/bernstein.hpp"

#include "bifractal/errors.hpp"
#include "bifractal/sampling.hpp"

#include <algorithm>
#include <string>

namespace bifractal {

void validate(const BernsteinDegrees& deg)
{
    if (deg.m < 1 || deg.n < 1 || deg.m > kMaxBernsteinDegree || deg.n > kMaxBernsteinDegree) {
        throw ArgumentError("Bernstein degrees must lie in [1, " + std::to_string(kMaxBernsteinDegree) + "], got (" +
                            std::to_string(deg.m) + ", " + std::to_string(deg.n) + ")");
    }
}

void bernstein_basis(int degree, double t, std::span<double> out)
{
    const double s = 1.0 - t;
    out[0] = 1.0;
    for (int k = 1; k <= degree; ++k) {
        out[static_cast<std::size_t>(k)] = t * out[static_cast<std::size_t>(k - 1)];
        for (int i = k - 1; i >= 1; --i) {
            const auto u = static_cast<std::size_t>(i);
            out[u] = s * out[u] + t * out[u - 1];
        }
        out[0] = s * out[0];
    }
}

std::vector<double> bernstein_basis(int degree, double t)
{
    std::vector<double> out(static_cast<std::size_t>(degree) + 1);
    bernstein_basis(degree, t, out);
    return out;
}

GridSample bernstein_lattice(const Field2D& f, BernsteinDegrees deg)
{
    validate(deg);
    GridSample lattice(f.domain(), static_cast<std::size_t>(deg.m) + 1, static_cast<std::size_t>(deg.n) + 1);
    lattice.values = f.tabulate(lattice.xs(), lattice.ys());
    return lattice;
}

namespace {

class BernsteinNode final : public Field2DNode {
public:
    explicit BernsteinNode(GridSample lattice) : lattice_(std::move(lattice)) {}

    double value(double x, double y) const override
    {
        std::vector<double> bx(lattice_.nx);
        std::vector<double> by(lattice_.ny);
        bernstein_basis(degree_x(), unit_x(x), bx);
        bernstein_basis(degree_y(), unit_y(y), by);
        double acc = 0.0;
        for (std::size_t j = 0; j < lattice_.ny; ++j) {
            acc += by[j] * inner(bx, j);
        }
        return acc;
    }

    std::string_view kind() const override { return "bernstein-image"; }

    // Separable evaluation: same summation order as value().
    void tabulate(std::span<const double> xs, std::span<const double> ys, std::span<double> out) const override
    {
        const std::size_t mx = lattice_.nx;
        const std::size_t my = lattice_.ny;
        std::vector<double> bx(mx);
        std::vector<double> partial(xs.size() * my);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            bernstein_basis(degree_x(), unit_x(xs[k]), bx);
            for (std::size_t j = 0; j < my; ++j) {
                partial[k * my + j] = inner(bx, j);
            }
        }
        std::vector<double> by(my);
        for (std::size_t l = 0; l < ys.size(); ++l) {
            bernstein_basis(degree_y(), unit_y(ys[l]), by);
            for (std::size_t k = 0; k < xs.size(); ++k) {
                const double* row = &partial[k * my];
                double acc = 0.0;
                for (std::size_t j = 0; j < my; ++j) {
                    acc += by[j] * row[j];
                }
                out[l * xs.size() + k] = acc;
            }
        }
    }

private:
    int degree_x() const noexcept { return static_cast<int>(lattice_.nx) - 1; }
    int degree_y() const noexcept { return static_cast<int>(lattice_.ny) - 1; }
    double unit_x(double x) const noexcept { return (x - lattice_.domain.x.lo) / lattice_.domain.x.width(); }
    double unit_y(double y) const noexcept { return (y - lattice_.domain.y.lo) / lattice_.domain.y.width(); }

    double inner(const std::vector<double>& bx, std::size_t j) const noexcept
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < lattice_.nx; ++i) {
            acc += bx[i] * lattice_.at(i, j);
        }
        return acc;
    }

    GridSample lattice_;
};

} // namespace

Field2D bernstein_apply(const Field2D& f, BernsteinDegrees deg)
{
    return {std::make_shared<BernsteinNode>(bernstein_lattice(f, deg)), f.domain()};
}

double bernstein_norm_probe(std::span<const Field2D> probes, BernsteinDegrees deg, std::size_t resolution)
{
    if (probes.empty()) {
        throw ArgumentError("bernstein_norm_probe: empty probe list");
    }
    double worst = 0.0;
    for (const auto& f : probes) {
        const double denom = std::max(sup_norm(f, resolution), max_abs(bernstein_lattice(f, deg).values));
        if (denom == 0.0) {
            throw ArgumentError("bernstein_norm_probe: probes must be nonzero");
        }
        worst = std::max(worst, sup_norm(bernstein_apply(f, deg), resolution) / denom);
    }
    return worst;
}

} // namespace bifractal

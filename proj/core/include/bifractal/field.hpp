#pragma once

#include "bifractal/domain.hpp"
#include "bifractal/grid.hpp"
#include "bifractal/series.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bifractal {

/// Implementation side of a univariate field. Nodes are immutable.
class Field1DNode {
public:
    virtual ~Field1DNode() = default;
    [[nodiscard]] virtual double value(double x) const = 0;
    [[nodiscard]] virtual std::string_view kind() const = 0;
    /// out[i] = value(xs[i]). Overrides must agree bit-for-bit with value().
    virtual void tabulate(std::span<const double> xs, std::span<double> out) const;
};

/// Implementation side of a bivariate field.
class Field2DNode {
public:
    virtual ~Field2DNode() = default;
    [[nodiscard]] virtual double value(double x, double y) const = 0;
    [[nodiscard]] virtual std::string_view kind() const = 0;
    /// out[j * xs.size() + i] = value(xs[i], ys[j]). Overrides must agree
    /// bit-for-bit with value().
    virtual void tabulate(std::span<const double> xs, std::span<const double> ys, std::span<double> out) const;
};

/// Evaluable real-valued function on an interval. Cheap to copy (shared node).
class Field1D {
public:
    /// The zero function on [0, 1].
    Field1D();
    Field1D(std::shared_ptr<const Field1DNode> node, Interval domain);

    /// Throws DomainError outside the domain.
    [[nodiscard]] double eval(double x) const;
    [[nodiscard]] double operator()(double x) const { return eval(x); }
    [[nodiscard]] std::vector<double> tabulate(std::span<const double> xs) const;

    [[nodiscard]] const Interval& domain() const noexcept { return domain_; }
    [[nodiscard]] std::string_view kind() const { return node_->kind(); }
    [[nodiscard]] const Field1DNode& node() const noexcept { return *node_; }

private:
    std::shared_ptr<const Field1DNode> node_;
    Interval domain_;
};

/// Evaluable real-valued function on a rectangle. Cheap to copy (shared node).
class Field2D {
public:
    /// The zero function on the unit square.
    Field2D();
    Field2D(std::shared_ptr<const Field2DNode> node, Rect domain);

    /// Throws DomainError outside the domain.
    [[nodiscard]] double eval(double x, double y) const;
    [[nodiscard]] double eval(Point2 p) const { return eval(p.x, p.y); }
    [[nodiscard]] double operator()(double x, double y) const { return eval(x, y); }
    [[nodiscard]] std::vector<double> tabulate(std::span<const double> xs, std::span<const double> ys) const;

    [[nodiscard]] const Rect& domain() const noexcept { return domain_; }
    [[nodiscard]] std::string_view kind() const { return node_->kind(); }
    [[nodiscard]] const Field2DNode& node() const noexcept { return *node_; }

private:
    std::shared_ptr<const Field2DNode> node_;
    Rect domain_;
};

// Univariate catalog.
[[nodiscard]] Field1D constant(double value, Interval domain);
/// sum_k coeffs[k] x^k
[[nodiscard]] Field1D polynomial(std::vector<double> coeffs, Interval domain);
[[nodiscard]] Field1D shen_series(const ShenSeriesSpec& spec, Interval domain);
[[nodiscard]] Field1D mw_series(const MWSeriesSpec& spec, Interval domain);

// Bivariate catalog.
[[nodiscard]] Field2D constant(double value, Rect domain);
/// sum_{i,j} coeffs[i][j] x^i y^j
[[nodiscard]] Field2D polynomial(std::vector<std::vector<double>> coeffs, Rect domain);

enum class TrigFactor { Sin, Cos };

/// amplitude * fx(pi kx x) * fy(pi ky y)
struct TrigTerm {
    double amplitude = 1.0;
    TrigFactor fx = TrigFactor::Sin;
    double kx = 1.0;
    TrigFactor fy = TrigFactor::Sin;
    double ky = 1.0;
};
[[nodiscard]] Field2D trig(std::vector<TrigTerm> terms, Rect domain);

/// h(x, y) = w(x) + y on w.domain() x y_domain.
[[nodiscard]] Field2D lift_sum(const Field1D& w, Interval y_domain);

struct WeightedField {
    double weight;
    Field2D field;
};
/// offset + sum_k weight_k f_k. All fields must share a domain.
[[nodiscard]] Field2D affine_combination(std::vector<WeightedField> terms, double offset = 0.0);
/// f + shift
[[nodiscard]] Field2D constant_shift(const Field2D& f, double shift);
/// weight * f
[[nodiscard]] Field2D scaled(const Field2D& f, double weight);
/// a - b
[[nodiscard]] Field2D difference(const Field2D& a, const Field2D& b);

/// Bilinear read-out of a stored grid. `kind` labels the provenance
/// ("sampled-grid", "fractal-surface", ...).
[[nodiscard]] Field2D tabulated(GridSample grid, std::string kind = "sampled-grid");

} // namespace bifractal

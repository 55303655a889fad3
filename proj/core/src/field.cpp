#include "bifractal/field.hpp"

#include "bifractal/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace bifractal {

void Field1DNode::tabulate(std::span<const double> xs, std::span<double> out) const
{
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = value(xs[i]);
    }
}

void Field2DNode::tabulate(std::span<const double> xs, std::span<const double> ys, std::span<double> out) const
{
    const std::size_t nx = xs.size();
    for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            out[j * nx + i] = value(xs[i], ys[j]);
        }
    }
}

Field1D::Field1D() : Field1D(constant(0.0, kUnitInterval)) {}

Field1D::Field1D(std::shared_ptr<const Field1DNode> node, Interval domain) : node_(std::move(node)), domain_(domain)
{
    validate(domain_);
    if (!node_) {
        throw ArgumentError("Field1D: null node");
    }
}

double Field1D::eval(double x) const
{
    if (!domain_.contains(x)) {
        throw DomainError("point x = " + format_real(x) + " outside [" + format_real(domain_.lo) + ", " +
                          format_real(domain_.hi) + "]");
    }
    return node_->value(x);
}

std::vector<double> Field1D::tabulate(std::span<const double> xs) const
{
    for (double x : xs) {
        if (!domain_.contains(x)) {
            (void)eval(x);
        }
    }
    std::vector<double> out(xs.size());
    node_->tabulate(xs, out);
    return out;
}

Field2D::Field2D() : Field2D(constant(0.0, kUnitSquare)) {}

Field2D::Field2D(std::shared_ptr<const Field2DNode> node, Rect domain) : node_(std::move(node)), domain_(domain)
{
    validate(domain_);
    if (!node_) {
        throw ArgumentError("Field2D: null node");
    }
}

double Field2D::eval(double x, double y) const
{
    if (!domain_.contains({x, y})) {
        throw DomainError("point (" + format_real(x) + ", " + format_real(y) + ") outside the field domain");
    }
    return node_->value(x, y);
}

std::vector<double> Field2D::tabulate(std::span<const double> xs, std::span<const double> ys) const
{
    for (double x : xs) {
        if (!domain_.x.contains(x)) {
            (void)eval(x, domain_.y.lo);
        }
    }
    for (double y : ys) {
        if (!domain_.y.contains(y)) {
            (void)eval(domain_.x.lo, y);
        }
    }
    std::vector<double> out(xs.size() * ys.size());
    node_->tabulate(xs, ys, out);
    return out;
}

namespace {

class Constant1DNode final : public Field1DNode {
public:
    explicit Constant1DNode(double v) : v_(v) {}
    double value(double) const override { return v_; }
    std::string_view kind() const override { return "constant"; }

private:
    double v_;
};

double horner(const std::vector<double>& c, double t) noexcept
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

class Polynomial1DNode final : public Field1DNode {
public:
    explicit Polynomial1DNode(std::vector<double> c) : c_(std::move(c)) {}
    double value(double x) const override { return horner(c_, x); }
    std::string_view kind() const override { return "polynomial"; }

private:
    std::vector<double> c_;
};

class ShenNode final : public Field1DNode {
public:
    explicit ShenNode(const ShenSeriesSpec& spec) : series_(spec) {}
    double value(double x) const override { return series_(x); }
    std::string_view kind() const override { return "weierstrass-shen"; }

private:
    ShenSeries series_;
};

class MWNode final : public Field1DNode {
public:
    MWNode(const MWSeriesSpec& spec, double x_max) : series_(spec, x_max) {}
    double value(double x) const override { return series_(x); }
    std::string_view kind() const override { return "weierstrass-mw"; }

private:
    MWSeries series_;
};

class Constant2DNode final : public Field2DNode {
public:
    explicit Constant2DNode(double v) : v_(v) {}
    double value(double, double) const override { return v_; }
    std::string_view kind() const override { return "constant"; }

private:
    double v_;
};

class Polynomial2DNode final : public Field2DNode {
public:
    explicit Polynomial2DNode(std::vector<std::vector<double>> c) : c_(std::move(c)) {}
    double value(double x, double y) const override
    {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * x + horner(*it, y);
        }
        return acc;
    }
    std::string_view kind() const override { return "polynomial"; }

private:
    std::vector<std::vector<double>> c_;
};

double trig_factor(TrigFactor f, double t) noexcept
{
    return f == TrigFactor::Sin ? std::sin(std::numbers::pi * t) : std::cos(std::numbers::pi * t);
}

class TrigNode final : public Field2DNode {
public:
    explicit TrigNode(std::vector<TrigTerm> terms) : terms_(std::move(terms)) {}
    double value(double x, double y) const override
    {
        double acc = 0.0;
        for (const auto& t : terms_) {
            acc += t.amplitude * trig_factor(t.fx, t.kx * x) * trig_factor(t.fy, t.ky * y);
        }
        return acc;
    }
    std::string_view kind() const override { return "trig"; }

private:
    std::vector<TrigTerm> terms_;
};

class LiftSumNode final : public Field2DNode {
public:
    explicit LiftSumNode(Field1D w) : w_(std::move(w)) {}
    double value(double x, double y) const override { return w_.node().value(x) + y; }
    std::string_view kind() const override { return "lift-sum"; }
    void tabulate(std::span<const double> xs, std::span<const double> ys, std::span<double> out) const override
    {
        std::vector<double> wx(xs.size());
        w_.node().tabulate(xs, wx);
        const std::size_t nx = xs.size();
        for (std::size_t j = 0; j < ys.size(); ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                out[j * nx + i] = wx[i] + ys[j];
            }
        }
    }

private:
    Field1D w_;
};

class AffineNode final : public Field2DNode {
public:
    AffineNode(std::vector<WeightedField> terms, double offset, std::string_view kind)
        : terms_(std::move(terms)), offset_(offset), kind_(kind)
    {
    }
    double value(double x, double y) const override
    {
        double acc = offset_;
        for (const auto& t : terms_) {
            acc += t.weight * t.field.node().value(x, y);
        }
        return acc;
    }
    std::string_view kind() const override { return kind_; }
    void tabulate(std::span<const double> xs, std::span<const double> ys, std::span<double> out) const override
    {
        std::fill(out.begin(), out.end(), offset_);
        std::vector<double> child(out.size());
        for (const auto& t : terms_) {
            t.field.node().tabulate(xs, ys, child);
            for (std::size_t k = 0; k < out.size(); ++k) {
                out[k] += t.weight * child[k];
            }
        }
    }

private:
    std::vector<WeightedField> terms_;
    double offset_;
    std::string_view kind_;
};

class TabulatedNode final : public Field2DNode {
public:
    TabulatedNode(GridSample grid, std::string kind) : grid_(std::move(grid)), kind_(std::move(kind)) {}
    double value(double x, double y) const override { return grid_.bilinear(x, y); }
    std::string_view kind() const override { return kind_; }

private:
    GridSample grid_;
    std::string kind_;
};

} // namespace

Field1D constant(double value, Interval domain)
{
    return {std::make_shared<Constant1DNode>(value), domain};
}

Field1D polynomial(std::vector<double> coeffs, Interval domain)
{
    if (coeffs.empty()) {
        coeffs.push_back(0.0);
    }
    return {std::make_shared<Polynomial1DNode>(std::move(coeffs)), domain};
}

Field1D shen_series(const ShenSeriesSpec& spec, Interval domain)
{
    return {std::make_shared<ShenNode>(spec), domain};
}

Field1D mw_series(const MWSeriesSpec& spec, Interval domain)
{
    validate(domain);
    const double x_max = std::max(std::abs(domain.lo), std::abs(domain.hi));
    return {std::make_shared<MWNode>(spec, x_max), domain};
}

Field2D constant(double value, Rect domain)
{
    return {std::make_shared<Constant2DNode>(value), domain};
}

Field2D polynomial(std::vector<std::vector<double>> coeffs, Rect domain)
{
    if (coeffs.empty()) {
        coeffs.push_back({0.0});
    }
    return {std::make_shared<Polynomial2DNode>(std::move(coeffs)), domain};
}

Field2D trig(std::vector<TrigTerm> terms, Rect domain)
{
    return {std::make_shared<TrigNode>(std::move(terms)), domain};
}

Field2D lift_sum(const Field1D& w, Interval y_domain)
{
    return {std::make_shared<LiftSumNode>(w), Rect{w.domain(), y_domain}};
}

Field2D affine_combination(std::vector<WeightedField> terms, double offset)
{
    if (terms.empty()) {
        throw ArgumentError("affine_combination needs at least one term");
    }
    const Rect domain = terms.front().field.domain();
    for (const auto& t : terms) {
        if (!(t.field.domain() == domain)) {
            throw ArgumentError("affine_combination: all terms must share one domain");
        }
        if (!std::isfinite(t.weight)) {
            throw ArgumentError("affine_combination: non-finite weight");
        }
    }
    return {std::make_shared<AffineNode>(std::move(terms), offset, "affine-combination"), domain};
}

Field2D constant_shift(const Field2D& f, double shift)
{
    return {std::make_shared<AffineNode>(std::vector<WeightedField>{{1.0, f}}, shift, "constant-shift"), f.domain()};
}

Field2D scaled(const Field2D& f, double weight)
{
    return affine_combination({{weight, f}});
}

Field2D difference(const Field2D& a, const Field2D& b)
{
    return affine_combination({{1.0, a}, {-1.0, b}});
}

Field2D tabulated(GridSample grid, std::string kind)
{
    if (grid.nx < 2 || grid.ny < 2 || grid.values.size() != grid.nx * grid.ny) {
        throw ArgumentError("tabulated: grid needs nx, ny >= 2 and nx * ny values");
    }
    const Rect domain = grid.domain;
    return {std::make_shared<TabulatedNode>(std::move(grid), std::move(kind)), domain};
}

} // namespace bifractal

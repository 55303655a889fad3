#include "bifractal/series.hpp"

#include "bifractal/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace bifractal {

namespace {

double frac(double t) noexcept { return t - std::floor(t); }

} // namespace

double wave_value(Wave w, double t) noexcept
{
    const double u = frac(t);
    switch (w) {
    case Wave::Cosine:
        return std::cos(2.0 * std::numbers::pi * u);
    case Wave::Triangle:
        return 1.0 - 4.0 * std::min(u, 1.0 - u);
    }
    return 0.0;
}

double wave_sup(Wave) noexcept { return 1.0; }

double wave_lipschitz(Wave w) noexcept
{
    return w == Wave::Cosine ? 2.0 * std::numbers::pi : 4.0;
}

std::string_view wave_name(Wave w) noexcept { return w == Wave::Cosine ? "cos" : "triangle"; }

Wave parse_wave(std::string_view name)
{
    if (name == "cos" || name == "cosine") {
        return Wave::Cosine;
    }
    if (name == "triangle") {
        return Wave::Triangle;
    }
    throw ValidationError("phi", "unknown base wave '" + std::string(name) + "' (expected cos or triangle)");
}

ShenSeries::ShenSeries(const ShenSeriesSpec& spec) : spec_(spec)
{
    if (!(spec.lambda > 0.0 && spec.lambda < 1.0)) {
        throw ValidationError("lambda", "must lie in (0, 1), got " + std::to_string(spec.lambda));
    }
    if (spec.b < 2) {
        throw ValidationError("b", "must be an integer >= 2, got " + std::to_string(spec.b));
    }
    if (!(spec.tol > 0.0)) {
        throw ValidationError("tol", "must be positive");
    }
    // Smallest n0 >= 1 with lambda^n0 sup|phi| / (1 - lambda) <= tol.
    const double scale = wave_sup(spec.phi) / (1.0 - spec.lambda);
    double power = spec.lambda;
    terms_ = 1;
    while (power * scale > spec.tol) {
        power *= spec.lambda;
        ++terms_;
    }
}

double ShenSeries::partial_sum(double x, int from, int to) const noexcept
{
    // t_n = frac(b^n x) by repeated frac(b t); exact in binary for b a power of two.
    const auto b = static_cast<double>(spec_.b);
    double t = frac(x);
    double weight = 1.0;
    double sum = 0.0;
    for (int n = 0; n < to; ++n) {
        if (n >= from) {
            sum += weight * wave_value(spec_.phi, t);
        }
        t = frac(b * t);
        weight *= spec_.lambda;
    }
    return sum;
}

double ShenSeries::tail_bound() const noexcept
{
    return std::pow(spec_.lambda, terms_) * wave_sup(spec_.phi) / (1.0 - spec_.lambda);
}

double ShenSeries::graph_dimension() const noexcept
{
    return 2.0 + std::log(spec_.lambda) / std::log(static_cast<double>(spec_.b));
}

MWSeries::MWSeries(const MWSeriesSpec& spec, double x_max) : spec_(spec), x_max_(std::abs(x_max))
{
    if (!(spec.alpha_exp > 0.0 && spec.alpha_exp < 1.0)) {
        throw ValidationError("alpha", "must lie in (0, 1), got " + std::to_string(spec.alpha_exp));
    }
    if (!(spec.b > 1.0)) {
        throw ValidationError("b", "must exceed 1, got " + std::to_string(spec.b));
    }
    if (!(spec.tol > 0.0)) {
        throw ValidationError("tol", "must be positive");
    }
    while (positive_tail_bound() > 0.5 * spec.tol) {
        ++n_hi_;
    }
    if (x_max_ > 0.0) {
        while (negative_tail_bound() > 0.5 * spec.tol) {
            --n_lo_;
        }
    }
    const auto count = static_cast<std::size_t>(n_hi_ - n_lo_ + 1);
    theta_.assign(count, 0.0);
    if (spec.phases == PhaseRule::Random) {
        std::mt19937_64 gen(spec.seed);
        for (auto& th : theta_) {
            th = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        }
    }
}

double MWSeries::positive_tail_bound() const noexcept
{
    // sum_{n > n_hi} 2 sup|phi| b^{-alpha n}
    const double r = std::pow(spec_.b, -spec_.alpha_exp);
    return 2.0 * wave_sup(spec_.phi) * std::pow(r, n_hi_ + 1) / (1.0 - r);
}

double MWSeries::negative_tail_bound() const noexcept
{
    // sum_{n < n_lo} Lip(phi) x_max b^{(1 - alpha) n}
    const double r = std::pow(spec_.b, -(1.0 - spec_.alpha_exp));
    return wave_lipschitz(spec_.phi) * x_max_ * std::pow(r, 1 - n_lo_) / (1.0 - r);
}

double MWSeries::operator()(double x) const noexcept
{
    double sum = 0.0;
    for (int n = n_lo_; n <= n_hi_; ++n) {
        const double th = theta_[static_cast<std::size_t>(n - n_lo_)];
        const double bn = std::pow(spec_.b, n);
        const double weight = std::pow(spec_.b, -spec_.alpha_exp * n);
        sum += weight * (wave_value(spec_.phi, bn * x + th) - wave_value(spec_.phi, th));
    }
    return sum;
}

} // namespace bifractal

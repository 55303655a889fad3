#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace bifractal {

/// 1-periodic base waves used by the Weierstrass-type generators.
enum class Wave {
    Cosine,   ///< cos(2 pi t)
    Triangle, ///< 1 - 4 dist(t, Z); same range and phase as Cosine
};

[[nodiscard]] double wave_value(Wave w, double t) noexcept;
[[nodiscard]] double wave_sup(Wave w) noexcept;
[[nodiscard]] double wave_lipschitz(Wave w) noexcept;
[[nodiscard]] std::string_view wave_name(Wave w) noexcept;
/// Accepts "cos"/"cosine" and "triangle"; throws ValidationError on anything else.
[[nodiscard]] Wave parse_wave(std::string_view name);

struct ShenSeriesSpec {
    double lambda = 0.5;
    int b = 2;
    Wave phi = Wave::Cosine;
    double tol = 1e-10;
};

/// f(x) = sum_{n >= 0} lambda^n phi(b^n x), truncated once the geometric tail
/// lambda^n0 sup|phi| / (1 - lambda) drops to `tol`.
class ShenSeries {
public:
    explicit ShenSeries(const ShenSeriesSpec& spec);

    [[nodiscard]] double operator()(double x) const noexcept { return partial_sum(x, 0, terms_); }

    /// Sum of terms n in [from, to). Terms past `terms()` are the omitted tail.
    [[nodiscard]] double partial_sum(double x, int from, int to) const noexcept;
    [[nodiscard]] int terms() const noexcept { return terms_; }
    [[nodiscard]] double tail_bound() const noexcept;
    /// Box dimension of the graph, 2 + log(lambda) / log(b). Valid for lambda b > 1.
    [[nodiscard]] double graph_dimension() const noexcept;
    [[nodiscard]] const ShenSeriesSpec& spec() const noexcept { return spec_; }

private:
    ShenSeriesSpec spec_;
    int terms_ = 0;
};

enum class PhaseRule { Zero, Random };

struct MWSeriesSpec {
    double alpha_exp = 0.5;
    double b = 2.0;
    Wave phi = Wave::Cosine;
    PhaseRule phases = PhaseRule::Zero;
    std::uint64_t seed = 0;
    double tol = 1e-10;
};

/// W(x) = sum_{n in Z} b^{-alpha n} [phi(b^n x + theta_n) - phi(theta_n)], truncated
/// two-sidedly so that each tail is at most tol / 2 for |x| <= x_max.
class MWSeries {
public:
    MWSeries(const MWSeriesSpec& spec, double x_max);

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] int lowest_index() const noexcept { return n_lo_; }
    [[nodiscard]] int highest_index() const noexcept { return n_hi_; }
    [[nodiscard]] double phase(int n) const noexcept { return theta_[static_cast<std::size_t>(n - n_lo_)]; }
    [[nodiscard]] double positive_tail_bound() const noexcept;
    [[nodiscard]] double negative_tail_bound() const noexcept;
    [[nodiscard]] const MWSeriesSpec& spec() const noexcept { return spec_; }

private:
    MWSeriesSpec spec_;
    double x_max_;
    int n_lo_ = 0;
    int n_hi_ = 0;
    std::vector<double> theta_;
};

} // namespace bifractal

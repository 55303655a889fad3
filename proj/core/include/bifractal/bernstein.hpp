#pragma once

#include "bifractal/field.hpp"

#include <span>
#include <vector>

namespace bifractal {

inline constexpr int kMaxBernsteinDegree = 512;

struct BernsteinDegrees {
    int m = 1;
    int n = 1;
};

/// Throws ArgumentError unless 1 <= m, n <= kMaxBernsteinDegree.
void validate(const BernsteinDegrees& deg);

/// Values b_{0..degree}(t) of the degree-`degree` Bernstein basis at t in [0, 1],
/// built by the de Casteljau recurrence (no binomial coefficients).
void bernstein_basis(int degree, double t, std::span<double> out);
[[nodiscard]] std::vector<double> bernstein_basis(int degree, double t);

/// B_{m,n}(f): samples f on the (m+1)(n+1) lattice and evaluates the
/// normalized tensor-product polynomial.
[[nodiscard]] Field2D bernstein_apply(const Field2D& f, BernsteinDegrees deg);

/// Lattice values f(a + i(b-a)/m, c + j(d-c)/n), row-major over j.
[[nodiscard]] GridSample bernstein_lattice(const Field2D& f, BernsteinDegrees deg);

/// max over probes of ||B f|| / ||f||. The denominator also covers the
/// lattice nodes, so the ratio stays within the operator norm 1.
[[nodiscard]] double bernstein_norm_probe(std::span<const Field2D> probes, BernsteinDegrees deg,
                                          std::size_t resolution = 257);

} // namespace bifractal

#pragma once

#include "bifractal/bernstein.hpp"
#include "bifractal/field.hpp"
#include "bifractal/fif.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bifractal {

/// Which set-valued operator is being sampled:
///  W: f -> { F^alpha_{m,n} f : (m, n) }        fixed alpha and net
///  T: f -> { F^alpha_{m,n} f : ||alpha|| <= q } fixed net and degrees
///  V: f -> { F^alpha_{m,n} f : nets }          fixed alpha and degrees
enum class Family { W, T, V };

[[nodiscard]] std::string_view family_name(Family f) noexcept;

/// One element of a finite section of a family.
struct FamilyMember {
    std::string label;
    Net net;
    BernsteinDegrees degrees;
    Field2D alpha;
};

struct FamilySelector {
    Family family = Family::W;
    std::vector<FamilyMember> members;
    double q = 0.0; ///< sup of ||alpha|| over the members
    int refinement = 16;
    double tol = 1e-10;
};

/// W section: all (m, n) in [1, degree_cap]^2.
[[nodiscard]] FamilySelector w_family(const Net& net, const Field2D& alpha, int degree_cap, int refinement = 16,
                                      double tol = 1e-10);
/// T section: one member per alpha probe; every probe must satisfy ||alpha|| <= q < 1.
[[nodiscard]] FamilySelector t_family(const Net& net, BernsteinDegrees deg, std::vector<Field2D> alphas, double q,
                                      int refinement = 16, double tol = 1e-10);
/// V section: uniform nets with the given cell counts per axis.
[[nodiscard]] FamilySelector v_family(const Rect& domain, std::span<const int> net_sizes, const Field2D& alpha,
                                      BernsteinDegrees deg, int refinement = 16, double tol = 1e-10);

struct ProbeRecord {
    std::string label;
    double observed = 0.0;
    double bound = 0.0;
    double margin = 0.0; ///< bound - observed
};

struct PropertyReport {
    std::string property;
    std::string evidence = "finite-section evidence";
    std::size_t probes = 0;
    double worst_margin = 0.0;
    double num_tol = 0.0;
    bool pass = true;
    /// Property-specific headline: tightest ratio, bound value, ...
    double headline = 0.0;
    std::vector<ProbeRecord> records;

    void add(ProbeRecord r);
    void finish();
};

/// lambda F(f) against F(lambda f) per member and lambda, plus F(0) = 0.
[[nodiscard]] PropertyReport check_process(const FamilySelector& sel, const Field2D& f,
                                           std::span<const double> lambdas);

/// ||F f - F g|| <= (1 + q) / (1 - q) ||f - g|| per member. Headline: largest ratio.
[[nodiscard]] PropertyReport check_lipschitz(const FamilySelector& sel, const Field2D& f, const Field2D& g);

/// sup_f inf_alpha ||F_alpha f|| / ||f|| against 1 + q/(1-q) * 2, where 2
/// bounds ||Id - B_{m,n}||. `alphas` must contain the zero field. Headline: bound.
[[nodiscard]] PropertyReport norm_bound_check(const Net& net, BernsteinDegrees deg, double q,
                                              std::span<const Field2D> probes, std::span<const Field2D> alphas,
                                              int refinement = 16, double tol = 1e-10);

/// f_k = f + w / k, k = 1..K: ||F f_k - F f|| <= L ||f_k - f|| and the
/// differences do not increase in k.
[[nodiscard]] PropertyReport continuity_probe(const FamilySelector& sel, const Field2D& f, const Field2D& w, int K);

/// Sup distance between the (1,1) and (deg, deg) members on the same grid.
[[nodiscard]] double multivalued_witness(const Field2D& f, const Field2D& alpha, const Net& net, int degree,
                                         int refinement = 16, double tol = 1e-10);

} // namespace bifractal

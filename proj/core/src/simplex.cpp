#include "bifractal/simplex.hpp"

#include "bifractal/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace bifractal {

namespace {

// Dense tableau over columns [0, cols) originals, [cols, cols + rows)
// artificials, plus the right-hand side. Row `rows` holds reduced costs.
class Tableau {
public:
    Tableau(const EqualityLp& lp, double tol)
        : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows + 1), tol_(tol), t_((m_ + 1) * width_, 0.0),
          basis_(m_), flipped_(m_, false), a0_(m_ * n_), b0_(m_)
    {
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
            flipped_[i] = sign < 0.0;
            for (std::size_t j = 0; j < n_; ++j) {
                at(i, j) = sign * lp.A[i * n_ + j];
            }
            at(i, n_ + i) = 1.0;
            rhs(i) = sign * lp.b[i];
            basis_[i] = n_ + i;
            for (std::size_t j = 0; j < n_; ++j) {
                a0_[i * n_ + j] = at(i, j);
            }
            b0_[i] = rhs(i);
        }
    }

    double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
    double& rhs(std::size_t i) { return t_[i * width_ + width_ - 1]; }
    double& cost(std::size_t j) { return at(m_, j); }

    // Reduced costs for the cost vector d (over all columns) and the current basis.
    void price(const std::vector<double>& d)
    {
        d_ = d;
        for (std::size_t j = 0; j < width_; ++j) {
            double r = j + 1 < width_ ? d[j] : 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                r -= d[basis_[i]] * at(i, j);
            }
            at(m_, j) = r;
        }
    }

    void pivot(std::size_t r, std::size_t c)
    {
        const double p = at(r, c);
        for (std::size_t j = 0; j < width_; ++j) {
            at(r, j) /= p;
        }
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) {
                continue;
            }
            const double factor = at(i, c);
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < width_; ++j) {
                at(i, j) -= factor * at(r, j);
            }
            at(i, c) = 0.0;
        }
        basis_[r] = c;
        ++pivots_;
    }

    // Rebuilds every row from the original data for the current basis, then
    // reprices. Incremental pivots drift badly on long degenerate runs.
    void reinvert()
    {
        Eigen::MatrixXd B(m_, m_);
        for (std::size_t k = 0; k < m_; ++k) {
            const std::size_t col = basis_[k];
            for (std::size_t i = 0; i < m_; ++i) {
                B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    col < n_ ? a0_[i * n_ + col] : (col - n_ == i ? 1.0 : 0.0);
            }
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        Eigen::MatrixXd full(m_, width_);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto r = static_cast<Eigen::Index>(i);
            for (std::size_t j = 0; j < n_; ++j) {
                full(r, static_cast<Eigen::Index>(j)) = a0_[i * n_ + j];
            }
            for (std::size_t j = 0; j < m_; ++j) {
                full(r, static_cast<Eigen::Index>(n_ + j)) = i == j ? 1.0 : 0.0;
            }
            full(r, static_cast<Eigen::Index>(width_ - 1)) = b0_[i];
        }
        const Eigen::MatrixXd solved = lu.solve(full);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < width_; ++j) {
                at(i, j) = solved(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
            at(i, basis_[i]) = 1.0;
            // clean primal values: tiny negatives are drift
            if (rhs(i) < 0.0 && rhs(i) > -1e-9) {
                rhs(i) = 0.0;
            }
        }
        price(d_);
    }

    // Bland's rule over columns [0, limit). Returns false when unbounded.
    // Reinverts every kRefresh pivots and once more before declaring optimality.
    bool run(std::size_t limit)
    {
        constexpr std::size_t kRefresh = 32;
        std::size_t since = 0;
        bool fresh = false;
        for (;;) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (cost(j) < -tol_) {
                    enter = j;
                    break;
                }
            }
            if (enter == limit) {
                if (fresh) {
                    return true;
                }
                reinvert();
                fresh = true;
                since = 0;
                continue;
            }
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = at(i, enter);
                if (a > tol_) {
                    const double ratio = rhs(i) / a;
                    if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m_) {
                return false;
            }
            pivot(leave, enter);
            fresh = false;
            if (++since == kRefresh) {
                reinvert();
                since = 0;
            }
        }
    }

    // After phase 1: pivot basic artificials onto original columns where possible.
    void drive_out_artificials()
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                continue;
            }
            std::size_t best = n_;
            double mag = tol_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::abs(at(i, j)) > mag) {
                    mag = std::abs(at(i, j));
                    best = j;
                }
            }
            if (best < n_) {
                pivot(i, best);
            }
        }
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t width_;
    double tol_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
    std::vector<bool> flipped_;
    std::vector<double> a0_; ///< sign-adjusted original columns
    std::vector<double> b0_;
    std::vector<double> d_;  ///< current phase's costs
    std::size_t pivots_ = 0;
};

} // namespace

LpResult solve_equality_lp(const EqualityLp& lp, double pivot_tol)
{
    if (lp.A.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || lp.c.size() != lp.cols) {
        throw ArgumentError("solve_equality_lp: inconsistent dimensions");
    }
    Tableau t(lp, pivot_tol);
    const std::size_t m = lp.rows;
    const std::size_t n = lp.cols;

    std::vector<double> d(n + m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        d[n + i] = 1.0;
    }
    t.price(d);
    (void)t.run(n + m);

    LpResult result;
    double scale = 1.0;
    for (double v : lp.b) {
        scale = std::max(scale, std::abs(v));
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis_[i] >= n) {
            infeasibility += t.rhs(i);
        }
    }
    if (infeasibility > 1e-9 * scale) {
        result.status = LpStatus::Infeasible;
        result.pivots = t.pivots_;
        return result;
    }
    t.drive_out_artificials();

    std::fill(d.begin(), d.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = lp.c[j];
    }
    t.price(d);
    const bool bounded = t.run(n);
    result.pivots = t.pivots_;
    if (!bounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.y.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis_[i] < n) {
            result.y[t.basis_[i]] = t.rhs(i);
        }
    }
    // Artificial column i is e_i of the (possibly flipped) system, with cost 0,
    // so its reduced cost is -pi_i in that system.
    result.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = t.cost(n + i);
        result.duals[i] = t.flipped_[i] ? r : -r;
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        obj += lp.c[j] * result.y[j];
    }
    result.objective = obj;
    return result;
}

} // namespace bifractal

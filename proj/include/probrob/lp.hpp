#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "probrob/errors.hpp"

namespace probrob::lp {

enum class Status { Optimal, Infeasible, Unbounded, Indeterminate };

struct Result {
    Status status = Status::Indeterminate;
    Eigen::VectorXd x;      // witness, valid when status == Optimal
    double objective = 0.0; // c.dot(x), valid when status == Optimal
};

namespace detail {

inline constexpr double kCostTol = 1e-9;
inline constexpr double kPivotTol = 1e-9;
inline constexpr double kFeasTol = 1e-9;
inline constexpr int kMaxPivots = 50000;

// One pass of the simplex loop over an (m+1) x ncols tableau whose last row
// is the reduced-cost row and last column is the rhs. Bland's rule on both
// the entering and leaving choices, so the loop cannot cycle.
// `allowed_cols` bounds the entering-variable search.
inline Status pivot_loop(Eigen::MatrixXd& t, std::vector<int>& basis, int allowed_cols) {
    const int m = static_cast<int>(basis.size());
    const int rhs = static_cast<int>(t.cols()) - 1;
    for (int iter = 0; iter < kMaxPivots; ++iter) {
        int enter = -1;
        for (int j = 0; j < allowed_cols; ++j) {
            if (t(m, j) < -kCostTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            return Status::Optimal;
        }
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) > kPivotTol) {
                double ratio = std::max(t(i, rhs), 0.0) / t(i, enter);
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) {
            return Status::Unbounded;
        }
        t.row(leave) /= t(leave, enter);
        for (int i = 0; i <= m; ++i) {
            if (i == leave) {
                continue;
            }
            double factor = t(i, enter);
            if (factor != 0.0) {
                t.row(i) -= factor * t.row(leave);
            }
        }
        basis[leave] = enter;
        for (int i = 0; i < m; ++i) {
            if (t(i, rhs) < 0.0 && t(i, rhs) > -1e-12) {
                t(i, rhs) = 0.0;
            }
        }
    }
    return Status::Indeterminate;
}

} // namespace detail

// Maximize c.x subject to A x <= b over free x, via a dense two-phase
// simplex (x split into positive parts, one slack per row, artificial basis).
// Deterministic: Bland's rule everywhere.
inline Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || c.size() != n) {
        throw DimensionError("lp::maximize: shape mismatch");
    }

    Result res;
    if (m == 0) {
        // No constraints: optimal only for a zero objective.
        if (c.isZero(0.0)) {
            res.status = Status::Optimal;
            res.x = Eigen::VectorXd::Zero(n);
            res.objective = 0.0;
        } else {
            res.status = Status::Unbounded;
        }
        return res;
    }

    // Columns: u(n) | v(n) | slack(m) | artificial(m) | rhs.
    const int n_struct = 2 * n + m;
    const int ncols = n_struct + m + 1;
    const int rhs = ncols - 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, ncols);
    for (int i = 0; i < m; ++i) {
        double sign = b[i] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            t(i, j) = sign * A(i, j);
            t(i, n + j) = -sign * A(i, j);
        }
        t(i, 2 * n + i) = sign;
        t(i, n_struct + i) = 1.0;
        t(i, rhs) = sign * b[i];
    }

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        basis[i] = n_struct + i;
    }

    // Phase 1: minimize the artificial sum. Reduced costs start as the
    // negated column sums (artificial columns cancel to zero).
    for (int j = 0; j < ncols; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            s += t(i, j);
        }
        t(m, j) = (j >= n_struct && j < n_struct + m ? 1.0 : 0.0) - s;
    }

    Status st = detail::pivot_loop(t, basis, n_struct + m);
    if (st != Status::Optimal) {
        res.status = Status::Indeterminate;
        return res;
    }
    double phase1 = -t(m, rhs);
    if (phase1 > detail::kFeasTol) {
        res.status = Status::Infeasible;
        return res;
    }

    // Drive leftover artificials out of the basis; rows that cannot be
    // pivoted are redundant and get dropped.
    std::vector<int> keep_rows;
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n_struct) {
            keep_rows.push_back(i);
            continue;
        }
        int pivot_col = -1;
        for (int j = 0; j < n_struct; ++j) {
            if (std::abs(t(i, j)) > detail::kPivotTol) {
                pivot_col = j;
                break;
            }
        }
        if (pivot_col < 0) {
            continue; // redundant row
        }
        t.row(i) /= t(i, pivot_col);
        for (int k = 0; k <= m; ++k) {
            if (k == i) {
                continue;
            }
            double factor = t(k, pivot_col);
            if (factor != 0.0) {
                t.row(k) -= factor * t.row(i);
            }
        }
        basis[i] = pivot_col;
        keep_rows.push_back(i);
    }

    const int m2 = static_cast<int>(keep_rows.size());
    Eigen::MatrixXd t2(m2 + 1, ncols);
    std::vector<int> basis2(m2);
    for (int i = 0; i < m2; ++i) {
        t2.row(i) = t.row(keep_rows[i]);
        basis2[i] = basis[keep_rows[i]];
    }

    // Phase 2: minimize -c.(u - v).
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
    for (int j = 0; j < n; ++j) {
        cost[j] = -c[j];
        cost[n + j] = c[j];
    }
    for (int j = 0; j < ncols; ++j) {
        double s = cost[j];
        for (int i = 0; i < m2; ++i) {
            s -= cost[basis2[i]] * t2(i, j);
        }
        t2(m2, j) = s;
    }
    t2(m2, rhs) = 0.0;
    for (int i = 0; i < m2; ++i) {
        t2(m2, rhs) -= cost[basis2[i]] * t2(i, rhs);
    }

    st = detail::pivot_loop(t2, basis2, n_struct);
    if (st == Status::Indeterminate) {
        res.status = Status::Indeterminate;
        return res;
    }
    if (st == Status::Unbounded) {
        res.status = Status::Unbounded;
        return res;
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_struct);
    for (int i = 0; i < m2; ++i) {
        if (basis2[i] < n_struct) {
            y[basis2[i]] = t2(i, rhs);
        }
    }
    res.status = Status::Optimal;
    res.x = y.head(n) - y.segment(n, n);
    res.objective = c.dot(res.x);
    return res;
}

} // namespace probrob::lp

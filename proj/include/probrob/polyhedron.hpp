#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "probrob/box.hpp"
#include "probrob/errors.hpp"
#include "probrob/lp.hpp"

namespace probrob {

// Half-space coeffs.z <= bound, or coeffs.z < bound when strict.
struct LinearConstraint {
    Eigen::RowVectorXd coeffs;
    double bound = 0.0;
    bool strict = false;

    bool satisfied_by(const Eigen::VectorXd& z) const {
        double v = coeffs.dot(z);
        return strict ? v < bound : v <= bound;
    }
};

// Convex polyhedron in H-representation. Membership is exactly the
// conjunction of the constraints; no implicit normalization.
class Polyhedron {
  public:
    explicit Polyhedron(int dim) : dim_(dim) {
        if (dim <= 0) {
            throw DimensionError("polyhedron: dimension must be positive");
        }
    }

    Polyhedron(int dim, std::vector<LinearConstraint> constraints)
        : dim_(dim), constraints_(std::move(constraints)) {
        if (dim <= 0) {
            throw DimensionError("polyhedron: dimension must be positive");
        }
        for (const auto& c : constraints_) {
            if (c.coeffs.size() != dim_) {
                throw DimensionError("polyhedron: constraint length != dim");
            }
        }
    }

    static Polyhedron full_space(int dim) { return Polyhedron(dim); }

    static Polyhedron from_box(const Box& box) {
        Polyhedron p(box.dim());
        for (int i = 0; i < box.dim(); ++i) {
            Eigen::RowVectorXd up = Eigen::RowVectorXd::Zero(box.dim());
            up[i] = 1.0;
            p.add({up, box.hi[i], false});
            Eigen::RowVectorXd down = Eigen::RowVectorXd::Zero(box.dim());
            down[i] = -1.0;
            p.add({down, -box.lo[i], false});
        }
        return p;
    }

    int dim() const { return dim_; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }

    void add(LinearConstraint c) {
        if (c.coeffs.size() != dim_) {
            throw DimensionError("polyhedron: constraint length != dim");
        }
        constraints_.push_back(std::move(c));
    }

    bool contains(const Eigen::VectorXd& z) const {
        if (z.size() != dim_) {
            throw DimensionError("polyhedron contains: point dimension mismatch");
        }
        for (const auto& c : constraints_) {
            if (!c.satisfied_by(z)) {
                return false;
            }
        }
        return true;
    }

  private:
    int dim_;
    std::vector<LinearConstraint> constraints_;
};

namespace detail {

// Strict feasibility margin: a strict constraint satisfied only at equality
// counts as infeasible.
inline constexpr double kStrictTol = 1e-9;

// Interior-slack LP over variables (z, t): strict rows get +t, and t is
// boxed into [0, 1]. Optimal t is the best joint slack of the strict rows.
inline lp::Result interior_slack_lp(const Polyhedron& p) {
    const int n = p.dim();
    const int m = static_cast<int>(p.constraints().size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 2, n + 1);
    Eigen::VectorXd b(m + 2);
    for (int i = 0; i < m; ++i) {
        const auto& c = p.constraints()[i];
        A.row(i).head(n) = c.coeffs;
        A(i, n) = c.strict ? 1.0 : 0.0;
        b[i] = c.bound;
    }
    A(m, n) = 1.0;
    b[m] = 1.0;
    A(m + 1, n) = -1.0;
    b[m + 1] = 0.0;
    Eigen::VectorXd obj = Eigen::VectorXd::Zero(n + 1);
    obj[n] = 1.0;
    return lp::maximize(A, b, obj);
}

} // namespace detail

// Emptiness check by LP. Never guesses: an LP that fails to resolve raises
// LpIndeterminateError.
inline bool is_feasible(const Polyhedron& p) {
    lp::Result r = detail::interior_slack_lp(p);
    switch (r.status) {
    case lp::Status::Optimal:
        return r.objective > detail::kStrictTol;
    case lp::Status::Infeasible:
        return false;
    default:
        throw LpIndeterminateError("feasibility LP did not resolve to optimal/infeasible");
    }
}

// Interior witness from the slack LP, when one exists.
inline std::optional<Eigen::VectorXd> feasible_point(const Polyhedron& p) {
    lp::Result r = detail::interior_slack_lp(p);
    if (r.status == lp::Status::Optimal && r.objective > detail::kStrictTol) {
        return r.x.head(p.dim()).eval();
    }
    if (r.status == lp::Status::Optimal || r.status == lp::Status::Infeasible) {
        return std::nullopt;
    }
    throw LpIndeterminateError("feasibility LP did not resolve to optimal/infeasible");
}

// Exact preimage {z : Wz + b in p}: every constraint (a, c) maps to
// (a W, c - a.b) with strictness preserved.
inline Polyhedron affine_preimage(const Polyhedron& p, const Eigen::MatrixXd& W,
                                  const Eigen::VectorXd& b) {
    if (p.dim() != W.rows() || W.rows() != b.size()) {
        throw DimensionError("affine_preimage: map shape does not match polyhedron");
    }
    Polyhedron out(static_cast<int>(W.cols()));
    for (const auto& c : p.constraints()) {
        LinearConstraint mapped;
        mapped.coeffs = c.coeffs * W;
        mapped.bound = c.bound - c.coeffs.dot(b);
        mapped.strict = c.strict;
        out.add(std::move(mapped));
    }
    return out;
}

// Meet: concatenated constraint lists. No redundancy elimination.
inline Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) {
        throw DimensionError("intersect: dimension mismatch");
    }
    std::vector<LinearConstraint> cs = p.constraints();
    cs.insert(cs.end(), q.constraints().begin(), q.constraints().end());
    return Polyhedron(p.dim(), std::move(cs));
}

// Per-coordinate extent of a polyhedron; entries may be +-infinity for
// unbounded directions. `empty` is set when the polyhedron closure is empty.
struct Extents {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    bool empty = false;

    static Extents empty_extents(int dim) {
        Extents e;
        e.lo = Eigen::VectorXd::Zero(dim);
        e.hi = Eigen::VectorXd::Zero(dim);
        e.empty = true;
        return e;
    }
};

inline Extents extents(const Polyhedron& p) {
    const int n = p.dim();
    const int m = static_cast<int>(p.constraints().size());
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        A.row(i) = p.constraints()[i].coeffs;
        b[i] = p.constraints()[i].bound;
    }
    Extents e;
    e.lo = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
    e.hi = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd obj = Eigen::VectorXd::Zero(n);
        obj[i] = 1.0;
        lp::Result up = lp::maximize(A, b, obj);
        if (up.status == lp::Status::Infeasible) {
            return Extents::empty_extents(n);
        }
        if (up.status == lp::Status::Optimal) {
            e.hi[i] = up.objective;
        } else if (up.status != lp::Status::Unbounded) {
            throw LpIndeterminateError("extent LP did not resolve");
        }
        obj[i] = -1.0;
        lp::Result down = lp::maximize(A, b, obj);
        if (down.status == lp::Status::Infeasible) {
            return Extents::empty_extents(n);
        }
        if (down.status == lp::Status::Optimal) {
            e.lo[i] = -down.objective;
        } else if (down.status != lp::Status::Unbounded) {
            throw LpIndeterminateError("extent LP did not resolve");
        }
    }
    return e;
}

// Tight axis-aligned box around p intersected with `domain`, or nullopt when
// that intersection is empty. Result is clamped into the domain.
inline std::optional<Box> bounding_box(const Polyhedron& p, const Box& domain) {
    if (p.dim() != domain.dim()) {
        throw DimensionError("bounding_box: domain dimension mismatch");
    }
    Polyhedron q = intersect(p, Polyhedron::from_box(domain));
    Extents e = extents(q);
    if (e.empty) {
        return std::nullopt;
    }
    Eigen::VectorXd lo = e.lo.cwiseMax(domain.lo).cwiseMin(domain.hi);
    Eigen::VectorXd hi = e.hi.cwiseMin(domain.hi).cwiseMax(lo);
    return Box(std::move(lo), std::move(hi));
}

} // namespace probrob

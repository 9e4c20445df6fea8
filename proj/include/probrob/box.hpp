#pragma once

#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "probrob/errors.hpp"

namespace probrob {

// Finite axis-aligned box [lo_i, hi_i] per coordinate.
struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    Box() = default;

    Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size()) {
            throw DimensionError("box: lo/hi length mismatch");
        }
        for (Eigen::Index i = 0; i < lo.size(); ++i) {
            if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
                throw ValidationError("box: bounds must be finite");
            }
            if (lo[i] > hi[i]) {
                std::ostringstream oss;
                oss << "box: lo > hi at coordinate " << i;
                throw ValidationError(oss.str());
            }
        }
    }

    int dim() const { return static_cast<int>(lo.size()); }

    double volume() const {
        double v = 1.0;
        for (Eigen::Index i = 0; i < lo.size(); ++i) {
            v *= hi[i] - lo[i];
        }
        return v;
    }

    bool contains(const Eigen::VectorXd& x) const {
        if (x.size() != lo.size()) {
            return false;
        }
        for (Eigen::Index i = 0; i < lo.size(); ++i) {
            if (x[i] < lo[i] || x[i] > hi[i]) {
                return false;
            }
        }
        return true;
    }

    // Intersection; empty optional when the boxes are disjoint.
    std::optional<Box> intersect(const Box& other) const {
        if (other.dim() != dim()) {
            throw DimensionError("box intersect: dimension mismatch");
        }
        Eigen::VectorXd l = lo.cwiseMax(other.lo);
        Eigen::VectorXd h = hi.cwiseMin(other.hi);
        for (Eigen::Index i = 0; i < l.size(); ++i) {
            if (l[i] > h[i]) {
                return std::nullopt;
            }
        }
        return Box(std::move(l), std::move(h));
    }

    // Concatenation: the box over (x, y) with x in `a`, y in `b`.
    static Box concat(const Box& a, const Box& b) {
        Eigen::VectorXd l(a.dim() + b.dim());
        Eigen::VectorXd h(a.dim() + b.dim());
        l << a.lo, b.lo;
        h << a.hi, b.hi;
        return Box(std::move(l), std::move(h));
    }
};

// The pair-space box: domain x domain over (x, x').
inline Box pair_box(const Box& domain) { return Box::concat(domain, domain); }

} // namespace probrob

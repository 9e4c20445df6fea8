#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "probrob/errors.hpp"
#include "probrob/polyhedron.hpp"

namespace probrob {

// Bounded powerset of polyhedra. Concretization is the union of the members;
// the member order is part of the value (it fixes sampling ownership).
class PolySet {
  public:
    PolySet(int dim, std::size_t budget) : dim_(dim), budget_(budget) {
        if (budget == 0) {
            throw ValidationError("polyset: budget must be >= 1");
        }
    }

    PolySet(int dim, std::size_t budget, std::vector<Polyhedron> polys)
        : dim_(dim), budget_(budget), polys_(std::move(polys)) {
        if (budget == 0) {
            throw ValidationError("polyset: budget must be >= 1");
        }
        for (const auto& p : polys_) {
            if (p.dim() != dim_) {
                throw DimensionError("polyset: member dimension mismatch");
            }
        }
    }

    int dim() const { return dim_; }
    std::size_t budget() const { return budget_; }
    const std::vector<Polyhedron>& polys() const { return polys_; }
    std::size_t size() const { return polys_.size(); }
    bool empty() const { return polys_.empty(); }

    void push(Polyhedron p) {
        if (p.dim() != dim_) {
            throw DimensionError("polyset: member dimension mismatch");
        }
        polys_.push_back(std::move(p));
    }

    // Membership in the union.
    bool contains(const Eigen::VectorXd& z) const {
        for (const auto& p : polys_) {
            if (p.contains(z)) {
                return true;
            }
        }
        return false;
    }

    // Canonical owner: index of the first member containing z, or -1.
    int owner(const Eigen::VectorXd& z) const {
        for (std::size_t i = 0; i < polys_.size(); ++i) {
            if (polys_[i].contains(z)) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }

  private:
    int dim_;
    std::size_t budget_;
    std::vector<Polyhedron> polys_;
};

namespace detail {

// Box-volume key used to rank candidate merges: fewer unbounded sides wins,
// then smaller finite volume, then lower pair index.
struct ExtentVolume {
    int infinite_sides = 0;
    double finite_volume = 1.0;

    bool operator<(const ExtentVolume& o) const {
        if (infinite_sides != o.infinite_sides) {
            return infinite_sides < o.infinite_sides;
        }
        return finite_volume < o.finite_volume;
    }
};

inline ExtentVolume extent_volume(const Extents& e) {
    ExtentVolume v;
    for (Eigen::Index i = 0; i < e.lo.size(); ++i) {
        if (!std::isfinite(e.lo[i])) {
            ++v.infinite_sides;
        }
        if (!std::isfinite(e.hi[i])) {
            ++v.infinite_sides;
        }
        if (std::isfinite(e.lo[i]) && std::isfinite(e.hi[i])) {
            v.finite_volume *= e.hi[i] - e.lo[i];
        }
    }
    return v;
}

inline Extents join_extents(const Extents& a, const Extents& b) {
    Extents j;
    j.lo = a.lo.cwiseMin(b.lo);
    j.hi = a.hi.cwiseMax(b.hi);
    return j;
}

// Box polyhedron from extents; unbounded sides contribute no constraint.
inline Polyhedron extents_to_polyhedron(const Extents& e, int dim) {
    Polyhedron p(dim);
    for (int i = 0; i < dim; ++i) {
        if (std::isfinite(e.hi[i])) {
            Eigen::RowVectorXd up = Eigen::RowVectorXd::Zero(dim);
            up[i] = 1.0;
            p.add({up, e.hi[i], false});
        }
        if (std::isfinite(e.lo[i])) {
            Eigen::RowVectorXd down = Eigen::RowVectorXd::Zero(dim);
            down[i] = -1.0;
            p.add({down, -e.lo[i], false});
        }
    }
    return p;
}

} // namespace detail

// Enforce the powerset budget. While over budget, the pair of members whose
// joint bounding box is smallest is replaced by that box (a coarse convex
// overapproximation of their union), so the concretization never shrinks.
// Members whose closure is empty are dropped first.
inline PolySet merge_powerset(const PolySet& s) {
    if (s.size() <= s.budget()) {
        return s;
    }
    std::vector<Polyhedron> polys;
    std::vector<Extents> exts;
    polys.reserve(s.size());
    for (const auto& p : s.polys()) {
        Extents e = extents(p);
        if (e.empty) {
            continue;
        }
        polys.push_back(p);
        exts.push_back(std::move(e));
    }
    while (polys.size() > s.budget()) {
        std::size_t best_i = 0, best_j = 1;
        detail::ExtentVolume best_vol;
        bool have = false;
        for (std::size_t i = 0; i < polys.size(); ++i) {
            for (std::size_t j = i + 1; j < polys.size(); ++j) {
                detail::ExtentVolume v =
                    detail::extent_volume(detail::join_extents(exts[i], exts[j]));
                if (!have || v < best_vol) {
                    have = true;
                    best_vol = v;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        Extents joined = detail::join_extents(exts[best_i], exts[best_j]);
        polys[best_i] = detail::extents_to_polyhedron(joined, s.dim());
        exts[best_i] = joined;
        polys.erase(polys.begin() + static_cast<std::ptrdiff_t>(best_j));
        exts.erase(exts.begin() + static_cast<std::ptrdiff_t>(best_j));
    }
    return PolySet(s.dim(), s.budget(), std::move(polys));
}

// Debug dump: one polyhedron per block, one constraint per line
// "c1 c2 ... ck <= b" (or "< b"), blocks separated by a blank line.
inline std::string dump(const PolySet& s) {
    std::string out;
    char buf[64];
    auto put_num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) {
            out += "\n";
        }
        for (const auto& c : s.polys()[i].constraints()) {
            for (Eigen::Index j = 0; j < c.coeffs.size(); ++j) {
                put_num(c.coeffs[j]);
                out += " ";
            }
            out += c.strict ? "< " : "<= ";
            put_num(c.bound);
            out += "\n";
        }
    }
    return out;
}

} // namespace probrob

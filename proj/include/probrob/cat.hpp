#pragma once

#include <memory>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "probrob/errors.hpp"
#include "probrob/polyhedron.hpp"

namespace probrob {

// Guard atoms over the input coordinates of a case node. CoordGeCoord with
// strict=true (x_i > x_j) is the complement form used to break argmax ties
// toward the lowest index, which keeps case guards pairwise disjoint.
enum class AtomKind { CoordGeCoord, CoordGeZero, CoordLtZero };

struct GuardAtom {
    AtomKind kind = AtomKind::CoordGeZero;
    int lhs = 0;
    int rhs = 0;
    bool strict = false; // only meaningful for CoordGeCoord

    static GuardAtom ge_coord(int i, int j, bool strict_cmp = false) {
        return {AtomKind::CoordGeCoord, i, j, strict_cmp};
    }
    static GuardAtom ge_zero(int i) { return {AtomKind::CoordGeZero, i, 0, false}; }
    static GuardAtom lt_zero(int i) { return {AtomKind::CoordLtZero, i, 0, false}; }

    bool holds(const Eigen::VectorXd& x) const {
        switch (kind) {
        case AtomKind::CoordGeCoord:
            return strict ? x[lhs] > x[rhs] : x[lhs] >= x[rhs];
        case AtomKind::CoordGeZero:
            return x[lhs] >= 0.0;
        case AtomKind::CoordLtZero:
            return x[lhs] < 0.0;
        }
        return false;
    }

    int max_coord() const { return kind == AtomKind::CoordGeCoord ? std::max(lhs, rhs) : lhs; }

    // Half-space form over a dim-dimensional space.
    LinearConstraint to_constraint(int dim) const {
        LinearConstraint c;
        c.coeffs = Eigen::RowVectorXd::Zero(dim);
        switch (kind) {
        case AtomKind::CoordGeCoord:
            // x_lhs >= x_rhs  <=>  x_rhs - x_lhs <= 0 (strict: < 0)
            c.coeffs[rhs] += 1.0;
            c.coeffs[lhs] -= 1.0;
            c.bound = 0.0;
            c.strict = strict;
            break;
        case AtomKind::CoordGeZero:
            c.coeffs[lhs] = -1.0;
            c.bound = 0.0;
            c.strict = false;
            break;
        case AtomKind::CoordLtZero:
            c.coeffs[lhs] = 1.0;
            c.bound = 0.0;
            c.strict = true;
            break;
        }
        return c;
    }

    GuardAtom shifted(int offset) const {
        GuardAtom a = *this;
        a.lhs += offset;
        if (kind == AtomKind::CoordGeCoord) {
            a.rhs += offset;
        }
        return a;
    }
};

// Conjunction of atoms; the empty guard is always true.
struct Guard {
    std::vector<GuardAtom> atoms;

    bool holds(const Eigen::VectorXd& x) const {
        for (const auto& a : atoms) {
            if (!a.holds(x)) {
                return false;
            }
        }
        return true;
    }

    Polyhedron to_polyhedron(int dim) const {
        Polyhedron p(dim);
        for (const auto& a : atoms) {
            p.add(a.to_constraint(dim));
        }
        return p;
    }

    Guard shifted(int offset) const {
        Guard g;
        g.atoms.reserve(atoms.size());
        for (const auto& a : atoms) {
            g.atoms.push_back(a.shifted(offset));
        }
        return g;
    }
};

// Conditional affine transformation: an immutable tree of affine maps,
// guard-dispatched cases, and compositions. Shared subtrees are fine; the
// structure is acyclic by construction.
class CatFunc {
  public:
    struct AffineNode {
        Eigen::MatrixXd W;
        Eigen::VectorXd b;
    };
    struct CasesNode {
        std::vector<std::pair<Guard, CatFunc>> branches;
    };
    struct ComposeNode {
        CatFunc outer;
        CatFunc inner;
    };
    using Node = std::variant<AffineNode, CasesNode, ComposeNode>;

    static CatFunc affine(Eigen::MatrixXd W, Eigen::VectorXd b) {
        if (W.rows() != b.size()) {
            throw DimensionError("affine: bias length != weight rows");
        }
        if (W.rows() == 0 || W.cols() == 0) {
            throw DimensionError("affine: weights must be nonempty");
        }
        CatFunc f;
        int in = static_cast<int>(W.cols());
        int out = static_cast<int>(W.rows());
        f.node_ = std::make_shared<Node>(AffineNode{std::move(W), std::move(b)});
        f.in_dim_ = in;
        f.out_dim_ = out;
        return f;
    }

    static CatFunc identity(int dim) {
        return affine(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim));
    }

    static CatFunc cases(std::vector<std::pair<Guard, CatFunc>> branches) {
        if (branches.empty()) {
            throw ValidationError("cases: at least one branch required");
        }
        int in = branches.front().second.input_dim();
        int out = branches.front().second.output_dim();
        for (const auto& [guard, fn] : branches) {
            if (fn.input_dim() != in || fn.output_dim() != out) {
                throw DimensionError("cases: branches must share input/output dims");
            }
            for (const auto& atom : guard.atoms) {
                if (atom.max_coord() >= in || atom.lhs < 0 || atom.rhs < 0) {
                    throw ValidationError("cases: guard atom references coordinate out of range");
                }
            }
        }
        CatFunc f;
        f.node_ = std::make_shared<Node>(CasesNode{std::move(branches)});
        f.in_dim_ = in;
        f.out_dim_ = out;
        return f;
    }

    static CatFunc compose(CatFunc outer, CatFunc inner) {
        if (inner.output_dim() != outer.input_dim()) {
            std::ostringstream oss;
            oss << "compose: inner output dim " << inner.output_dim()
                << " != outer input dim " << outer.input_dim();
            throw DimensionError(oss.str());
        }
        CatFunc f;
        f.in_dim_ = inner.input_dim();
        f.out_dim_ = outer.output_dim();
        f.node_ = std::make_shared<Node>(ComposeNode{std::move(outer), std::move(inner)});
        return f;
    }

    int input_dim() const { return in_dim_; }
    int output_dim() const { return out_dim_; }
    const Node& node() const { return *node_; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const {
        if (x.size() != in_dim_) {
            std::ostringstream oss;
            oss << "eval: input has dim " << x.size() << ", expected " << in_dim_;
            throw DimensionError(oss.str());
        }
        return eval_unchecked(x);
    }

  private:
    CatFunc() = default;

    Eigen::VectorXd eval_unchecked(const Eigen::VectorXd& x) const {
        if (const auto* aff = std::get_if<AffineNode>(node_.get())) {
            return aff->W * x + aff->b;
        }
        if (const auto* cs = std::get_if<CasesNode>(node_.get())) {
            for (const auto& [guard, fn] : cs->branches) {
                if (guard.holds(x)) {
                    return fn.eval_unchecked(x);
                }
            }
            // Guards are disjoint and exhaustive by construction.
            throw ValidationError("eval: no case guard holds (guards not exhaustive)");
        }
        const auto& cmp = std::get<ComposeNode>(*node_);
        return cmp.outer.eval_unchecked(cmp.inner.eval_unchecked(x));
    }

    std::shared_ptr<const Node> node_;
    int in_dim_ = 0;
    int out_dim_ = 0;
};

inline Eigen::VectorXd eval(const CatFunc& f, const Eigen::VectorXd& x) { return f.eval(x); }

} // namespace probrob

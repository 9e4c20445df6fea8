#pragma once

#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "probrob/cat.hpp"
#include "probrob/errors.hpp"

namespace probrob {

// Self-composed network over paired inputs. The CAT function maps
// (x, x') in R^{2m} to the concatenation (x, x', f(x), f(x')) in R^{2m+2n};
// the raw inputs ride along so that properties mentioning input distances
// are plain predicates over the output space.
struct ProductNet {
    CatFunc cat;
    int m = 0; // original input dim
    int n = 0; // original output dim
};

namespace detail {

// Embed f to act on the middle block of a wider space: `before` passthrough
// coordinates, then f's block, then `after` passthrough coordinates.
inline CatFunc embed(const CatFunc& f, int before, int after) {
    if (const auto* aff = std::get_if<CatFunc::AffineNode>(&f.node())) {
        const int r = static_cast<int>(aff->W.rows());
        const int c = static_cast<int>(aff->W.cols());
        Eigen::MatrixXd W = Eigen::MatrixXd::Zero(before + r + after, before + c + after);
        W.topLeftCorner(before, before).setIdentity();
        W.block(before, before, r, c) = aff->W;
        W.bottomRightCorner(after, after).setIdentity();
        Eigen::VectorXd b = Eigen::VectorXd::Zero(before + r + after);
        b.segment(before, r) = aff->b;
        return CatFunc::affine(std::move(W), std::move(b));
    }
    if (const auto* cs = std::get_if<CatFunc::CasesNode>(&f.node())) {
        std::vector<std::pair<Guard, CatFunc>> branches;
        branches.reserve(cs->branches.size());
        for (const auto& [guard, fn] : cs->branches) {
            branches.push_back({guard.shifted(before), embed(fn, before, after)});
        }
        return CatFunc::cases(std::move(branches));
    }
    const auto& cmp = std::get<CatFunc::ComposeNode>(f.node());
    return CatFunc::compose(embed(cmp.outer, before, after), embed(cmp.inner, before, after));
}

} // namespace detail

// Build the product of f with itself. Stages:
//   duplicate: (x, x') -> (x, x', x, x')
//   first copy:  f on block [2m, 3m)  -> (x, x', f(x), x')
//   second copy: f on the trailing m  -> (x, x', f(x), f(x'))
// Guards stay local to one copy because each embedding only shifts them.
inline ProductNet construct_product(const CatFunc& f) {
    const int m = f.input_dim();
    const int n = f.output_dim();

    Eigen::MatrixXd dup = Eigen::MatrixXd::Zero(4 * m, 2 * m);
    dup.topLeftCorner(2 * m, 2 * m).setIdentity();
    dup.bottomLeftCorner(2 * m, 2 * m).setIdentity();
    CatFunc duplicate = CatFunc::affine(std::move(dup), Eigen::VectorXd::Zero(4 * m));

    CatFunc first_copy = detail::embed(f, 2 * m, m);
    CatFunc second_copy = detail::embed(f, 2 * m + n, 0);

    return ProductNet{CatFunc::compose(second_copy, CatFunc::compose(first_copy, duplicate)), m,
                      n};
}

} // namespace probrob

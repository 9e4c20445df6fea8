#pragma once

#include <vector>

#include <Eigen/Dense>

#include "probrob/box.hpp"
#include "probrob/errors.hpp"
#include "probrob/polyhedron.hpp"
#include "probrob/polyset.hpp"

namespace probrob {

// Lipschitz robustness property: pairs within max-norm distance `delta` must
// keep their outputs within k times their input distance. `domain` is the
// box over single inputs; sampling and the final abstraction are restricted
// to it.
struct PropertyConfig {
    double k = 1.0;
    double delta = 0.1;
    int m = 0; // input dim
    int n = 0; // output dim
    Box domain;

    void validate() const {
        if (k < 0.0) {
            throw ValidationError("property: k must be >= 0");
        }
        if (!(delta > 0.0)) {
            throw ValidationError("property: delta must be > 0");
        }
        if (m <= 0 || n <= 0) {
            throw ValidationError("property: dims must be positive");
        }
        if (domain.dim() != m) {
            throw DimensionError("property: domain box dimension != input dim");
        }
    }
};

// Negated Lipschitz property over the product output layout (x, x', y, y'):
//
//   || y' - y ||_inf > k * || x' - x ||_inf   and   || x' - x ||_inf <= delta
//
// expanded into (2n)*(2m) linear disjuncts: output coordinate i with sign si
// witnesses the output norm, input coordinate j with sign sj is certified as
// the argmax of the input norm. Signs iterate +1 then -1; the member order
// (i, si, j, sj) is the canonical order downstream sampling relies on.
// Infeasible disjuncts are pruned; the set is merged to the budget.
inline PolySet encode_negated_lipschitz(const PropertyConfig& cfg, std::size_t budget) {
    cfg.validate();
    const int m = cfg.m;
    const int n = cfg.n;
    const int dim = 2 * m + 2 * n;
    const int x_of = 0, xp_of = m, y_of = 2 * m, yp_of = 2 * m + n;

    PolySet out(dim, budget);
    const double signs[2] = {1.0, -1.0};
    for (int i = 0; i < n; ++i) {
        for (double si : signs) {
            for (int j = 0; j < m; ++j) {
                for (double sj : signs) {
                    Polyhedron p(dim);

                    // k*sj*(x'_j - x_j) - si*(y'_i - y_i) < 0
                    LinearConstraint viol;
                    viol.coeffs = Eigen::RowVectorXd::Zero(dim);
                    viol.coeffs[x_of + j] -= cfg.k * sj;
                    viol.coeffs[xp_of + j] += cfg.k * sj;
                    viol.coeffs[y_of + i] += si;
                    viol.coeffs[yp_of + i] -= si;
                    viol.bound = 0.0;
                    viol.strict = true;
                    p.add(std::move(viol));

                    // Argmax certificate: sj*(x'_j - x_j) >= t*(x'_l - x_l).
                    for (int l = 0; l < m; ++l) {
                        for (double t : signs) {
                            if (l == j && t == sj) {
                                continue;
                            }
                            LinearConstraint cert;
                            cert.coeffs = Eigen::RowVectorXd::Zero(dim);
                            cert.coeffs[x_of + l] -= t;
                            cert.coeffs[xp_of + l] += t;
                            cert.coeffs[x_of + j] += sj;
                            cert.coeffs[xp_of + j] -= sj;
                            cert.bound = 0.0;
                            cert.strict = false;
                            p.add(std::move(cert));
                        }
                    }

                    // Closeness: t*(x'_l - x_l) <= delta for all l, t.
                    for (int l = 0; l < m; ++l) {
                        for (double t : signs) {
                            LinearConstraint close;
                            close.coeffs = Eigen::RowVectorXd::Zero(dim);
                            close.coeffs[x_of + l] -= t;
                            close.coeffs[xp_of + l] += t;
                            close.bound = cfg.delta;
                            close.strict = false;
                            p.add(std::move(close));
                        }
                    }

                    if (is_feasible(p)) {
                        out.push(std::move(p));
                    }
                }
            }
        }
    }
    return merge_powerset(out);
}

} // namespace probrob

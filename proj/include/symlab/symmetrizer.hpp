#pragma once

#include <optional>
#include <vector>

#include "symlab/discrete_dist.hpp"
#include "symlab/lp.hpp"

namespace symlab {

/// Find a minimum-variance symmetrizer of x_dist supported on y_grid.
struct SymmetrizerProblem {
    DiscreteDist x_dist;
    std::vector<Rational> y_grid; // strictly increasing candidate support
};

struct SymmetrizerSolution {
    LpStatus status = LpStatus::Infeasible;
    std::optional<DiscreteDist> y_dist; // present iff Optimal
    double second_moment = 0.0;         // LP objective, E[Y^2]
    double mean_y = 0.0;
    double variance = 0.0;              // second_moment - mean_y^2
    std::optional<double> certificate_gap; // variance - pq when x_dist is Bernoulli
};

/// Encode the problem as a standard-form LP: one measure variable per grid
/// point, a unit-mass row, and one row per positive magnitude s in the exact
/// sum support pairing P(X+Y = s) with P(X+Y = -s). The objective is E[Y^2];
/// symmetry pins E[X+Y] = 0, so E[Y] is constant over the feasible set and
/// minimizing E[Y^2] minimizes the variance.
LinearProgram build_problem(const SymmetrizerProblem& prob);

/// Solve and decode. Atoms with mass below 1e-12 are dropped as simplex
/// rounding noise; an Optimal decode that fails the convolution symmetry
/// re-check throws SolverInconsistency.
SymmetrizerSolution solve_symmetrizer(const SymmetrizerProblem& prob);

/// Exhaustive scan of probability vectors with components at multiples of
/// 1/resolution; returns the minimum E[Y^2] among symmetrizing ones, or
/// +infinity if none symmetrize. Only for |y_grid| <= 4 and resolution <= 200.
double brute_force_oracle(const SymmetrizerProblem& prob, int resolution);

/// Uniform rational grid: every multiple of step inside [lo, hi].
std::vector<Rational> make_grid(const Rational& lo, const Rational& hi, const Rational& step);

} // namespace symlab

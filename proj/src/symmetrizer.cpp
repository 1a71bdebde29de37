#include "symlab/symmetrizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "symlab/certificate.hpp"
#include "symlab/errors.hpp"

namespace symlab {

namespace {

constexpr double kDecodeDropTol = 1e-12;

void validate_problem(const SymmetrizerProblem& prob) {
    if (prob.y_grid.empty()) throw InvalidProblem("symmetrizer: empty y_grid");
    for (std::size_t j = 1; j < prob.y_grid.size(); ++j)
        if (!(prob.y_grid[j - 1] < prob.y_grid[j]))
            throw InvalidProblem("symmetrizer: y_grid must be strictly increasing");
}

// p of the Bernoulli law, or nullopt when x_dist is not Bernoulli on {0,1}.
std::optional<double> bernoulli_p(const DiscreteDist& d) {
    if (d.size() != 2) return std::nullopt;
    if (!(d.atoms()[0].value == Rational(0) && d.atoms()[1].value == Rational(1)))
        return std::nullopt;
    const double p = d.atoms()[1].prob;
    if (p <= 0.0 || p >= 1.0) return std::nullopt;
    return p;
}

} // namespace

LinearProgram build_problem(const SymmetrizerProblem& prob) {
    validate_problem(prob);
    const std::size_t n = prob.y_grid.size();

    // One row per positive magnitude in the exact-rational sum support; a
    // magnitude present on only one side still gets a (one-sided) row.
    std::map<Rational, std::size_t> magnitude_row;
    for (const Atom& xa : prob.x_dist.atoms()) {
        for (const Rational& y : prob.y_grid) {
            const Rational s = xa.value + y;
            if (s.is_zero()) continue; // P(S=0) pairs with itself
            const Rational mag = s < Rational(0) ? -s : s;
            magnitude_row.emplace(mag, 0);
        }
    }
    std::size_t next_row = 1; // row 0 is the unit-mass constraint
    for (auto& [mag, row] : magnitude_row) row = next_row++;

    const std::size_t m = next_row;
    LinearProgram lp;
    lp.c.assign(n, 0.0);
    lp.A = DenseMatrix(m, n);
    lp.b.assign(m, 0.0);
    lp.b[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double yv = prob.y_grid[j].to_double();
        lp.c[j] = yv * yv;
        lp.A(0, j) = 1.0;
    }
    for (const Atom& xa : prob.x_dist.atoms()) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational s = xa.value + prob.y_grid[j];
            if (s.is_zero()) continue;
            if (s > Rational(0))
                lp.A(magnitude_row.at(s), j) += xa.prob;
            else
                lp.A(magnitude_row.at(-s), j) -= xa.prob;
        }
    }
    return lp;
}

SymmetrizerSolution solve_symmetrizer(const SymmetrizerProblem& prob) {
    const LinearProgram lp = build_problem(prob);
    const LpSolution lp_sol = solve_lp(lp);

    SymmetrizerSolution sol;
    sol.status = lp_sol.status;
    if (lp_sol.status != LpStatus::Optimal) return sol;

    std::vector<Atom> atoms;
    double kept_mass = 0.0;
    for (std::size_t j = 0; j < prob.y_grid.size(); ++j) {
        if (lp_sol.x[j] >= kDecodeDropTol) {
            atoms.push_back({prob.y_grid[j], lp_sol.x[j]});
            kept_mass += lp_sol.x[j];
        }
    }
    if (atoms.empty() || kept_mass <= 0.0)
        throw SolverInconsistency("solve_symmetrizer: decoded measure is empty");
    for (Atom& a : atoms) a.prob /= kept_mass;

    sol.y_dist = DiscreteDist::from_atoms(std::move(atoms));
    sol.second_moment = lp_sol.objective;
    sol.mean_y = mean(*sol.y_dist);
    sol.variance = sol.second_moment - sol.mean_y * sol.mean_y;

    if (!is_symmetric_about_zero(convolve(prob.x_dist, *sol.y_dist), 1e-7))
        throw SolverInconsistency("solve_symmetrizer: optimal measure fails symmetry re-check");

    if (const auto p = bernoulli_p(prob.x_dist))
        sol.certificate_gap = sol.variance - certificate_bound(*p);
    return sol;
}

double brute_force_oracle(const SymmetrizerProblem& prob, int resolution) {
    validate_problem(prob);
    const std::size_t n = prob.y_grid.size();
    if (n > 4) throw OracleTooLarge("brute_force_oracle: y_grid larger than 4 points");
    if (resolution < 1 || resolution > 200)
        throw OracleTooLarge("brute_force_oracle: resolution outside [1, 200]");

    // Hoist the exact sum-support pairing out of the scan: slot k holds
    // P(X+Y = s_k); mirror[k] is the slot of -s_k (or -1 when absent).
    std::map<Rational, std::size_t> slot_of;
    std::vector<std::vector<std::size_t>> slot_index(prob.x_dist.size(),
                                                     std::vector<std::size_t>(n));
    std::vector<Rational> slot_value;
    for (std::size_t i = 0; i < prob.x_dist.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational s = prob.x_dist.atoms()[i].value + prob.y_grid[j];
            auto [it, inserted] = slot_of.emplace(s, slot_value.size());
            if (inserted) slot_value.push_back(s);
            slot_index[i][j] = it->second;
        }
    }
    std::vector<int> mirror(slot_value.size(), -1);
    for (std::size_t k = 0; k < slot_value.size(); ++k) {
        auto it = slot_of.find(-slot_value[k]);
        if (it != slot_of.end()) mirror[k] = static_cast<int>(it->second);
    }

    const double tol = 1e-9 * resolution;
    std::vector<double> x_probs;
    for (const Atom& a : prob.x_dist.atoms()) x_probs.push_back(a.prob);
    std::vector<double> y_sq;
    for (const Rational& y : prob.y_grid) y_sq.push_back(y.to_double() * y.to_double());

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> counts(n, 0);
    std::vector<double> mass(slot_value.size(), 0.0);

    // Depth-first over compositions of `resolution` into n parts.
    auto scan = [&](auto&& self, std::size_t j, int remaining) -> void {
        if (j + 1 == n) {
            counts[j] = remaining;
            std::fill(mass.begin(), mass.end(), 0.0);
            double second_moment = 0.0;
            for (std::size_t jj = 0; jj < n; ++jj) {
                const double mu = static_cast<double>(counts[jj]) / resolution;
                if (mu == 0.0) continue;
                second_moment += y_sq[jj] * mu;
                for (std::size_t i = 0; i < x_probs.size(); ++i)
                    mass[slot_index[i][jj]] += x_probs[i] * mu;
            }
            for (std::size_t k = 0; k < mass.size(); ++k) {
                const double mirrored = mirror[k] >= 0 ? mass[mirror[k]] : 0.0;
                if (std::fabs(mass[k] - mirrored) > tol) return;
            }
            best = std::min(best, second_moment);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            counts[j] = k;
            self(self, j + 1, remaining - k);
        }
    };
    scan(scan, 0, resolution);
    return best;
}

std::vector<Rational> make_grid(const Rational& lo, const Rational& hi, const Rational& step) {
    if (!(step > Rational(0))) throw InvalidProblem("make_grid: step must be positive");
    if (!(lo < hi)) throw InvalidProblem("make_grid: lo must be below hi");
    std::vector<Rational> grid;
    // first multiple of step at or above lo
    const Rational ratio_lo = lo / step;
    std::int64_t k = ratio_lo.num() / ratio_lo.den();
    while (Rational(k) * step < lo) ++k;
    while (!(hi < Rational(k) * step)) {
        grid.push_back(Rational(k) * step);
        ++k;
    }
    if (grid.empty()) throw InvalidProblem("make_grid: no grid points in [lo, hi]");
    return grid;
}

} // namespace symlab

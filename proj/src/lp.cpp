#include "symlab/lp.hpp"

#include <cmath>
#include <limits>

#include "symlab/errors.hpp"

namespace symlab {

namespace {

constexpr double kPivotTol = 1e-9;

// Revised simplex working state. Column indices j < n are structural; j in
// [n, n+m) are the phase-1 artificials (virtually the identity).
class Simplex {
public:
    explicit Simplex(const LinearProgram& lp)
        : m_(lp.num_constraints()),
          n_(lp.num_vars()),
          a_(lp.A),
          b_(lp.b),
          binv_(m_, m_),
          x_basic_(m_, 0.0),
          basis_(m_),
          max_iterations_(50 * static_cast<int>(m_ + n_)) {
        // Phase 1 wants b >= 0; flip rows as needed.
        for (std::size_t i = 0; i < m_; ++i) {
            if (b_[i] < 0.0) {
                b_[i] = -b_[i];
                for (std::size_t j = 0; j < n_; ++j) a_(i, j) = -a_(i, j);
            }
            binv_(i, i) = 1.0;
            x_basic_[i] = b_[i];
            basis_[i] = static_cast<int>(n_ + i);
        }
    }

    LpSolution run(const std::vector<double>& cost) {
        LpSolution sol;

        // Phase 1: minimize total artificial mass from the all-artificial basis.
        std::vector<double> phase1_cost(n_ + m_, 0.0);
        for (std::size_t j = n_; j < n_ + m_; ++j) phase1_cost[j] = 1.0;
        if (!iterate(phase1_cost)) throw SolverInconsistency("simplex: phase 1 unbounded");
        sol.phase1_objective = objective_of(phase1_cost);
        sol.iterations = iterations_;
        if (sol.phase1_objective > kPivotTol) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        drive_out_artificials();

        // Phase 2: original costs, artificials barred from entering.
        std::vector<double> phase2_cost(n_ + m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) phase2_cost[j] = cost[j];
        const bool bounded = iterate(phase2_cost);
        sol.iterations = iterations_;
        if (!bounded) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }

        sol.status = LpStatus::Optimal;
        sol.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < static_cast<int>(n_)) {
                sol.x[basis_[i]] = x_basic_[i];
                sol.basis.push_back(basis_[i]);
            }
        }
        sol.objective = 0.0;
        for (std::size_t j = 0; j < n_; ++j) sol.objective += cost[j] * sol.x[j];
        return sol;
    }

private:
    // Bland's rule throughout: entering = smallest eligible index with
    // negative reduced cost, leaving = smallest basic index among the
    // minimum-ratio rows. Returns false on an unbounded direction.
    bool iterate(const std::vector<double>& cost) {
        for (;;) {
            if (++iterations_ > max_iterations_)
                throw CyclingSuspected("simplex: iteration budget exhausted (" +
                                       std::to_string(max_iterations_) + ")");
            const std::vector<double> y = basis_prices(cost);
            int entering = -1;
            for (std::size_t j = 0; j < n_; ++j) {
                if (is_basic(static_cast<int>(j))) continue;
                double reduced = cost[j];
                for (std::size_t i = 0; i < m_; ++i) reduced -= y[i] * a_(i, j);
                if (reduced < -kPivotTol) {
                    entering = static_cast<int>(j);
                    break;
                }
            }
            if (entering < 0) return true;

            const std::vector<double> direction = binv_times_column(entering);
            int leaving_row = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (direction[i] > kPivotTol) {
                    const double ratio = x_basic_[i] / direction[i];
                    if (ratio < best_ratio - kPivotTol ||
                        (ratio < best_ratio + kPivotTol &&
                         (leaving_row < 0 || basis_[i] < basis_[leaving_row]))) {
                        best_ratio = ratio;
                        leaving_row = static_cast<int>(i);
                    }
                }
            }
            if (leaving_row < 0) return false;
            pivot(static_cast<std::size_t>(leaving_row), entering, direction);
        }
    }

    std::vector<double> basis_prices(const std::vector<double>& cost) const {
        std::vector<double> y(m_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) continue;
            for (std::size_t i = 0; i < m_; ++i) y[i] += cb * binv_(r, i);
        }
        return y;
    }

    std::vector<double> binv_times_column(int j) const {
        std::vector<double> d(m_, 0.0);
        if (j >= static_cast<int>(n_)) {
            const std::size_t k = static_cast<std::size_t>(j) - n_;
            for (std::size_t i = 0; i < m_; ++i) d[i] = binv_(i, k);
            return d;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < m_; ++k) s += binv_(i, k) * a_(k, j);
            d[i] = s;
        }
        return d;
    }

    void pivot(std::size_t row, int entering, const std::vector<double>& direction) {
        const double theta = x_basic_[row] / direction[row];
        for (std::size_t i = 0; i < m_; ++i) x_basic_[i] -= theta * direction[i];
        x_basic_[row] = theta;

        const double inv_pivot = 1.0 / direction[row];
        for (std::size_t k = 0; k < m_; ++k) binv_(row, k) *= inv_pivot;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || direction[i] == 0.0) continue;
            const double f = direction[i];
            for (std::size_t k = 0; k < m_; ++k) binv_(i, k) -= f * binv_(row, k);
        }
        basis_[row] = entering;
    }

    // After phase 1, replace zero-level basic artificials by structural
    // columns where a nonzero pivot exists; rows with none are redundant and
    // the stuck artificial stays harmlessly at level zero.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < static_cast<int>(n_)) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (is_basic(static_cast<int>(j))) continue;
                const std::vector<double> d = binv_times_column(static_cast<int>(j));
                if (std::fabs(d[r]) > kPivotTol) {
                    pivot(r, static_cast<int>(j), d);
                    break;
                }
            }
        }
    }

    double objective_of(const std::vector<double>& cost) const {
        double v = 0.0;
        for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * x_basic_[i];
        return v;
    }

    bool is_basic(int j) const {
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] == j) return true;
        return false;
    }

    std::size_t m_, n_;
    DenseMatrix a_;
    std::vector<double> b_;
    DenseMatrix binv_;
    std::vector<double> x_basic_;
    std::vector<int> basis_;
    int iterations_ = 0;
    int max_iterations_;
};

void validate(const LinearProgram& lp) {
    const std::size_t m = lp.b.size();
    const std::size_t n = lp.c.size();
    if (m < 1 || n < 1) throw InvalidProgram("LinearProgram: need m >= 1, n >= 1");
    if (lp.A.rows() != m || lp.A.cols() != n)
        throw InvalidProgram("LinearProgram: A is " + std::to_string(lp.A.rows()) + "x" +
                             std::to_string(lp.A.cols()) + ", expected " + std::to_string(m) +
                             "x" + std::to_string(n));
    for (double v : lp.c)
        if (!std::isfinite(v)) throw InvalidProgram("LinearProgram: non-finite cost entry");
    for (double v : lp.b)
        if (!std::isfinite(v)) throw InvalidProgram("LinearProgram: non-finite rhs entry");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(lp.A(i, j)))
                throw InvalidProgram("LinearProgram: non-finite matrix entry");
}

} // namespace

std::string to_string(LpStatus status) {
    switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

LpSolution solve_lp(const LinearProgram& lp) {
    validate(lp);
    Simplex simplex(lp);
    return simplex.run(lp.c);
}

} // namespace symlab

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace symlab {

/// Row-major dense matrix; all the LPs here are desk-scale.
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

/// Standard-form LP: minimize c.x subject to A x = b, x >= 0.
struct LinearProgram {
    std::vector<double> c;
    DenseMatrix A;
    std::vector<double> b;

    std::size_t num_vars() const { return c.size(); }
    std::size_t num_constraints() const { return b.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;        // length n iff Optimal, else empty
    double objective = 0.0;       // c.x iff Optimal
    std::vector<int> basis;       // basic structural variable indices
    int iterations = 0;
    double phase1_objective = 0.0; // residual artificial mass after phase 1
};

/// Two-phase revised simplex (dense explicit basis inverse, Bland's rule).
/// Deterministic for identical input. Throws InvalidProgram on malformed
/// input and CyclingSuspected past 50*(m+n) pivots.
LpSolution solve_lp(const LinearProgram& lp);

} // namespace symlab

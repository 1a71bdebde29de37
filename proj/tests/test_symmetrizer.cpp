#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "symlab/certificate.hpp"
#include "symlab/errors.hpp"
#include "symlab/rng.hpp"
#include "symlab/symmetrizer.hpp"

using namespace symlab;

namespace {

std::vector<Rational> tenth_grid() {
    return make_grid(Rational(-3, 2), Rational(1, 2), Rational(1, 10));
}

} // namespace

TEST_CASE("make_grid rejects malformed ranges") {
    CHECK_THROWS_AS(make_grid(Rational(0), Rational(1), Rational(0)), InvalidProblem);
    CHECK_THROWS_AS(make_grid(Rational(0), Rational(1), Rational(-1, 2)), InvalidProblem);
    CHECK_THROWS_AS(make_grid(Rational(1), Rational(0), Rational(1, 2)), InvalidProblem);
}

TEST_CASE("make_grid spans [lo, hi] with exact multiples of step") {
    const auto grid = make_grid(Rational(-2), Rational(1), Rational(1, 20));
    REQUIRE(grid.size() == 61);
    CHECK(grid.front() == Rational(-2));
    CHECK(grid.back() == Rational(1));
    // the known optimizer support must be on the default grid
    bool has_minus_one = false, has_zero = false, has_minus_half = false;
    for (const Rational& g : grid) {
        if (g == Rational(-1)) has_minus_one = true;
        if (g == Rational(0)) has_zero = true;
        if (g == Rational(-1, 2)) has_minus_half = true;
    }
    CHECK(has_minus_one);
    CHECK(has_zero);
    CHECK(has_minus_half);
}

TEST_CASE("build_problem encodes mass, pairing rows, and E[Y^2] objective") {
    const SymmetrizerProblem prob{bernoulli(Rational(3, 10)),
                                  {Rational(-1), Rational(-1, 2), Rational(0)}};
    const LinearProgram lp = build_problem(prob);

    // sum support {-1,-1/2,0,1/2,1}: magnitudes {1/2, 1} plus the mass row
    REQUIRE(lp.num_vars() == 3);
    REQUIRE(lp.num_constraints() == 3);
    CHECK(lp.b[0] == 1.0);
    CHECK(lp.b[1] == 0.0);
    CHECK(lp.b[2] == 0.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(lp.A(0, j) == 1.0);
    // magnitude 1/2 row: P(S=1/2) - P(S=-1/2) = (p - q) mu_{-1/2}
    CHECK(lp.A(1, 0) == 0.0);
    CHECK(lp.A(1, 1) == doctest::Approx(0.3 - 0.7).epsilon(1e-15));
    CHECK(lp.A(1, 2) == 0.0);
    // magnitude 1 row: p mu_0 - q mu_{-1}
    CHECK(lp.A(2, 0) == doctest::Approx(-0.7).epsilon(1e-15));
    CHECK(lp.A(2, 1) == 0.0);
    CHECK(lp.A(2, 2) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(lp.c[0] == 1.0);
    CHECK(lp.c[1] == 0.25);
    CHECK(lp.c[2] == 0.0);

    CHECK_THROWS_AS(build_problem({bernoulli(0.3), {}}), InvalidProblem);
    CHECK_THROWS_AS(build_problem({bernoulli(0.3), {Rational(1), Rational(0)}}),
                    InvalidProblem);
}

TEST_CASE("degenerate problems build correctly") {
    const SymmetrizerProblem point{DiscreteDist::point_mass(Rational(0)), {Rational(0)}};
    const LinearProgram lp = build_problem(point);
    CHECK(lp.num_vars() == 1);
    CHECK(lp.num_constraints() == 1); // only the mass row; S = 0 adds nothing
    const SymmetrizerSolution sol = solve_symmetrizer(point);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.second_moment == doctest::Approx(0.0));

    // Y = -1/2 symmetrizes Bernoulli(1/2): E[Y^2] = 1/4, variance 0
    const SymmetrizerSolution half =
        solve_symmetrizer({bernoulli(Rational(1, 2)), {Rational(-1, 2)}});
    REQUIRE(half.status == LpStatus::Optimal);
    CHECK(half.second_moment == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::fabs(half.variance) <= 1e-12);
}

TEST_CASE("solve_symmetrizer recovers the law of -X for p = 3/10") {
    const SymmetrizerSolution sol = solve_symmetrizer({bernoulli(Rational(3, 10)), tenth_grid()});
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(std::fabs(sol.variance - 0.21) <= 1e-9);
    REQUIRE(sol.y_dist.has_value());
    REQUIRE(sol.y_dist->size() == 2);
    CHECK(sol.y_dist->atoms()[0].value == Rational(-1));
    CHECK(sol.y_dist->atoms()[0].prob == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(sol.y_dist->atoms()[1].value == Rational(0));
    CHECK(sol.y_dist->atoms()[1].prob == doctest::Approx(0.7).epsilon(1e-9));
    REQUIRE(sol.certificate_gap.has_value());
    CHECK(std::fabs(*sol.certificate_gap) <= 1e-9);
}

TEST_CASE("p = 1/2 collapses to the degenerate symmetrizer -1/2") {
    const SymmetrizerSolution sol = solve_symmetrizer({bernoulli(Rational(1, 2)), tenth_grid()});
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(std::fabs(sol.variance) <= 1e-9);
    REQUIRE(sol.y_dist.has_value());
    REQUIRE(sol.y_dist->size() == 1);
    CHECK(sol.y_dist->atoms()[0].value == Rational(-1, 2));
}

TEST_CASE("an all-positive grid is infeasible") {
    const SymmetrizerSolution sol =
        solve_symmetrizer({bernoulli(Rational(3, 10)), {Rational(1), Rational(2)}});
    CHECK(sol.status == LpStatus::Infeasible);
    CHECK_FALSE(sol.y_dist.has_value());
    CHECK_FALSE(sol.certificate_gap.has_value());
}

TEST_CASE("brute_force_oracle scans the probability lattice") {
    const SymmetrizerProblem prob{bernoulli(Rational(3, 10)), {Rational(-1), Rational(0)}};
    CHECK(brute_force_oracle(prob, 100) == doctest::Approx(0.30).epsilon(1e-12));

    const SymmetrizerProblem single{bernoulli(Rational(1, 2)), {Rational(-1, 2)}};
    CHECK(brute_force_oracle(single, 37) == doctest::Approx(0.25).epsilon(1e-12));

    const SymmetrizerProblem bad{bernoulli(Rational(3, 10)), {Rational(1), Rational(2)}};
    CHECK(brute_force_oracle(bad, 50) == std::numeric_limits<double>::infinity());

    const SymmetrizerProblem wide{
        bernoulli(0.3),
        {Rational(-2), Rational(-1), Rational(0), Rational(1), Rational(2)}};
    CHECK_THROWS_AS(brute_force_oracle(wide, 10), OracleTooLarge);
    CHECK_THROWS_AS(brute_force_oracle(prob, 201), OracleTooLarge);
}

TEST_CASE("optimal solutions satisfy symmetry and the pinned mean") {
    for (const Rational& p :
         {Rational(1, 10), Rational(3, 10), Rational(1, 2), Rational(7, 10), Rational(9, 10)}) {
        const SymmetrizerProblem prob{bernoulli(p), tenth_grid()};
        const SymmetrizerSolution sol = solve_symmetrizer(prob);
        REQUIRE(sol.status == LpStatus::Optimal);
        REQUIRE(sol.y_dist.has_value());
        CHECK(is_symmetric_about_zero(convolve(prob.x_dist, *sol.y_dist), 1e-7));
        CHECK(std::fabs(sol.mean_y + mean(prob.x_dist)) <= 1e-8);
        // the pq bound needs p != 1/2; the degenerate symmetrizer -1/2 beats it
        if (p != Rational(1, 2)) CHECK(sol.variance >= certificate_bound(p.to_double()) - 1e-7);
        CHECK(sol.variance >= -1e-9);
    }
}

TEST_CASE("uniqueness at desk scale: support is exactly {-1, 0} for p != 1/2") {
    for (const Rational& p : {Rational(1, 10), Rational(3, 10), Rational(9, 10)}) {
        const SymmetrizerSolution sol = solve_symmetrizer({bernoulli(p), tenth_grid()});
        REQUIRE(sol.status == LpStatus::Optimal);
        REQUIRE(sol.y_dist->size() == 2);
        CHECK(sol.y_dist->atoms()[0].value == Rational(-1));
        CHECK(sol.y_dist->atoms()[1].value == Rational(0));
        CHECK(std::fabs(sol.y_dist->atoms()[0].prob - p.to_double()) <= 1e-7);
    }
}

TEST_CASE("grid refinement never increases the optimum") {
    const std::vector<Rational> coarse = make_grid(Rational(-1), Rational(0), Rational(1, 2));
    const std::vector<Rational> fine = make_grid(Rational(-1), Rational(0), Rational(1, 4));
    const std::vector<Rational> finest = make_grid(Rational(-3, 2), Rational(1, 2), Rational(1, 4));
    const DiscreteDist x = bernoulli(Rational(1, 4));
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& grid : {coarse, fine, finest}) {
        const SymmetrizerSolution sol = solve_symmetrizer({x, grid});
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.second_moment <= prev + 1e-9);
        prev = sol.second_moment;
    }
}

TEST_CASE("LP optimum is sandwiched by the oracle") {
    Xoshiro256 rng(2025);
    const std::vector<Rational> pool = {Rational(-1), Rational(-1, 2), Rational(-1, 4),
                                        Rational(0), Rational(1, 4), Rational(1, 2)};
    const std::vector<Rational> ps = {Rational(1, 4), Rational(3, 10), Rational(1, 2),
                                      Rational(2, 5), Rational(3, 4)};
    int feasible_checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Rational p = ps[rng.next() % ps.size()];
        std::vector<Rational> grid = {Rational(-1), Rational(0)};
        const Rational extra = pool[rng.next() % pool.size()];
        if (extra != Rational(-1) && extra != Rational(0)) grid.push_back(extra);
        std::sort(grid.begin(), grid.end());
        const SymmetrizerProblem prob{bernoulli(p), grid};

        const int resolution = 200;
        const double oracle = brute_force_oracle(prob, resolution);
        const SymmetrizerSolution sol = solve_symmetrizer(prob);
        REQUIRE(sol.status == LpStatus::Optimal); // {-1,0} is always feasible
        CHECK(sol.second_moment <= oracle + 2.0 / resolution + 1e-9);
        if (std::isfinite(oracle)) {
            CHECK(oracle - sol.second_moment <= 2.0 / resolution);
            ++feasible_checked;
        }
    }
    CHECK(feasible_checked >= 20);
}

TEST_CASE("certificate gap is unset for non-Bernoulli inputs") {
    const SymmetrizerProblem prob{DiscreteDist::point_mass(Rational(0)), {Rational(0)}};
    const SymmetrizerSolution sol = solve_symmetrizer(prob);
    CHECK_FALSE(sol.certificate_gap.has_value());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "symlab/discrete_dist.hpp"
#include "symlab/errors.hpp"
#include "symlab/rng.hpp"
#include "symlab/skorokhod.hpp"
#include "test_laws.hpp"

using namespace symlab;
using testing::centered_test_laws;

namespace {

// Exact mixture facts derived from the pair law by brute force over all
// pairs; the analytic oracle for the embedding (no sampling involved).
struct MixtureFacts {
    std::vector<double> mass; // per target atom
    double pair_total = 0.0;  // sum of pair probabilities
    double expected_tau = 0.0;
};

MixtureFacts mixture_facts(const DiscreteDist& mu, const ExitPairLaw& law) {
    MixtureFacts facts;
    facts.mass.assign(mu.size(), 0.0);
    for (std::size_t k = 0; k < mu.size(); ++k)
        if (mu.atoms()[k].value.is_zero()) facts.mass[k] += law.zero_mass;
    for (const auto& entry : law.pairs) {
        const TwoPointExit exact = exit_two_point_exact(entry.a, entry.b);
        facts.mass[entry.pos_index] += entry.prob * exact.p_hit_b;
        facts.mass[entry.neg_index] += entry.prob * (1.0 - exact.p_hit_b);
        facts.pair_total += entry.prob;
        facts.expected_tau += entry.prob * exact.e_tau;
    }
    return facts;
}

} // namespace

TEST_CASE("exit_two_point_exact implements the closed forms") {
    const TwoPointExit sym = exit_two_point_exact(-1.0, 1.0);
    CHECK(sym.p_hit_b == 0.5);
    CHECK(sym.e_tau == 1.0);

    const TwoPointExit bern = exit_two_point_exact(-0.7, 0.3);
    CHECK(bern.p_hit_b == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(bern.e_tau == doctest::Approx(0.21).epsilon(1e-15));

    const TwoPointExit half = exit_two_point_exact(-0.5, 0.5);
    CHECK(half.p_hit_b == 0.5);
    CHECK(half.e_tau == 0.25);

    CHECK_THROWS_AS(exit_two_point_exact(0.1, 0.5), InvalidInterval);
    CHECK_THROWS_AS(exit_two_point_exact(-0.5, -0.1), InvalidInterval);
    CHECK_THROWS_AS(exit_two_point_exact(0.0, 1.0), InvalidInterval);
}

TEST_CASE("sample_exit_pair on forced-pair laws") {
    Xoshiro256 rng(42);
    const DiscreteDist pm1 = DiscreteDist::from_atoms({{Rational(-1), 0.5}, {Rational(1), 0.5}});
    for (int i = 0; i < 50; ++i) {
        const ExitPair pair = sample_exit_pair(pm1, rng);
        REQUIRE_FALSE(pair.zero_atom);
        CHECK(pair.a == -1.0);
        CHECK(pair.b == 1.0);
    }

    const DiscreteDist zero = DiscreteDist::point_mass(Rational(0));
    for (int i = 0; i < 10; ++i) CHECK(sample_exit_pair(zero, rng).zero_atom);

    // centered -Bernoulli(3/10): single pair (-7/10, 3/10)
    const DiscreteDist neg_bern = center(negate(bernoulli(Rational(3, 10))));
    for (int i = 0; i < 50; ++i) {
        const ExitPair pair = sample_exit_pair(neg_bern, rng);
        REQUIRE_FALSE(pair.zero_atom);
        CHECK(pair.a == doctest::Approx(-0.7).epsilon(1e-15));
        CHECK(pair.b == doctest::Approx(0.3).epsilon(1e-15));
    }

    CHECK_THROWS_AS(sample_exit_pair(bernoulli(0.3), rng), NotCentered);
}

TEST_CASE("pair-law mixture reproduces the target law exactly") {
    for (const DiscreteDist& mu : centered_test_laws()) {
        const ExitPairLaw law = exit_pair_law(mu);
        const MixtureFacts facts = mixture_facts(mu, law);
        for (std::size_t k = 0; k < mu.size(); ++k)
            CHECK(std::fabs(facts.mass[k] - mu.atoms()[k].prob) <= 1e-12);
        CHECK(std::fabs(facts.pair_total - (1.0 - law.zero_mass)) <= 1e-12);
        CHECK(std::fabs(facts.expected_tau - variance(mu)) <= 1e-12);
    }
}

TEST_CASE("simulate_embedding: exact tau statistics, no discretization") {
    SimConfig cfg;
    cfg.n_paths = 100000;
    cfg.seed = 20250809;

    const DiscreteDist target = center(negate(bernoulli(Rational(3, 10))));
    const EmbeddingReport report = simulate_embedding(target, cfg);
    CHECK(report.n_paths_used == cfg.n_paths);
    CHECK(report.target_variance == doctest::Approx(0.21).epsilon(1e-12));
    // single pair, so every non-zero path contributes exactly 0.21
    CHECK(std::fabs(report.mean_tau - 0.21) <= 3.0 * report.mean_tau_stderr + 1e-12);

    const double binom_se = std::sqrt(0.3 * 0.7 / static_cast<double>(cfg.n_paths));
    REQUIRE(report.empirical_dist.size() == 2);
    CHECK(report.empirical_dist[0].value == Rational(-7, 10));
    CHECK(std::fabs(report.empirical_dist[0].prob - 0.3) <= 3.0 * binom_se);
    CHECK(report.empirical_dist[1].value == Rational(3, 10));
    CHECK(std::fabs(report.empirical_dist[1].prob - 0.7) <= 3.0 * binom_se);
    CHECK(report.empirical_dist[0].prob + report.empirical_dist[1].prob ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate_embedding degenerate cases") {
    SimConfig cfg;
    cfg.n_paths = 1000;
    cfg.seed = 7;

    const EmbeddingReport zero = simulate_embedding(DiscreteDist::point_mass(Rational(0)), cfg);
    CHECK(zero.mean_tau == 0.0);
    CHECK(zero.mean_tau_stderr == 0.0);
    CHECK(zero.empirical_dist[0].prob == 1.0);

    const DiscreteDist pm1 = DiscreteDist::from_atoms({{Rational(-1), 0.5}, {Rational(1), 0.5}});
    const EmbeddingReport unit = simulate_embedding(pm1, cfg);
    CHECK(unit.mean_tau == 1.0); // -a*b = 1 for the only pair
    CHECK(unit.mean_tau_stderr == 0.0);
}

TEST_CASE("simulate_embedding matches the analytic tau for multi-pair laws") {
    SimConfig cfg;
    cfg.n_paths = 50000;
    cfg.seed = 99;
    for (const DiscreteDist& mu : centered_test_laws()) {
        const EmbeddingReport report = simulate_embedding(mu, cfg);
        CHECK(std::fabs(report.mean_tau - variance(mu)) <=
              3.0 * report.mean_tau_stderr + 1e-12);
        double total = 0.0;
        for (const Atom& bin : report.empirical_dist) total += bin.prob;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("simulation outputs are bit-reproducible for a fixed seed") {
    SimConfig cfg;
    cfg.n_paths = 20000;
    cfg.seed = 31415;

    const DiscreteDist target = center(negate(bernoulli(Rational(3, 10))));
    const EmbeddingReport r1 = simulate_embedding(target, cfg);
    const EmbeddingReport r2 = simulate_embedding(target, cfg);
    CHECK(r1.mean_tau == r2.mean_tau);
    CHECK(r1.mean_tau_stderr == r2.mean_tau_stderr);
    for (std::size_t k = 0; k < r1.empirical_dist.size(); ++k)
        CHECK(r1.empirical_dist[k].prob == r2.empirical_dist[k].prob);

    SimConfig tiny;
    tiny.n_paths = 400;
    tiny.dt = 1e-3;
    tiny.seed = 777;
    const ItoReport i1 = simulate_ito_identity(0.3, tiny);
    const ItoReport i2 = simulate_ito_identity(0.3, tiny);
    CHECK(i1.lhs_estimate == i2.lhs_estimate);
    CHECK(i1.rhs_estimate == i2.rhs_estimate);
    CHECK(i1.lhs_stderr == i2.lhs_stderr);
    CHECK(i1.rhs_stderr == i2.rhs_stderr);
}

TEST_CASE("Ito identity holds within noise plus the discretization band") {
    SimConfig cfg;
    cfg.n_paths = 4000;
    cfg.dt = 1e-3;
    cfg.seed = 8888;

    for (double p : {0.3, 0.5, 0.9}) {
        const ItoReport report = simulate_ito_identity(p, cfg);
        CHECK(report.truncated_paths == 0);
        CHECK(report.n_paths_used == cfg.n_paths);
        const double band =
            3.0 * (report.lhs_stderr + report.rhs_stderr) + std::sqrt(cfg.dt);
        CHECK(std::fabs(report.lhs_estimate - report.rhs_estimate) <= band);

        // lhs targets -E[rho(B_0)] = (q - p) rho(q); the grid-exit overshoot
        // adds an O(sqrt(dt)) bias, hence the widened window.
        const double q = 1.0 - p;
        const double analytic = (q - p) * (q * (1.0 - q) / 2.0);
        CHECK(std::fabs(report.lhs_estimate - analytic) <=
              3.0 * report.lhs_stderr + 0.5 * std::sqrt(cfg.dt));
    }
}

TEST_CASE("Ito lhs vanishes at p = 1/2") {
    SimConfig cfg;
    cfg.n_paths = 4000;
    cfg.dt = 1e-3;
    cfg.seed = 1212;
    const ItoReport report = simulate_ito_identity(0.5, cfg);
    // the overshoot bias cancels between the two sides of B_0 at p = 1/2
    CHECK(std::fabs(report.lhs_estimate) <= 3.0 * report.lhs_stderr);
}

TEST_CASE("conditioning decomposition and reflection collapse") {
    SimConfig cfg;
    cfg.n_paths = 4000;
    cfg.dt = 1e-3;
    cfg.seed = 2468;

    const ConditioningReport r3 = verify_conditioning(0.3, cfg);
    CHECK(r3.decomposition_consistent);
    CHECK(r3.reflection_consistent);
    CHECK(r3.truncated_paths == 0);
    // combined = (q-p) E[tau] with E[tau] = pq = 0.21: positive for p < 1/2
    CHECK(r3.combined > 0.0);
    CHECK(std::fabs(r3.combined - 0.4 * 0.21) <=
          3.0 * r3.combined_stderr + std::sqrt(cfg.dt));

    const ConditioningReport r7 = verify_conditioning(0.7, cfg);
    CHECK(r7.decomposition_consistent);
    CHECK(r7.reflection_consistent);
    CHECK(r7.collapsed < 0.0); // sign flips across p = 1/2
    CHECK(r3.collapsed > 0.0);

    const ConditioningReport r5 = verify_conditioning(0.5, cfg);
    CHECK(r5.collapsed == 0.0); // (p - q) = 0 exactly
    CHECK(std::fabs(r5.combined) <= 3.0 * r5.combined_stderr);
}

TEST_CASE("config validation") {
    SimConfig cfg;
    cfg.n_paths = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.n_paths = 10;
    cfg.dt = 0.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.dt = 1e-3;
    cfg.t_max = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.t_max = 100.0;
    CHECK_NOTHROW(cfg.validate());

    SimConfig ok;
    CHECK_THROWS_AS(simulate_ito_identity(0.0, ok), DegenerateParameter);
    CHECK_THROWS_AS(verify_conditioning(1.0, ok), DegenerateParameter);
}

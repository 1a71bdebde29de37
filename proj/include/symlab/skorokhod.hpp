#pragma once

#include <cstdint>
#include <vector>

#include "symlab/discrete_dist.hpp"
#include "symlab/rng.hpp"

namespace symlab {

/// Randomized first-exit interval straddling zero, or the zero atom
/// (tau = 0). Parameterizes the Skorokhod stopping time.
struct ExitPair {
    bool zero_atom = false;
    double a = 0.0; // < 0 when not zero_atom
    double b = 0.0; // > 0 when not zero_atom
};

/// The exact law of the randomized pair for a centered target mu:
/// P(zero) = mu({0}) and P(a,b) = (b-a) mu(a) mu(b) / m with
/// m = sum_{b>0} b mu(b). Mixing the two-point exit laws of these pairs
/// reproduces mu exactly.
struct ExitPairLaw {
    struct Entry {
        std::size_t neg_index; // atom index of a in mu
        std::size_t pos_index; // atom index of b in mu
        double prob;
        double a;
        double b;
    };
    double zero_mass = 0.0;
    std::vector<Entry> pairs;
};

/// Throws NotCentered unless |mean(mu)| <= 1e-12.
ExitPairLaw exit_pair_law(const DiscreteDist& mu);

ExitPair sample_exit_pair(const DiscreteDist& mu, Xoshiro256& rng);
ExitPair sample_from_law(const ExitPairLaw& law, Xoshiro256& rng);

/// Exact first-exit facts for Brownian motion from (a, b), a < 0 < b:
/// it hits b with probability -a/(b-a), and E[tau] = -a*b.
struct TwoPointExit {
    double p_hit_b;
    double e_tau;
};
TwoPointExit exit_two_point_exact(double a, double b);

struct SimConfig {
    std::int64_t n_paths = 10000;
    double dt = 1e-4;       // Brownian time step for discretized paths
    std::uint64_t seed = 12345;
    double t_max = 1000.0;  // safety horizon; exceeding paths are truncated

    void validate() const;
};

struct EmbeddingReport {
    std::vector<Atom> empirical_dist; // target atoms with empirical exit masses
    double mean_tau = 0.0;
    double mean_tau_stderr = 0.0;
    double target_variance = 0.0;
    std::int64_t n_paths_used = 0;
};

/// Verifies the embedding stochastically but without path discretization:
/// each path draws a pair, picks the exit side from the exact Bernoulli law,
/// and contributes the exact conditional time -a*b.
EmbeddingReport simulate_embedding(const DiscreteDist& mu, const SimConfig& cfg);

/// Both sides of the optional-sampling identity
/// E[rho(B_tau)] - E[rho(B_0)] = (1/2) E[int_0^tau rho''(B_s) ds]
/// for B_0 distributed as centered Bernoulli(p) and tau the first exit of W
/// from (-(1-p), p), estimated by Euler paths with exit detection at grid
/// times (known O(sqrt(dt)) outward bias, absorbed by the caller's tolerance).
struct ItoReport {
    double lhs_estimate = 0.0;
    double lhs_stderr = 0.0;
    double rhs_estimate = 0.0;
    double rhs_stderr = 0.0;
    std::int64_t n_paths_used = 0;
    std::int64_t truncated_paths = 0;
};

ItoReport simulate_ito_identity(double p, const SimConfig& cfg);

/// Conditioning decomposition on shared W-paths:
///   combined   = E[int rho''(B_0 + W_s) ds]   (B_0 drawn per path)
///   from_q     = E[int rho''(q + W_s) ds]
///   from_neg_p = E[int rho''(-p + W_s) ds]
/// with the decomposition p*from_q + q*from_neg_p and the reflection
/// collapse (p-q)*from_q.
struct ConditioningReport {
    double combined = 0.0;
    double combined_stderr = 0.0;
    double from_q = 0.0;
    double from_q_stderr = 0.0;
    double from_neg_p = 0.0;
    double from_neg_p_stderr = 0.0;
    double decomposed = 0.0;
    double decomposed_stderr = 0.0;
    double collapsed = 0.0;
    double collapsed_stderr = 0.0;
    std::int64_t n_paths_used = 0;
    std::int64_t truncated_paths = 0;
    bool decomposition_consistent = false; // |combined - decomposed| <= 3(se_c + se_d)
    bool reflection_consistent = false;    // |decomposed - collapsed| <= 1e-6
};

ConditioningReport verify_conditioning(double p, const SimConfig& cfg);

} // namespace symlab

#include "symlab/skorokhod.hpp"

#include <cmath>
#include <span>

#include "symlab/certificate.hpp"
#include "symlab/errors.hpp"

namespace symlab {

namespace {

constexpr double kCenteredTol = 1e-12;

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};

// Pairwise summation in fixed index order keeps the reduction independent of
// any parallel evaluation schedule.
MeanStderr mean_stderr(const std::vector<double>& samples) {
    MeanStderr r;
    const std::size_t n = samples.size();
    if (n == 0) return r;
    r.mean = pairwise_sum(samples) / static_cast<double>(n);
    if (n == 1) return r;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = samples[i] - r.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    r.std_error = std::sqrt(var / static_cast<double>(n));
    return r;
}

// One Euler path of W until it leaves (a, b) or the horizon. Each rho''
// integrand in `shifts` is accumulated with the left-endpoint rule on the
// shared path. Returns false when the horizon truncated the path.
struct PathResult {
    double w_exit = 0.0;
    bool exited = false;
};

PathResult integrate_exit_path(double a, double b, const SimConfig& cfg, Xoshiro256& rng,
                               std::span<const double> shifts, std::span<double> integrals) {
    const double root_dt = std::sqrt(cfg.dt);
    double w = 0.0;
    PathResult res;
    for (double t = 0.0; t < cfg.t_max; t += cfg.dt) {
        for (std::size_t k = 0; k < shifts.size(); ++k)
            integrals[k] += rho_pp(shifts[k] + w) * cfg.dt;
        w += root_dt * rng.normal();
        if (w <= a || w >= b) {
            res.exited = true;
            break;
        }
    }
    res.w_exit = w;
    return res;
}

} // namespace

void SimConfig::validate() const {
    if (n_paths < 1) throw InvalidArgument("SimConfig: n_paths must be >= 1");
    if (!(dt > 0.0) || dt > 1e-2) throw InvalidArgument("SimConfig: dt must lie in (0, 1e-2]");
    if (!(t_max > 0.0)) throw InvalidArgument("SimConfig: t_max must be positive");
}

ExitPairLaw exit_pair_law(const DiscreteDist& mu) {
    if (std::fabs(mean(mu)) > kCenteredTol)
        throw NotCentered("exit_pair_law: target law has mean " + std::to_string(mean(mu)));

    ExitPairLaw law;
    law.zero_mass = mu.prob_at(Rational(0));

    double pos_moment = 0.0;
    for (const Atom& atom : mu.atoms())
        if (atom.value > Rational(0)) pos_moment += atom.value.to_double() * atom.prob;
    if (pos_moment <= 0.0) return law; // point mass at zero

    const auto& atoms = mu.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i].value < Rational(0))) continue;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            if (!(atoms[j].value > Rational(0))) continue;
            const double a = atoms[i].value.to_double();
            const double b = atoms[j].value.to_double();
            law.pairs.push_back({i, j, (b - a) * atoms[i].prob * atoms[j].prob / pos_moment, a, b});
        }
    }
    return law;
}

ExitPair sample_from_law(const ExitPairLaw& law, Xoshiro256& rng) {
    const double u = rng.uniform01();
    if (u < law.zero_mass || law.pairs.empty()) return ExitPair{true, 0.0, 0.0};
    double cum = law.zero_mass;
    for (const auto& entry : law.pairs) {
        cum += entry.prob;
        if (u < cum) return ExitPair{false, entry.a, entry.b};
    }
    const auto& last = law.pairs.back(); // rounding fell off the end
    return ExitPair{false, last.a, last.b};
}

ExitPair sample_exit_pair(const DiscreteDist& mu, Xoshiro256& rng) {
    const ExitPairLaw law = exit_pair_law(mu);
    return sample_from_law(law, rng);
}

TwoPointExit exit_two_point_exact(double a, double b) {
    if (!(a < 0.0 && 0.0 < b))
        throw InvalidInterval("exit_two_point_exact: need a < 0 < b, got a=" +
                              std::to_string(a) + " b=" + std::to_string(b));
    return TwoPointExit{-a / (b - a), -a * b};
}

EmbeddingReport simulate_embedding(const DiscreteDist& mu, const SimConfig& cfg) {
    cfg.validate();
    const ExitPairLaw law = exit_pair_law(mu);

    std::vector<double> tau_samples(static_cast<std::size_t>(cfg.n_paths), 0.0);
    std::vector<std::int64_t> counts(mu.size(), 0);
    std::size_t zero_index = mu.size();
    for (std::size_t k = 0; k < mu.size(); ++k)
        if (mu.atoms()[k].value.is_zero()) zero_index = k;

    for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
        Xoshiro256 rng = Xoshiro256::substream(cfg.seed, static_cast<std::uint64_t>(i));
        const double u = rng.uniform01();
        if (u < law.zero_mass || law.pairs.empty()) {
            counts[zero_index] += 1;
            continue; // tau = 0 exactly
        }
        double cum = law.zero_mass;
        const ExitPairLaw::Entry* chosen = &law.pairs.back();
        for (const auto& entry : law.pairs) {
            cum += entry.prob;
            if (u < cum) {
                chosen = &entry;
                break;
            }
        }
        const TwoPointExit exact = exit_two_point_exact(chosen->a, chosen->b);
        tau_samples[static_cast<std::size_t>(i)] = exact.e_tau;
        const bool hit_b = rng.uniform01() < exact.p_hit_b;
        counts[hit_b ? chosen->pos_index : chosen->neg_index] += 1;
    }

    EmbeddingReport report;
    const MeanStderr tau = mean_stderr(tau_samples);
    report.mean_tau = tau.mean;
    report.mean_tau_stderr = tau.std_error;
    report.target_variance = variance(mu);
    report.n_paths_used = cfg.n_paths;
    report.empirical_dist.reserve(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k)
        report.empirical_dist.push_back(
            {mu.atoms()[k].value,
             static_cast<double>(counts[k]) / static_cast<double>(cfg.n_paths)});
    return report;
}

ItoReport simulate_ito_identity(double p, const SimConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
        throw DegenerateParameter("simulate_ito_identity: p must lie in (0,1)");

    // B_0 ~ X - E[X] and tau = first exit of W from (-q, p), the embedding of
    // the symmetrizer Y = -X. All constants derive from one snapped p.
    const DiscreteDist b0_dist = center(bernoulli(p));
    const ExitPairLaw law = exit_pair_law(center(negate(bernoulli(p))));
    if (law.pairs.size() != 1)
        throw SolverInconsistency("simulate_ito_identity: expected a single exit pair");
    const double a = law.pairs.front().a;
    const double b = law.pairs.front().b;
    const double b0_low = b0_dist.atoms()[0].value.to_double();  // -p
    const double b0_high = b0_dist.atoms()[1].value.to_double(); // q
    const double prob_low = b0_dist.atoms()[0].prob;             // q

    const std::size_t n = static_cast<std::size_t>(cfg.n_paths);
    std::vector<double> lhs(n, 0.0), rhs(n, 0.0);
    ItoReport report;
    report.n_paths_used = cfg.n_paths;

    for (std::size_t i = 0; i < n; ++i) {
        Xoshiro256 rng = Xoshiro256::substream(cfg.seed, i);
        const double b0 = rng.uniform01() < prob_low ? b0_low : b0_high;
        double integral = 0.0;
        const PathResult path =
            integrate_exit_path(a, b, cfg, rng, std::span(&b0, 1), std::span(&integral, 1));
        if (!path.exited) report.truncated_paths += 1;
        lhs[i] = rho(b0 + path.w_exit) - rho(b0);
        rhs[i] = 0.5 * integral;
    }

    const MeanStderr l = mean_stderr(lhs);
    const MeanStderr r = mean_stderr(rhs);
    report.lhs_estimate = l.mean;
    report.lhs_stderr = l.std_error;
    report.rhs_estimate = r.mean;
    report.rhs_stderr = r.std_error;
    return report;
}

ConditioningReport verify_conditioning(double p, const SimConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
        throw DegenerateParameter("verify_conditioning: p must lie in (0,1)");

    const DiscreteDist b0_dist = center(bernoulli(p));
    const ExitPairLaw law = exit_pair_law(center(negate(bernoulli(p))));
    const double a = law.pairs.front().a;
    const double b = law.pairs.front().b;
    const double shift_neg_p = b0_dist.atoms()[0].value.to_double(); // -p
    const double shift_q = b0_dist.atoms()[1].value.to_double();     // q
    const double pd = b0_dist.atoms()[1].prob;
    const double qd = b0_dist.atoms()[0].prob;

    const std::size_t n = static_cast<std::size_t>(cfg.n_paths);
    std::vector<double> combined(n), from_q(n), from_neg_p(n), decomposed(n), collapsed(n);
    ConditioningReport report;
    report.n_paths_used = cfg.n_paths;

    for (std::size_t i = 0; i < n; ++i) {
        Xoshiro256 rng = Xoshiro256::substream(cfg.seed, i);
        const bool start_at_q = rng.uniform01() < pd;
        const double shifts[2] = {shift_q, shift_neg_p};
        double integrals[2] = {0.0, 0.0};
        const PathResult path = integrate_exit_path(a, b, cfg, rng, shifts, integrals);
        if (!path.exited) report.truncated_paths += 1;
        from_q[i] = integrals[0];
        from_neg_p[i] = integrals[1];
        combined[i] = start_at_q ? integrals[0] : integrals[1];
        decomposed[i] = pd * integrals[0] + qd * integrals[1];
        collapsed[i] = (pd - qd) * integrals[0];
    }

    const MeanStderr c = mean_stderr(combined);
    const MeanStderr fq = mean_stderr(from_q);
    const MeanStderr fn = mean_stderr(from_neg_p);
    const MeanStderr d = mean_stderr(decomposed);
    const MeanStderr col = mean_stderr(collapsed);
    report.combined = c.mean;
    report.combined_stderr = c.std_error;
    report.from_q = fq.mean;
    report.from_q_stderr = fq.std_error;
    report.from_neg_p = fn.mean;
    report.from_neg_p_stderr = fn.std_error;
    report.decomposed = d.mean;
    report.decomposed_stderr = d.std_error;
    report.collapsed = col.mean;
    report.collapsed_stderr = col.std_error;
    report.decomposition_consistent =
        std::fabs(report.combined - report.decomposed) <=
        3.0 * (report.combined_stderr + report.decomposed_stderr);
    report.reflection_consistent = std::fabs(report.decomposed - report.collapsed) <= 1e-6;
    return report;
}

} // namespace symlab

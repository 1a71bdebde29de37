#pragma once

#include <cstdint>
#include <vector>

#include "symlab/rational.hpp"

namespace symlab {

struct Atom {
    Rational value;
    double prob;
};

/// Finite-support probability distribution on exact rational atoms.
/// Values are strictly increasing and exact; probabilities are doubles that
/// must be nonnegative and sum to 1 within kMassTolerance. Immutable after
/// construction, so instances are freely shareable across threads.
class DiscreteDist {
public:
    static constexpr double kMassTolerance = 1e-12;

    /// Validating constructor; atoms may arrive unsorted but values must be
    /// pairwise distinct.
    static DiscreteDist from_atoms(std::vector<Atom> atoms);

    static DiscreteDist point_mass(const Rational& value);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    /// Probability attached to an exact value, 0 if absent.
    double prob_at(const Rational& value) const;

private:
    explicit DiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
    std::vector<Atom> atoms_;
};

/// Bernoulli(p) law {(0, 1-p), (1, p)}. Throws DegenerateParameter unless
/// 0 < p < 1.
DiscreteDist bernoulli(const Rational& p);

/// Convenience wrapper: snaps p to the nearest rational with denominator at
/// most den_limit, then defers to the exact constructor.
DiscreteDist bernoulli(double p, std::int64_t den_limit = 1'000'000);

double mean(const DiscreteDist& d);
double variance(const DiscreteDist& d);

DiscreteDist negate(const DiscreteDist& d);
DiscreteDist shift(const DiscreteDist& d, const Rational& offset);

/// Mean as an exact rational. Each probability is snapped to a bounded-
/// denominator rational; if any float probability is farther than 1e-14 from
/// its snap the mean is deemed irrational and NonRepresentableMean is thrown.
Rational rational_mean(const DiscreteDist& d, std::int64_t den_limit = 1'000'000);

/// shift(d, -rational_mean(d)); the result has rational mean exactly zero.
DiscreteDist center(const DiscreteDist& d);

/// Law of the sum of independent draws; colliding exact sums merge.
DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b);

/// True iff every atom (v, p) is matched by mass within tol at exactly -v.
bool is_symmetric_about_zero(const DiscreteDist& d, double tol);

} // namespace symlab

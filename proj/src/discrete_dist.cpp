#include "symlab/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "symlab/errors.hpp"

namespace symlab {

DiscreteDist DiscreteDist::from_atoms(std::vector<Atom> atoms) {
    if (atoms.empty()) throw InvalidArgument("DiscreteDist: no atoms");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0 && atoms[i - 1].value == atoms[i].value)
            throw InvalidArgument("DiscreteDist: duplicate value " + atoms[i].value.to_string());
        if (!(atoms[i].prob >= 0.0))
            throw InvalidArgument("DiscreteDist: negative probability at " +
                                  atoms[i].value.to_string());
        total += atoms[i].prob;
    }
    if (std::fabs(total - 1.0) > kMassTolerance)
        throw InvalidArgument("DiscreteDist: total mass " + std::to_string(total));
    return DiscreteDist(std::move(atoms));
}

DiscreteDist DiscreteDist::point_mass(const Rational& value) {
    return from_atoms({{value, 1.0}});
}

double DiscreteDist::prob_at(const Rational& value) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), value,
                               [](const Atom& a, const Rational& v) { return a.value < v; });
    if (it != atoms_.end() && it->value == value) return it->prob;
    return 0.0;
}

DiscreteDist bernoulli(const Rational& p) {
    if (!(Rational(0) < p && p < Rational(1)))
        throw DegenerateParameter("bernoulli: p must lie in (0,1), got " + p.to_string());
    const double pf = p.to_double();
    return DiscreteDist::from_atoms({{Rational(0), 1.0 - pf}, {Rational(1), pf}});
}

DiscreteDist bernoulli(double p, std::int64_t den_limit) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
        throw DegenerateParameter("bernoulli: p must lie in (0,1)");
    return bernoulli(Rational::snap(p, den_limit));
}

double mean(const DiscreteDist& d) {
    double m = 0.0;
    for (const Atom& a : d.atoms()) m += a.value.to_double() * a.prob;
    return m;
}

double variance(const DiscreteDist& d) {
    const double m = mean(d);
    double s = 0.0;
    for (const Atom& a : d.atoms()) {
        const double v = a.value.to_double();
        s += v * v * a.prob;
    }
    return std::max(0.0, s - m * m);
}

DiscreteDist negate(const DiscreteDist& d) {
    std::vector<Atom> atoms;
    atoms.reserve(d.size());
    for (const Atom& a : d.atoms()) atoms.push_back({-a.value, a.prob});
    return DiscreteDist::from_atoms(std::move(atoms));
}

DiscreteDist shift(const DiscreteDist& d, const Rational& offset) {
    std::vector<Atom> atoms;
    atoms.reserve(d.size());
    for (const Atom& a : d.atoms()) atoms.push_back({a.value + offset, a.prob});
    return DiscreteDist::from_atoms(std::move(atoms));
}

Rational rational_mean(const DiscreteDist& d, std::int64_t den_limit) {
    // Probabilities from the exact pipeline sit within a few ulps of true
    // rationals; anything farther than 1e-14 from its snap is treated as
    // irrational rather than silently approximated.
    Rational weighted(0);
    Rational total(0);
    for (const Atom& a : d.atoms()) {
        const Rational p = Rational::snap(a.prob, den_limit);
        if (std::fabs(p.to_double() - a.prob) > 1e-14)
            throw NonRepresentableMean("rational_mean: probability " + std::to_string(a.prob) +
                                       " has no rational representation with denominator <= " +
                                       std::to_string(den_limit));
        weighted = weighted + a.value * p;
        total = total + p;
    }
    if (total.is_zero()) throw NonRepresentableMean("rational_mean: zero snapped mass");
    return weighted / total;
}

DiscreteDist center(const DiscreteDist& d) {
    return shift(d, -rational_mean(d));
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b) {
    std::map<Rational, double> sums;
    for (const Atom& x : a.atoms())
        for (const Atom& y : b.atoms()) sums[x.value + y.value] += x.prob * y.prob;
    std::vector<Atom> atoms;
    atoms.reserve(sums.size());
    // Sub-1e-15 collision masses are kept; pruning here could mask constraint
    // violations downstream.
    for (const auto& [v, p] : sums) atoms.push_back({v, p});
    return DiscreteDist::from_atoms(std::move(atoms));
}

bool is_symmetric_about_zero(const DiscreteDist& d, double tol) {
    if (!(tol >= 0.0)) throw InvalidArgument("is_symmetric_about_zero: tol must be >= 0");
    for (const Atom& a : d.atoms()) {
        const double mirrored = d.prob_at(-a.value);
        if (std::fabs(a.prob - mirrored) > tol) return false;
    }
    return true;
}

} // namespace symlab

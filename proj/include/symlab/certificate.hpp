#pragma once

#include <cstdint>

namespace symlab {

/// Odd, anti-periodic, piecewise-parabolic certificate function:
/// rho(x) = x(1-x)/2 on [0,1], rho(1+x) = -rho(x), rho(-x) = -rho(x).
/// Evaluated in closed form as (-1)^floor(x) * f(1-f)/2 with f = x - floor(x).
/// Throws InvalidArgument on non-finite input.
double rho(double x);

/// Second derivative of rho: (-1)^(floor(x)+1) off the integers, 0 at
/// integers by convention (the discontinuity set has measure zero, so time
/// integrals never see it).
double rho_pp(double x);

/// Lower bound 2*rho(1-p) on the variance of any symmetrizer of
/// Bernoulli(p); algebraically equal to p(1-p). Throws DegenerateParameter
/// unless 0 < p < 1.
double certificate_bound(double p);

/// Worst observed violations of the defining properties of rho over random
/// samples. All fields are nonnegative; for a correct implementation every
/// violation stays at rounding level.
struct CertificateReport {
    std::int64_t samples_checked = 0;
    double max_oddness_violation = 0.0;      // |rho(-x) + rho(x)|
    double max_antiperiod_violation = 0.0;   // |rho(1+x) + rho(x)|
    double max_second_derivative_abs = 0.0;  // max(|rho''(x)| - 1, 0)
    double max_reflection_violation = 0.0;   // |rho''(-p+x) + rho''(q+x)|
};

/// Samples x uniformly on [-5, 5]; rho'' checks skip draws whose shifted
/// arguments land within 1e-9 of an integer.
CertificateReport verify_certificate(std::int64_t n_samples, std::uint64_t seed, double p);

} // namespace symlab

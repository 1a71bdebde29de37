#include "symlab/certificate.hpp"

#include <algorithm>
#include <cmath>

#include "symlab/errors.hpp"
#include "symlab/rng.hpp"

namespace symlab {

namespace {

// rho and rho'' have period 2; fold large arguments into (-2, 2) so the
// floor below never overflows an int64. fmod is exact for doubles.
double fold(double x) {
    return std::fabs(x) >= 4.0 ? std::fmod(x, 2.0) : x;
}

bool floor_is_odd(double x) {
    // mathematical floor, not truncation: floor(-0.5) = -1
    return (static_cast<std::int64_t>(std::floor(x)) % 2) != 0;
}

double dist_to_integer(double x) {
    return std::fabs(x - std::round(x));
}

} // namespace

double rho(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("rho: non-finite input");
    const double r = fold(x);
    const double f = r - std::floor(r);
    const double value = f * (1.0 - f) / 2.0;
    return floor_is_odd(r) ? -value : value;
}

double rho_pp(double x) {
    if (!std::isfinite(x)) return 0.0;
    const double r = fold(x);
    if (r == std::floor(r)) return 0.0;
    return floor_is_odd(r) ? 1.0 : -1.0;
}

double certificate_bound(double p) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
        throw DegenerateParameter("certificate_bound: p must lie in (0,1)");
    return 2.0 * rho(1.0 - p);
}

CertificateReport verify_certificate(std::int64_t n_samples, std::uint64_t seed, double p) {
    if (n_samples < 1) throw InvalidArgument("verify_certificate: n_samples must be >= 1");
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
        throw DegenerateParameter("verify_certificate: p must lie in (0,1)");

    const double q = 1.0 - p;
    constexpr double kIntegerGuard = 1e-9;
    Xoshiro256 rng(seed);
    CertificateReport report;
    report.samples_checked = n_samples;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const double x = rng.uniform(-5.0, 5.0);
        report.max_oddness_violation =
            std::max(report.max_oddness_violation, std::fabs(rho(-x) + rho(x)));
        report.max_antiperiod_violation =
            std::max(report.max_antiperiod_violation, std::fabs(rho(1.0 + x) + rho(x)));
        if (dist_to_integer(x) > kIntegerGuard && dist_to_integer(-p + x) > kIntegerGuard &&
            dist_to_integer(q + x) > kIntegerGuard) {
            report.max_second_derivative_abs =
                std::max(report.max_second_derivative_abs, std::fabs(rho_pp(x)) - 1.0);
            report.max_reflection_violation =
                std::max(report.max_reflection_violation, std::fabs(rho_pp(-p + x) + rho_pp(q + x)));
        }
    }
    report.max_second_derivative_abs = std::max(report.max_second_derivative_abs, 0.0);
    return report;
}

} // namespace symlab

#include "symlab/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace symlab {

namespace {

std::int64_t parse_int(const std::string& text) {
    if (text.empty()) throw InvalidArgument("Rational::parse: empty component");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument("Rational::parse: not an integer: '" + text + "'");
    }
    if (pos != text.size())
        throw InvalidArgument("Rational::parse: trailing characters in '" + text + "'");
    return v;
}

} // namespace

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    const std::int64_t num = parse_int(text.substr(0, slash));
    const std::int64_t den = parse_int(text.substr(slash + 1));
    return Rational(num, den);
}

Rational Rational::snap(double x, std::int64_t den_limit) {
    if (!std::isfinite(x)) throw InvalidArgument("Rational::snap: non-finite input");
    if (den_limit < 1) throw InvalidArgument("Rational::snap: den_limit must be >= 1");
    const bool negative = x < 0;
    double v = std::fabs(x);
    if (v > 1e12) throw InvalidArgument("Rational::snap: magnitude too large");

    // Continued-fraction walk; h/k is the current convergent.
    std::int64_t h_mm = 0, k_mm = 1; // convergent i-2
    std::int64_t h_m = 1, k_m = 0;   // convergent i-1
    std::int64_t h = 0, k = 1;
    double rest = v;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_f = std::floor(rest);
        std::int64_t a = static_cast<std::int64_t>(a_f);
        if (k_m > 0 && a > (den_limit - k_mm) / k_m) {
            // Full step overflows the denominator budget. Take the largest
            // semiconvergent that fits and keep whichever is closer.
            const std::int64_t t = (den_limit - k_mm) / k_m;
            if (t >= 1) {
                const Rational semi = make(i128(t) * h_m + h_mm, i128(t) * k_m + k_mm);
                const Rational conv = make(h_m, k_m);
                const double e_semi = std::fabs(v - semi.to_double());
                const double e_conv = std::fabs(v - conv.to_double());
                return negative ? -(e_semi < e_conv ? semi : conv)
                                : (e_semi < e_conv ? semi : conv);
            }
            return negative ? -make(h_m, k_m) : make(h_m, k_m);
        }
        h = narrow(i128(a) * h_m + h_mm);
        k = narrow(i128(a) * k_m + k_mm);
        h_mm = h_m;
        k_mm = k_m;
        h_m = h;
        k_m = k;
        const double frac = rest - a_f;
        if (frac < 1e-15) break; // exact to double precision
        rest = 1.0 / frac;
    }
    return negative ? -make(h, k) : make(h, k);
}

} // namespace symlab

#include "gibbspart/special.hpp"

#include <cmath>
#include <limits>

namespace gibbspart {

double SignedLog::value() const {
    if (sign == 0) return 0.0;
    double m = std::exp(log_abs);
    return sign > 0 ? m : -m;
}

double sin_pi(double x) {
    double n = std::nearbyint(x);
    double r = x - n; // exact for |x| < 2^52
    double s = std::sin(M_PI * r);
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

SignedLog log_gamma_signed(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw PoleError("log_gamma_signed: pole at non-positive integer " +
                        std::to_string(x));
    if (x > 0.0) return {1, std::lgamma(x)};
    double log_abs = std::log(M_PI) - std::log(std::abs(sin_pi(x))) - std::lgamma(1.0 - x);
    long long k = static_cast<long long>(std::ceil(-x));
    int sign = (k % 2 == 0) ? 1 : -1;
    return {sign, log_abs};
}

double log_factorial(int n) {
    if (n < 0) throw ParamError("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) throw ParamError("log_binomial: k outside [0, n]");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

ExtVal factorial_poly(double x, int i, double a, FactKind kind, Mode mode) {
    if (i < 0) throw ParamError("factorial_poly: order must be >= 0");
    double step = kind == FactKind::Rising ? a : -a;
    if (mode == Mode::Exact) {
        Rational prod = 1;
        Rational rx(x), rs(step);
        for (int k = 0; k < i; ++k) prod *= rx + k * rs;
        return ExtVal::from_rational(std::move(prod));
    }
    int sign = 1;
    double log_mag = 0.0;
    for (int k = 0; k < i; ++k) {
        double f = x + k * step;
        if (f == 0.0) return ExtVal::zero();
        if (f < 0.0) {
            sign = -sign;
            f = -f;
        }
        log_mag += std::log(f);
    }
    return ExtVal::from_sign_log(sign, log_mag);
}

double harmonic_number(int r) {
    if (r < 0) throw ParamError("harmonic_number: negative index");
    double h = 0.0;
    for (int k = 1; k <= r; ++k) h += 1.0 / k;
    return h;
}

namespace {

// Lower regularized gamma P(s,x) by series, for x < s + 1.
double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Upper regularized gamma Q(s,x) by Lentz continued fraction, for x >= s + 1.
double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

} // namespace

double gamma_q(double s, double x) {
    if (s <= 0.0 || x < 0.0) throw ParamError("gamma_q: requires s > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_cf(s, x);
}

double chi_square_sf(double stat, int dof) {
    if (dof <= 0) throw ParamError("chi_square_sf: dof must be positive");
    return gamma_q(0.5 * dof, 0.5 * stat);
}

} // namespace gibbspart

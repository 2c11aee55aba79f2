#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gibbspart/errors.hpp"

namespace gibbspart {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Precision mode for distribution/table computations.  Auto resolves to
// Exact for small n (where rational arithmetic is cheap and roundoff-free)
// and Float above the cap.
enum class Mode { Auto, Float, Exact };

inline constexpr int kDefaultExactCap = 30;

inline Mode resolve_mode(Mode m, int n, int exact_cap = kDefaultExactCap) {
    if (m != Mode::Auto) return m;
    return n <= exact_cap ? Mode::Exact : Mode::Float;
}

// ln(x) for a positive big integer, accurate to ~1e-15 relative.
double log_bigint(const BigInt& x);

// ln|q| for a nonzero rational.
double log_abs_rational(const Rational& q);

int sign_of(const Rational& q);

// Rational -> double through the log view when the direct conversion would
// overflow; keeps sign and magnitude sane for astronomically large values.
double rational_to_double(const Rational& q);

// Signed log-magnitude scalar.  A value is sign in {-1,0,+1} plus
// log_mag = ln|value| (ignored when sign==0; zero is a distinct state and
// never encoded as log_mag = -inf).  Values built from rationals carry the
// rational alongside; arithmetic preserves the payload whenever every
// operand has one, so exactness propagates through whole computations that
// start from exact inputs.
class ExtVal {
public:
    ExtVal() : sign_(0), log_mag_(0.0) {}

    static ExtVal zero() { return ExtVal(); }
    static ExtVal one() { return from_sign_log(1, 0.0); }
    static ExtVal from_sign_log(int sign, double log_mag);
    static ExtVal from_double(double x);          // float-only view
    static ExtVal from_rational(Rational q);      // exact + synced float view
    static ExtVal from_double_exact(double x) { return from_rational(Rational(x)); }
    static ExtVal from_int(long long v) { return from_rational(Rational(v)); }

    int sign() const { return sign_; }
    double log_mag() const { return log_mag_; }
    bool is_zero() const { return sign_ == 0; }
    bool has_exact() const { return exact_.has_value(); }
    const Rational& exact() const;
    double to_double() const;

    ExtVal strip_exact() const;

    ExtVal operator-() const;
    friend ExtVal operator*(const ExtVal& a, const ExtVal& b);
    friend ExtVal operator/(const ExtVal& a, const ExtVal& b);
    friend ExtVal operator+(const ExtVal& a, const ExtVal& b);
    friend ExtVal operator-(const ExtVal& a, const ExtVal& b);

private:
    int8_t sign_;
    double log_mag_;
    std::optional<Rational> exact_;
};

// Sum of signed log-space terms.  A sum whose terms all carry exact
// payloads is done in rationals (this subsumes the cancellation fallback:
// whenever opposite-sign terms could cancel catastrophically and exact
// payloads exist, the exact path is what runs).  Otherwise the float path
// shifts by the largest magnitude and accumulates with Neumaier
// compensation; relative error ~1e-15 absent cancellation.  Empty input
// sums to zero.
ExtVal signed_log_sum(std::span<const ExtVal> terms);

// Streaming accumulator for nonnegative log-space terms: keeps a running
// maximum and a rescaled mantissa so each add costs one exp().
class LogAccumulator {
public:
    void add_log(double log_term);
    bool empty() const { return empty_; }
    double log_total() const; // -inf when empty
private:
    double max_ = 0.0;
    double sum_ = 0.0;
    bool empty_ = true;
};

// Signed variant: two nonnegative accumulators combined at the end.
class SignedLogAccumulator {
public:
    void add(int sign, double log_term);
    // Resulting (sign, log_mag); cancellation below relative 1e-9 of the
    // larger part collapses to zero.
    std::pair<int, double> result() const;
private:
    LogAccumulator pos_, neg_;
};

} // namespace gibbspart

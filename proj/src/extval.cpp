#include "gibbspart/extval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gibbspart {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

double log_bigint(const BigInt& x) {
    if (x <= 0) throw Error("log_bigint: argument must be positive");
    // Doubles hold ~1024 bits of exponent; shift the value into range and
    // add back the shift in log space.  Truncation keeps >900 leading bits,
    // far beyond double precision.
    unsigned bits = boost::multiprecision::msb(x); // index of highest set bit
    if (bits <= 900) return std::log(x.convert_to<double>());
    unsigned shift = bits - 900;
    BigInt reduced = x >> shift;
    return std::log(reduced.convert_to<double>()) + shift * 0.6931471805599453094;
}

double log_abs_rational(const Rational& q) {
    if (q == 0) throw Error("log_abs_rational: zero has no log magnitude");
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (num < 0) num = -num;
    return log_bigint(num) - log_bigint(den);
}

int sign_of(const Rational& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

double rational_to_double(const Rational& q) {
    if (q == 0) return 0.0;
    double lm = log_abs_rational(q);
    if (std::abs(lm) < 690.0) return q.convert_to<double>();
    double mag = std::exp(lm); // overflows to inf / underflows to 0 as appropriate
    return sign_of(q) > 0 ? mag : -mag;
}

ExtVal ExtVal::from_sign_log(int sign, double log_mag) {
    if (sign != -1 && sign != 0 && sign != 1)
        throw Error("ExtVal: sign must be -1, 0 or +1");
    ExtVal v;
    v.sign_ = static_cast<int8_t>(sign);
    v.log_mag_ = sign == 0 ? 0.0 : log_mag;
    if (sign != 0 && !std::isfinite(log_mag) && log_mag == -kInf)
        return zero(); // collapse exp(-inf) to the canonical zero state
    return v;
}

ExtVal ExtVal::from_double(double x) {
    if (!std::isfinite(x)) throw Error("ExtVal: non-finite double");
    if (x == 0.0) return zero();
    return from_sign_log(x > 0 ? 1 : -1, std::log(std::abs(x)));
}

ExtVal ExtVal::from_rational(Rational q) {
    ExtVal v;
    int s = sign_of(q);
    v.sign_ = static_cast<int8_t>(s);
    v.log_mag_ = s == 0 ? 0.0 : log_abs_rational(q);
    v.exact_ = std::move(q);
    return v;
}

const Rational& ExtVal::exact() const {
    if (!exact_) throw Error("ExtVal: no exact payload");
    return *exact_;
}

double ExtVal::to_double() const {
    if (sign_ == 0) return 0.0;
    if (exact_) return rational_to_double(*exact_);
    double mag = std::exp(log_mag_);
    return sign_ > 0 ? mag : -mag;
}

ExtVal ExtVal::strip_exact() const {
    ExtVal v = *this;
    v.exact_.reset();
    return v;
}

ExtVal ExtVal::operator-() const {
    ExtVal v = *this;
    v.sign_ = static_cast<int8_t>(-v.sign_);
    if (v.exact_) *v.exact_ = -*v.exact_;
    return v;
}

ExtVal operator*(const ExtVal& a, const ExtVal& b) {
    if (a.sign_ == 0 || b.sign_ == 0) {
        // Exact zero keeps exactness when both sides are exact-capable.
        if (a.exact_ && b.exact_) return ExtVal::from_rational(Rational(0));
        return ExtVal::zero();
    }
    if (a.exact_ && b.exact_) return ExtVal::from_rational(*a.exact_ * *b.exact_);
    return ExtVal::from_sign_log(a.sign_ * b.sign_, a.log_mag_ + b.log_mag_);
}

ExtVal operator/(const ExtVal& a, const ExtVal& b) {
    if (b.sign_ == 0) throw Error("ExtVal: division by zero");
    if (a.sign_ == 0) {
        if (a.exact_ && b.exact_) return ExtVal::from_rational(Rational(0));
        return ExtVal::zero();
    }
    if (a.exact_ && b.exact_) return ExtVal::from_rational(*a.exact_ / *b.exact_);
    return ExtVal::from_sign_log(a.sign_ * b.sign_, a.log_mag_ - b.log_mag_);
}

ExtVal operator+(const ExtVal& a, const ExtVal& b) {
    ExtVal terms[2] = {a, b};
    return signed_log_sum(terms);
}

ExtVal operator-(const ExtVal& a, const ExtVal& b) {
    ExtVal terms[2] = {a, -b};
    return signed_log_sum(terms);
}

ExtVal signed_log_sum(std::span<const ExtVal> terms) {
    bool all_exact = true;
    bool any_nonzero = false;
    for (const ExtVal& t : terms) {
        if (!t.has_exact()) all_exact = false;
        if (!t.is_zero()) any_nonzero = true;
    }
    if (!any_nonzero) {
        return all_exact && !terms.empty() ? ExtVal::from_rational(Rational(0))
                                           : ExtVal::zero();
    }
    if (all_exact) {
        Rational s = 0;
        for (const ExtVal& t : terms) s += t.exact();
        return ExtVal::from_rational(std::move(s));
    }

    // Detect near-cancellation of the dominant opposite-sign terms; only an
    // exact redo can rescue those, and we just established it is impossible.
    double max_pos = -kInf, max_neg = -kInf;
    for (const ExtVal& t : terms) {
        if (t.sign() > 0) max_pos = std::max(max_pos, t.log_mag());
        if (t.sign() < 0) max_neg = std::max(max_neg, t.log_mag());
    }
    double shift = std::max(max_pos, max_neg);

    // Neumaier-compensated accumulation of exp(log - shift) with sign.
    double sum = 0.0, comp = 0.0;
    for (const ExtVal& t : terms) {
        if (t.is_zero()) continue;
        double x = std::exp(t.log_mag() - shift);
        if (t.sign() < 0) x = -x;
        double total = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - total) + x;
        else
            comp += (x - total) + sum;
        sum = total;
    }
    double res = sum + comp;
    if (res == 0.0) return ExtVal::zero();
    return ExtVal::from_sign_log(res > 0 ? 1 : -1, shift + std::log(std::abs(res)));
}

void LogAccumulator::add_log(double log_term) {
    if (log_term == -kInf) return;
    if (empty_) {
        max_ = log_term;
        sum_ = 1.0;
        empty_ = false;
        return;
    }
    if (log_term <= max_) {
        sum_ += std::exp(log_term - max_);
    } else {
        sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
        max_ = log_term;
    }
}

double LogAccumulator::log_total() const {
    if (empty_) return -kInf;
    return max_ + std::log(sum_);
}

void SignedLogAccumulator::add(int sign, double log_term) {
    if (sign > 0)
        pos_.add_log(log_term);
    else if (sign < 0)
        neg_.add_log(log_term);
}

std::pair<int, double> SignedLogAccumulator::result() const {
    double lp = pos_.log_total();
    double ln = neg_.log_total();
    if (lp == -kInf && ln == -kInf) return {0, 0.0};
    if (ln == -kInf) return {1, lp};
    if (lp == -kInf) return {-1, ln};
    double d = lp - ln;
    if (d > 0) {
        double delta = -std::expm1(-d); // 1 - exp(ln - lp)
        if (delta <= 0.0) return {0, 0.0};
        return {1, lp + std::log(delta)};
    }
    double delta = -std::expm1(d);
    if (delta <= 0.0) return {0, 0.0};
    return {-1, ln + std::log(delta)};
}

} // namespace gibbspart

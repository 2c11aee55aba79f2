#include "gibbspart/dist.hpp"

#include <cmath>

#include "gibbspart/special.hpp"

namespace gibbspart {

namespace {

// Sign-unsafe models (custom with negative weights or v) cannot use the
// float path: cancellation between signed series would be silent.
Mode dist_mode(const GibbsModel& model, int n, Mode mode) {
    if (!model.nonnegative()) {
        if (mode == Mode::Float)
            throw ModelError("model with negative weights/v requires exact mode");
        return Mode::Exact;
    }
    return resolve_mode(mode, n);
}

void check_n(const GibbsModel& model, int n) {
    if (n < 1) throw RangeError("n must be >= 1");
    if (n > model.max_n())
        throw RangeError("n exceeds the range supported by this model");
}

double to_probability(const ExtVal& p) {
    double x = p.to_double();
    if (x >= 0.0 && x <= 1.0) return x;
    if (x < 0.0 && x >= -1e-9) return 0.0;
    if (x > 1.0 && x <= 1.0 + 1e-9) return 1.0;
    throw NormalizationError("probability out of [0,1]: " + std::to_string(x));
}

ExtVal exact_one(Mode mode) {
    return mode == Mode::Exact ? ExtVal::from_rational(Rational(1)) : ExtVal::one();
}

} // namespace

void validate(const StatQuery& q) {
    check_n(q.model, q.n);
    if (q.stat != StatKind::Blocks) {
        if (q.r < 1 || q.r > q.n) throw RangeError("need 1 <= r <= n");
    }
    if (q.stat == StatKind::IthLargest && q.i < 1) throw RangeError("need i >= 1");
    if (q.cond_k && (*q.cond_k < 1 || *q.cond_k > q.n))
        throw RangeError("need 1 <= cond_k <= n");
}

std::vector<ExtVal> blocks_pmf_extval(const GibbsModel& model, int n, Mode mode) {
    check_n(model, n);
    mode = dist_mode(model, n, mode);
    auto table = bell_table(model.weights(), n, mode);
    std::vector<ExtVal> pmf(n);
    for (int k = 1; k <= n; ++k) pmf[k - 1] = model.v(n, k, mode) * table->at(n, k);
    ExtVal total = signed_log_sum(pmf);
    if (total.has_exact()) {
        if (total.exact() != 1)
            throw NormalizationError("block-count pmf does not sum to 1 exactly");
    } else {
        double s = total.to_double();
        if (std::abs(s - 1.0) > 1e-8)
            throw NormalizationError("block-count pmf sums to " + std::to_string(s));
    }
    return pmf;
}

std::vector<double> blocks_pmf(const GibbsModel& model, int n, Mode mode) {
    std::vector<ExtVal> pmf = blocks_pmf_extval(model, n, mode);
    std::vector<double> out(pmf.size());
    for (size_t k = 0; k < pmf.size(); ++k) out[k] = to_probability(pmf[k]);
    return out;
}

ExtVal extreme_cdf_extval(const GibbsModel& model, int n, int i, int r, Mode mode) {
    check_n(model, n);
    if (r < 1 || r > n) throw RangeError("need 1 <= r <= n");
    if (i < 1) throw RangeError("need i >= 1");
    mode = dist_mode(model, n, mode);

    std::vector<ExtVal> terms;
    if (i >= 2) {
        auto plain = bell_table(model.weights(), n, mode);
        for (int k = 1; k <= std::min(i - 1, n); ++k)
            terms.push_back(model.v(n, k, mode) * plain->at(n, k));
    }
    for (int k = i; k <= n; ++k) {
        ExtVal b = i == 1 ? bell_table_max_size(model.weights(), r, n, mode)->at(n, k)
                          : bell_ith_at_most(model.weights(), r, i, n, k, mode);
        if (b.is_zero()) continue;
        terms.push_back(model.v(n, k, mode) * b);
    }
    if (terms.empty()) return mode == Mode::Exact ? ExtVal::from_rational(Rational(0))
                                                  : ExtVal::zero();
    return signed_log_sum(terms);
}

double extreme_cdf(const GibbsModel& model, int n, int i, int r, Mode mode) {
    return to_probability(extreme_cdf_extval(model, n, i, r, mode));
}

ExtVal smallest_tail_extval(const GibbsModel& model, int n, int r, Mode mode) {
    check_n(model, n);
    if (r < 1 || r > n) throw RangeError("need 1 <= r <= n");
    mode = dist_mode(model, n, mode);
    if (r == 1) return exact_one(mode); // B_{n,k,(1)} = B_{n,k}, pmf sums to 1
    auto table = bell_table_min_size(model.weights(), r, n, mode);
    std::vector<ExtVal> terms;
    for (int k = 1; k <= n / r; ++k) {
        ExtVal b = table->at(n, k);
        if (b.is_zero()) continue;
        terms.push_back(model.v(n, k, mode) * b);
    }
    if (terms.empty()) return mode == Mode::Exact ? ExtVal::from_rational(Rational(0))
                                                  : ExtVal::zero();
    return signed_log_sum(terms);
}

double smallest_tail(const GibbsModel& model, int n, int r, Mode mode) {
    return to_probability(smallest_tail_extval(model, n, r, mode));
}

namespace {

double conditional_ratio(const ExtVal& num, const ExtVal& den) {
    if (den.is_zero())
        throw ModelError("conditional on a block count with zero probability mass");
    return to_probability(num / den);
}

} // namespace

double conditional_extreme(const WeightFn& w, int n, int k, Which which, int r,
                           Mode mode) {
    if (n < 1) throw RangeError("n must be >= 1");
    if (k < 1 || k > n) throw RangeError("need 1 <= k <= n");
    if (r < 1 || r > n) throw RangeError("need 1 <= r <= n");
    mode = resolve_mode(mode, n);
    ExtVal num = which == Which::Largest
                     ? bell_table_max_size(w, r, n, mode)->at(n, k)
                     : bell_table_min_size(w, r, n, mode)->at(n, k);
    return conditional_ratio(num, bell_table(w, n, mode, k)->at(n, k));
}

double conditional_ith_largest(const WeightFn& w, int n, int k, int i, int r,
                               Mode mode) {
    if (n < 1) throw RangeError("n must be >= 1");
    if (k < 1 || k > n) throw RangeError("need 1 <= k <= n");
    if (r < 1 || r > n) throw RangeError("need 1 <= r <= n");
    if (i < 1) throw RangeError("need i >= 1");
    mode = resolve_mode(mode, n);
    if (i > k) return 1.0; // |A_(i)| = 0 once i exceeds the block count
    ExtVal num = bell_ith_at_most(w, r, i, n, k, mode);
    return conditional_ratio(num, bell_table(w, n, mode, k)->at(n, k));
}

double factorial_moment(const GibbsModel& model, int n, Which which, int i,
                        Mode mode) {
    check_n(model, n);
    if (i < 1) throw RangeError("need i >= 1");
    mode = dist_mode(model, n, mode);

    // sum_{j=i}^n [j-1]_{i-1} * P(...)  assembled in ExtVal
    std::vector<ExtVal> terms;
    for (int j = i; j <= n; ++j) {
        ExtVal coeff = factorial_poly(j - 1, i - 1, 1.0, FactKind::Falling, mode);
        if (coeff.is_zero()) continue;
        ExtVal p = which == Which::Smallest
                       ? smallest_tail_extval(model, n, j, mode)
                       : (j == 1 ? ExtVal() // P(|A_(1)| <= 0) = 0
                                 : extreme_cdf_extval(model, n, 1, j - 1, mode));
        if (p.is_zero()) continue;
        terms.push_back(coeff * p);
    }
    ExtVal sum = signed_log_sum(terms);
    ExtVal i_val = mode == Mode::Exact ? ExtVal::from_int(i) : ExtVal::from_double(i);
    if (which == Which::Smallest) return (i_val * sum).to_double();
    ExtVal head = factorial_poly(n, i, 1.0, FactKind::Falling, mode);
    return (head - i_val * sum).to_double();
}

} // namespace gibbspart

#include "gibbspart/bell.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <list>
#include <mutex>
#include <unordered_map>

#include "gibbspart/special.hpp"

namespace gibbspart {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

ExtVal binom_val(int n, int m, Mode mode) {
    if (m < 0 || m > n) return mode == Mode::Exact ? ExtVal::from_rational(Rational(0))
                                                   : ExtVal::zero();
    if (mode == Mode::Exact) {
        BigInt num = 1, den = 1;
        for (int i = 0; i < m; ++i) {
            num *= n - i;
            den *= i + 1;
        }
        return ExtVal::from_rational(Rational(num, den));
    }
    return ExtVal::from_sign_log(1, log_binomial(n, m));
}

ExtVal inv_factorial_val(int l, Mode mode) {
    if (mode == Mode::Exact) {
        BigInt f = 1;
        for (int i = 2; i <= l; ++i) f *= i;
        return ExtVal::from_rational(Rational(BigInt(1), f));
    }
    return ExtVal::from_sign_log(1, -log_factorial(l));
}

} // namespace

BellTable::BellTable(BellFamily family, int r, int n_max, int k_max, Mode mode,
                     const WeightFn& w)
    : family_(family), r_(r), n_max_(n_max), mode_(mode) {
    if (n_max < 0) throw ParamError("bell table: n_max must be >= 0");
    if (family != BellFamily::Plain && r < 1)
        throw ParamError("bell table: r must be >= 1");
    if (family == BellFamily::Plain) r_ = 1;
    if (mode_ == Mode::Auto) mode_ = resolve_mode(mode_, n_max);
    if (k_max < 0) k_max = n_max;
    if (family == BellFamily::MinSize)
        k_max = std::min(k_max, r_ > 0 ? n_max / r_ : n_max);
    k_max_ = std::min(k_max, n_max);
    if (n_max > w.j_max)
        throw RangeError("bell table: weight sequence shorter than n_max");

    row_off_.resize(n_max_ + 1);
    size_t off = 0;
    for (int n = 0; n <= n_max_; ++n) {
        row_off_[n] = off;
        off += std::min(n, k_max_) + 1;
    }
    if (mode_ == Mode::Exact) {
        exacts_.assign(off, Rational(0));
    } else {
        signs_.assign(off, 0);
        logs_.assign(off, kNegInf);
    }
    build(w);
}

bool BellTable::structurally_zero(int n, int k) const {
    if (n < 0 || k < 0) return true;
    if (k > n) return true;
    if (k == 0) return n != 0;
    switch (family_) {
    case BellFamily::Plain:
        return false;
    case BellFamily::MinSize:
        return n < static_cast<long long>(r_) * k;
    case BellFamily::MaxSize:
        return n > static_cast<long long>(r_) * k;
    }
    return false;
}

bool BellTable::in_store(int n, int k) const {
    return n >= 0 && n <= n_max_ && k >= 0 && k <= std::min(n, k_max_);
}

ExtVal BellTable::at(int n, int k) const {
    if (structurally_zero(n, k))
        return mode_ == Mode::Exact ? ExtVal::from_rational(Rational(0)) : ExtVal::zero();
    if (!in_store(n, k))
        throw RangeError("bell table: index (" + std::to_string(n) + "," +
                         std::to_string(k) + ") outside built region");
    if (mode_ == Mode::Exact) return ExtVal::from_rational(exacts_[idx(n, k)]);
    int8_t s = signs_[idx(n, k)];
    if (s == 0) return ExtVal::zero();
    return ExtVal::from_sign_log(s, logs_[idx(n, k)]);
}

int BellTable::sign_at(int n, int k) const {
    if (structurally_zero(n, k)) return 0;
    if (!in_store(n, k))
        throw RangeError("bell table: index outside built region");
    if (mode_ == Mode::Exact) return sign_of(exacts_[idx(n, k)]);
    return signs_[idx(n, k)];
}

double BellTable::log_at(int n, int k) const {
    if (structurally_zero(n, k)) return kNegInf;
    if (!in_store(n, k))
        throw RangeError("bell table: index outside built region");
    if (mode_ == Mode::Exact) {
        const Rational& q = exacts_[idx(n, k)];
        return q == 0 ? kNegInf : log_abs_rational(q);
    }
    return signs_[idx(n, k)] == 0 ? kNegInf : logs_[idx(n, k)];
}

const Rational& BellTable::exact_at(int n, int k) const {
    static const Rational zero_q(0);
    if (mode_ != Mode::Exact) throw Error("bell table: not an exact-mode table");
    if (structurally_zero(n, k)) return zero_q;
    if (!in_store(n, k))
        throw RangeError("bell table: index outside built region");
    return exacts_[idx(n, k)];
}

size_t BellTable::bytes() const {
    size_t b = row_off_.size() * sizeof(size_t);
    b += signs_.size() * sizeof(int8_t) + logs_.size() * sizeof(double);
    for (const Rational& q : exacts_) {
        b += sizeof(Rational);
        b += boost::multiprecision::numerator(q).backend().size() * sizeof(boost::multiprecision::limb_type);
        b += boost::multiprecision::denominator(q).backend().size() * sizeof(boost::multiprecision::limb_type);
    }
    return b;
}

void BellTable::build(const WeightFn& w) {
    // Weight values w_1..w_{j_need}; MaxSize never uses sizes beyond r.
    int j_need = n_max_;
    if (family_ == BellFamily::MaxSize) j_need = std::min(j_need, r_);

    if (mode_ == Mode::Exact) {
        std::vector<Rational> wr(j_need + 1);
        for (int j = 1; j <= j_need; ++j) wr[j] = w(j, Mode::Exact).exact();
        std::vector<BigInt> fact(n_max_ + 1);
        fact[0] = 1;
        for (int i = 1; i <= n_max_; ++i) fact[i] = fact[i - 1] * i;
        exacts_[idx(0, 0)] = 1;
        for (int n = 0; n < n_max_; ++n) {
            int row_k_max = std::min(n + 1, k_max_);
            for (int k = 1; k <= row_k_max; ++k) {
                int jlo = 0, jhi = n - k + 1;
                if (family_ == BellFamily::MinSize) {
                    jlo = r_ - 1;
                    jhi = n - r_ * (k - 1);
                } else if (family_ == BellFamily::MaxSize) {
                    jlo = std::max(0, n - r_ * k + r_);
                    jhi = std::min(r_ - 1, n - k + 1);
                }
                Rational acc = 0;
                for (int j = jlo; j <= jhi; ++j) {
                    const Rational& prev = exacts_[idx(n - j, k - 1)];
                    if (prev == 0 || wr[j + 1] == 0) continue;
                    Rational binom(fact[n] / (fact[j] * fact[n - j]));
                    acc += binom * wr[j + 1] * prev;
                }
                exacts_[idx(n + 1, k)] = std::move(acc);
            }
        }
        return;
    }

    std::vector<int8_t> wsign(j_need + 1, 0);
    std::vector<double> wlog(j_need + 1, kNegInf);
    for (int j = 1; j <= j_need; ++j) {
        ExtVal v = w(j, Mode::Float);
        wsign[j] = static_cast<int8_t>(v.sign());
        wlog[j] = v.is_zero() ? kNegInf : v.log_mag();
    }
    std::vector<double> lf(n_max_ + 1);
    for (int i = 0; i <= n_max_; ++i) lf[i] = log_factorial(i);

    signs_[idx(0, 0)] = 1;
    logs_[idx(0, 0)] = 0.0;
    const int8_t* sp = signs_.data();
    const double* lp = logs_.data();
    for (int n = 0; n < n_max_; ++n) {
        int row_k_max = std::min(n + 1, k_max_);
        for (int k = 1; k <= row_k_max; ++k) {
            int jlo = 0, jhi = n - k + 1;
            if (family_ == BellFamily::MinSize) {
                jlo = r_ - 1;
                jhi = n - r_ * (k - 1);
            } else if (family_ == BellFamily::MaxSize) {
                jlo = std::max(0, n - r_ * k + r_);
                jhi = std::min(r_ - 1, n - k + 1);
            }
            SignedLogAccumulator acc;
            double lfn = lf[n];
            for (int j = jlo; j <= jhi; ++j) {
                size_t prev = row_off_[n - j] + (k - 1);
                int s = wsign[j + 1] * sp[prev];
                if (s == 0) continue;
                acc.add(s, lfn - lf[j] - lf[n - j] + wlog[j + 1] + lp[prev]);
            }
            auto [s, lg] = acc.result();
            signs_[idx(n + 1, k)] = static_cast<int8_t>(s);
            logs_[idx(n + 1, k)] = s == 0 ? kNegInf : lg;
        }
    }
}

// ---------------------------------------------------------------------------
// Table cache
// ---------------------------------------------------------------------------

namespace {

struct CacheKey {
    std::string w_id;
    BellFamily family;
    int r;
    Mode mode;
    bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
    size_t operator()(const CacheKey& k) const {
        size_t h = std::hash<std::string>()(k.w_id);
        h = h * 1315423911u ^ static_cast<size_t>(k.family);
        h = h * 1315423911u ^ static_cast<size_t>(k.r);
        h = h * 1315423911u ^ static_cast<size_t>(k.mode);
        return h;
    }
};

struct CacheSlot {
    std::mutex build_mutex;
    BellTablePtr table; // guarded by build_mutex for writes
    size_t bytes = 0;
    uint64_t last_used = 0;
};

struct BellCache {
    std::mutex mu;
    std::unordered_map<CacheKey, std::shared_ptr<CacheSlot>, CacheKeyHash> slots;
    size_t byte_limit = 512ull << 20;
    size_t total_bytes = 0;
    uint64_t tick = 0;
    size_t hits = 0, misses = 0;

    void evict_locked() {
        while (total_bytes > byte_limit && slots.size() > 1) {
            auto victim = slots.end();
            uint64_t oldest = std::numeric_limits<uint64_t>::max();
            for (auto it = slots.begin(); it != slots.end(); ++it) {
                if (it->second->last_used < oldest && it->second->bytes > 0) {
                    oldest = it->second->last_used;
                    victim = it;
                }
            }
            if (victim == slots.end()) break;
            total_bytes -= victim->second->bytes;
            slots.erase(victim);
        }
    }
};

BellCache& cache() {
    static BellCache c;
    return c;
}

BellTablePtr cached_table(const WeightFn& w, BellFamily family, int r, int n_max,
                          Mode mode, int k_max) {
    mode = resolve_mode(mode, n_max);
    if (k_max < 0 || k_max > n_max) k_max = n_max;
    if (family == BellFamily::MinSize) k_max = std::min(k_max, n_max / std::max(r, 1));

    CacheKey key{w.id, family, r, mode};
    BellCache& c = cache();
    std::shared_ptr<CacheSlot> slot;
    {
        std::lock_guard<std::mutex> lock(c.mu);
        auto it = c.slots.find(key);
        if (it == c.slots.end())
            it = c.slots.emplace(key, std::make_shared<CacheSlot>()).first;
        slot = it->second;
        slot->last_used = ++c.tick;
    }
    std::lock_guard<std::mutex> build_lock(slot->build_mutex);
    if (slot->table && slot->table->n_max() >= n_max && slot->table->k_max() >= k_max) {
        std::lock_guard<std::mutex> lock(c.mu);
        ++c.hits;
        return slot->table;
    }
    int build_n = n_max, build_k = k_max;
    if (slot->table) {
        build_n = std::max(build_n, slot->table->n_max());
        build_k = std::max(build_k, slot->table->k_max());
    }
    auto table = std::make_shared<const BellTable>(family, r, build_n, build_k, mode, w);
    size_t nb = table->bytes();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        ++c.misses;
        c.total_bytes += nb;
        c.total_bytes -= slot->bytes;
        slot->bytes = nb;
        slot->table = table;
        c.evict_locked();
    }
    return table;
}

} // namespace

BellTablePtr bell_table(const WeightFn& w, int n_max, Mode mode, int k_max) {
    return cached_table(w, BellFamily::Plain, 1, n_max, mode, k_max);
}

BellTablePtr bell_table_min_size(const WeightFn& w, int r, int n_max, Mode mode,
                                 int k_max) {
    if (r < 1) throw ParamError("bell_table_min_size: r must be >= 1");
    return cached_table(w, BellFamily::MinSize, r, n_max, mode, k_max);
}

BellTablePtr bell_table_max_size(const WeightFn& w, int r, int n_max, Mode mode,
                                 int k_max) {
    if (r < 1) throw ParamError("bell_table_max_size: r must be >= 1");
    return cached_table(w, BellFamily::MaxSize, r, n_max, mode, k_max);
}

void bell_cache_set_limit(size_t bytes) {
    BellCache& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    c.byte_limit = bytes;
    c.evict_locked();
}

void bell_cache_clear() {
    BellCache& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    c.slots.clear();
    c.total_bytes = 0;
}

BellCacheStats bell_cache_stats() {
    BellCache& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    return {c.slots.size(), c.total_bytes, c.hits, c.misses};
}

// ---------------------------------------------------------------------------
// i-th largest at most r
// ---------------------------------------------------------------------------

ExtVal bell_ith_at_most(const WeightFn& w, int r, int i, int n, int k, Mode mode) {
    if (r < 1) throw ParamError("bell_ith_at_most: r must be >= 1");
    if (i < 1) throw ParamError("bell_ith_at_most: i must be >= 1");
    if (n < 0 || k < 0) throw RangeError("bell_ith_at_most: negative index");
    mode = resolve_mode(mode, n);

    auto t_max = bell_table_max_size(w, r, n, mode);
    if (i == 1 || k == 0) return t_max->at(n, k);
    int j_cap = std::min(i - 1, k);
    auto t_min = bell_table_min_size(w, r + 1, n, mode, j_cap);

    std::vector<ExtVal> terms;
    terms.push_back(t_max->at(n, k)); // j = 0: no block exceeds r
    for (int j = 1; j <= j_cap; ++j) {
        // m elements in the j oversized blocks, the rest in blocks <= r.
        int mlo = std::max((r + 1) * j, n - r * (k - j));
        int mhi = n - (k - j);
        for (int m = mlo; m <= mhi; ++m) {
            ExtVal a = t_min->at(m, j);
            if (a.is_zero()) continue;
            ExtVal b = t_max->at(n - m, k - j);
            if (b.is_zero()) continue;
            terms.push_back(binom_val(n, m, mode) * a * b);
        }
    }
    return signed_log_sum(terms);
}

// ---------------------------------------------------------------------------
// Cross-checking identities
// ---------------------------------------------------------------------------

namespace {

double residual_of(const ExtVal& lhs, const ExtVal& rhs) {
    if (lhs.has_exact() && rhs.has_exact()) {
        if (lhs.exact() == rhs.exact()) return 0.0;
        Rational scale = std::max(abs(lhs.exact()), abs(rhs.exact()));
        return rational_to_double((lhs.exact() - rhs.exact()) / scale);
    }
    double a = lhs.to_double(), b = rhs.to_double();
    if (a == 0.0 && b == 0.0) return 0.0;
    double scale = std::max(std::abs(a), std::abs(b));
    ExtVal diff = lhs - rhs;
    return diff.to_double() / scale;
}

// Sum over ordered tuples (i_1..i_l), i_j in [lo, hi], sum_j i_j <= s_max,
// of fn(sum, prod_j w_{i_j}/i_j!).
void for_each_tuple(const WeightFn& w, Mode mode, int l, int lo, int hi, int s_max,
                    const std::function<void(int, const ExtVal&)>& fn) {
    if (lo > hi) return;
    std::vector<ExtVal> wq(hi + 1); // w_i / i!
    for (int i = lo; i <= hi; ++i) wq[i] = w(i, mode) * inv_factorial_val(i, mode);
    std::function<void(int, int, const ExtVal&)> rec =
        [&](int depth, int sum, const ExtVal& prod) {
            if (depth == l) {
                fn(sum, prod);
                return;
            }
            for (int i = lo; i <= hi && sum + i <= s_max; ++i)
                rec(depth + 1, sum + i, prod * wq[i]);
        };
    rec(0, 0, mode == Mode::Exact ? ExtVal::from_rational(Rational(1)) : ExtVal::one());
}

// Shared shape of the two expansion identities: target table value equals
//   B_{n,k} + sum_{l>=1} (-1)^l/l! sum_tuples B_{n-S,k-l} [n]_S prod w_{i_j}/i_j!
ExtVal expansion_rhs(const WeightFn& w, int n, int k, Mode mode, int l_max,
                     int tuple_lo, int tuple_hi) {
    auto plain = bell_table(w, n, mode);
    std::vector<ExtVal> terms;
    terms.push_back(plain->at(n, k));
    for (int l = 1; l <= l_max; ++l) {
        ExtVal outer = inv_factorial_val(l, mode);
        if (l % 2 == 1) outer = -outer;
        std::vector<ExtVal> inner;
        for_each_tuple(w, mode, l, tuple_lo, tuple_hi, n - k + l,
                       [&](int s, const ExtVal& prod) {
                           ExtVal b = plain->at(n - s, k - l);
                           if (b.is_zero()) return;
                           ExtVal falling = factorial_poly(n, s, 1.0, FactKind::Falling, mode);
                           inner.push_back(b * falling * prod);
                       });
        if (inner.empty()) continue;
        terms.push_back(outer * signed_log_sum(inner));
    }
    return signed_log_sum(terms);
}

} // namespace

double residual_max_size_expansion(const WeightFn& w, int n, int k, int r, Mode mode) {
    if (k < 1 || n < k || n > static_cast<long long>(r) * k)
        throw RangeError("max_size_expansion: valid for k <= n <= r*k");
    mode = resolve_mode(mode, n);
    ExtVal lhs = bell_table_max_size(w, r, n, mode)->at(n, k);
    ExtVal rhs;
    if (n <= r + k - 1) {
        rhs = bell_table(w, n, mode)->at(n, k); // no block can exceed r here
    } else {
        rhs = expansion_rhs(w, n, k, mode, (n - k) / r, r + 1, n - k + (n - k) / r);
    }
    return residual_of(lhs, rhs);
}

double residual_min_size_expansion(const WeightFn& w, int n, int k, int r, Mode mode) {
    if (k < 1 || n < static_cast<long long>(r) * k)
        throw RangeError("min_size_expansion: valid for n >= r*k");
    mode = resolve_mode(mode, n);
    ExtVal lhs = bell_table_min_size(w, r, n, mode)->at(n, k);
    ExtVal rhs = r == 1 ? bell_table(w, n, mode)->at(n, k)
                        : expansion_rhs(w, n, k, mode, k - 1, 1, r - 1);
    return residual_of(lhs, rhs);
}

double residual_min_size_shift(const WeightFn& w, int n, int k, int r, Mode mode) {
    if (k < 1 || n < k || n > static_cast<long long>(r + 1) * k)
        throw RangeError("min_size_shift: valid for k <= n <= (r+1)*k");
    mode = resolve_mode(mode, n);
    ExtVal lhs = bell_table_min_size(w, r + 1, n, mode)->at(n, k);
    auto base = bell_table_min_size(w, r, n, mode);
    ExtVal w_r = w(r, mode) * inv_factorial_val(r, mode);
    std::vector<ExtVal> terms;
    ExtVal pw = mode == Mode::Exact ? ExtVal::from_rational(Rational(1)) : ExtVal::one();
    for (int j = 0; j <= k; ++j) {
        if (n - r * j < 0) break;
        ExtVal b = base->at(n - r * j, k - j);
        if (!b.is_zero()) {
            ExtVal falling = factorial_poly(n, r * j, 1.0, FactKind::Falling, mode);
            terms.push_back(falling * inv_factorial_val(j, mode) * pw * b);
        }
        pw = pw * (-w_r);
    }
    return residual_of(lhs, signed_log_sum(terms));
}

double residual_max_size_shift(const WeightFn& w, int n, int k, int r, Mode mode) {
    if (k < 1 || n < k || n > static_cast<long long>(r + 1) * k)
        throw RangeError("max_size_shift: valid for k <= n <= (r+1)*k");
    mode = resolve_mode(mode, n);
    ExtVal lhs = bell_table_max_size(w, r + 1, n, mode)->at(n, k);
    auto base = bell_table_max_size(w, r, n, mode);
    ExtVal w_r1 = w(r + 1, mode) * inv_factorial_val(r + 1, mode);
    std::vector<ExtVal> terms;
    int jlo = std::max(0, n - r * k);
    int jhi = (n - k) / r;
    ExtVal pw = mode == Mode::Exact ? ExtVal::from_rational(Rational(1)) : ExtVal::one();
    for (int j = 0; j <= jhi; ++j) {
        if (j >= jlo) {
            ExtVal b = base->at(n - (r + 1) * j, k - j);
            if (!b.is_zero()) {
                ExtVal falling =
                    factorial_poly(n, (r + 1) * j, 1.0, FactKind::Falling, mode);
                terms.push_back(falling * inv_factorial_val(j, mode) * pw * b);
            }
        }
        pw = pw * w_r1;
    }
    return residual_of(lhs, signed_log_sum(terms));
}

IdentityResiduals crosscheck_identities(const WeightFn& w, int n, int k, int r,
                                        Mode mode) {
    IdentityResiduals out;
    if (k >= 1 && n >= k && n <= static_cast<long long>(r) * k)
        out.max_size_expansion = residual_max_size_expansion(w, n, k, r, mode);
    if (k >= 1 && n >= static_cast<long long>(r) * k)
        out.min_size_expansion = residual_min_size_expansion(w, n, k, r, mode);
    if (k >= 1 && n >= k && n <= static_cast<long long>(r + 1) * k) {
        out.min_size_shift = residual_min_size_shift(w, n, k, r, mode);
        out.max_size_shift = residual_max_size_shift(w, n, k, r, mode);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Special numbers
// ---------------------------------------------------------------------------

ExtVal special_number(SpecialKind kind, int n, int k, double alpha, int r,
                      Mode mode, std::vector<std::string>* warnings) {
    if (n < 0 || k < 0) throw RangeError("special_number: negative index");
    bool assoc = kind == SpecialKind::Stirling1Assoc || kind == SpecialKind::GfcAssoc;
    bool gfc = kind == SpecialKind::Gfc || kind == SpecialKind::GfcAssoc;
    if (assoc && r < 1) throw ParamError("special_number: associated kinds need r >= 1");
    if (mode == Mode::Auto) {
        int cap = gfc ? 64 : kDefaultExactCap;
        mode = n <= cap ? Mode::Exact : Mode::Float;
        if (gfc && mode == Mode::Float && warnings)
            warnings->push_back(
                "generalized-factorial weights alternate in sign; n > 64 uses "
                "sign-tracked log-space floats instead of exact rationals");
    }
    WeightFn w = gfc ? falling_factorial_weights(alpha) : factorial_weights();
    // Partial-column builds for big n; full tables when small enough to share.
    int k_cap = n <= 256 ? -1 : k;
    BellTablePtr t = assoc ? bell_table_min_size(w, r, n, mode, k_cap)
                           : bell_table(w, n, mode, k_cap);
    return t->at(n, k);
}

} // namespace gibbspart

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gibbspart/model.hpp"

namespace gibbspart {

// The three table families over a weight sequence w:
//   Plain    B_{n,k}(w)          all block sizes
//   MinSize  B_{n,k,(r)}(w)      every block size >= r   (zero for n < r*k)
//   MaxSize  B^{(r)}_{n,k}(w)    every block size <= r   (zero for n > r*k,
//                                equal to Plain once r >= n-k+1)
enum class BellFamily { Plain, MinSize, MaxSize };

// Triangular table of partial Bell polynomial values for n = 0..n_max,
// k = 0..min(n, k_max), built by the one-new-block recurrences
//   B_{n+1,k} = sum_j C(n,j) w_{j+1} B_{n-j,k-1}
// with the family-specific j ranges.  Float mode stores (sign, log);
// Exact mode stores rationals.  Values outside the stored triangle that
// are structurally zero are reported as exact zeros.
class BellTable {
public:
    BellTable(BellFamily family, int r, int n_max, int k_max, Mode mode,
              const WeightFn& w);

    BellFamily family() const { return family_; }
    int r() const { return r_; }
    int n_max() const { return n_max_; }
    int k_max() const { return k_max_; }
    Mode mode() const { return mode_; }

    ExtVal at(int n, int k) const;
    int sign_at(int n, int k) const;
    double log_at(int n, int k) const; // -inf for zero entries
    const Rational& exact_at(int n, int k) const;

    size_t bytes() const;

private:
    bool in_store(int n, int k) const;
    bool structurally_zero(int n, int k) const;
    size_t idx(int n, int k) const { return row_off_[n] + k; }
    void build(const WeightFn& w);

    BellFamily family_;
    int r_;
    int n_max_;
    int k_max_;
    Mode mode_;
    std::vector<size_t> row_off_;
    std::vector<int8_t> signs_;
    std::vector<double> logs_;
    std::vector<Rational> exacts_;
};

using BellTablePtr = std::shared_ptr<const BellTable>;

// Cached table accessors.  k_max < 0 means "all columns" (MinSize tables
// are automatically capped at n_max / r, past which every entry is zero).
// Tables are cached per (weights id, family, r, mode) with LRU eviction
// under a byte budget; concurrent requests for the same key build once.
BellTablePtr bell_table(const WeightFn& w, int n_max, Mode mode = Mode::Float,
                        int k_max = -1);
BellTablePtr bell_table_min_size(const WeightFn& w, int r, int n_max,
                                 Mode mode = Mode::Float, int k_max = -1);
BellTablePtr bell_table_max_size(const WeightFn& w, int r, int n_max,
                                 Mode mode = Mode::Float, int k_max = -1);

void bell_cache_set_limit(size_t bytes);
void bell_cache_clear();
struct BellCacheStats {
    size_t tables = 0;
    size_t bytes = 0;
    size_t hits = 0;
    size_t misses = 0;
};
BellCacheStats bell_cache_stats();

// B^{(r),(i)}_{n,k}: partitions into k blocks with fewer than i blocks of
// size > r (equivalently, the i-th largest block is <= r).  Computed by the
// convolution over the count j of oversized blocks,
//   sum_{j=0}^{i-1} sum_m C(n,m) B_{m,j,(r+1)} B^{(r)}_{n-m,k-j},
// whose j = 0 term is B^{(r)}_{n,k}.
ExtVal bell_ith_at_most(const WeightFn& w, int r, int i, int n, int k,
                        Mode mode = Mode::Float);

// Signed relative residuals of the cross-checking identities relating the
// families.  Each returns (lhs - rhs) / max(|lhs|, |rhs|) (0 when both
// vanish); exact mode yields an exact 0 for a passing identity.
// RangeError outside the stated validity ranges.

// Max-size table from plain tables with oversized-block corrections
// (valid for k <= n <= r*k; reduces to B^{(r)} = B_{n,k} when n <= r+k-1).
double residual_max_size_expansion(const WeightFn& w, int n, int k, int r,
                                   Mode mode = Mode::Exact);
// Min-size table from plain tables with undersized-block corrections
// (valid for n >= r*k).
double residual_min_size_expansion(const WeightFn& w, int n, int k, int r,
                                   Mode mode = Mode::Exact);
// r -> r+1 shift for min-size tables (valid for k <= n <= (r+1)*k).
double residual_min_size_shift(const WeightFn& w, int n, int k, int r,
                               Mode mode = Mode::Exact);
// r -> r+1 shift for max-size tables (valid for k <= n <= (r+1)*k).
double residual_max_size_shift(const WeightFn& w, int n, int k, int r,
                               Mode mode = Mode::Exact);

struct IdentityResiduals {
    std::optional<double> max_size_expansion;
    std::optional<double> min_size_expansion;
    std::optional<double> min_size_shift;
    std::optional<double> max_size_shift;
};
// Evaluates every identity whose stated range admits (n, k, r).
IdentityResiduals crosscheck_identities(const WeightFn& w, int n, int k, int r,
                                        Mode mode = Mode::Exact);

enum class SpecialKind {
    Stirling1,      // |s(n,k)| = B_{n,k}((.-1)!)
    Gfc,            // C(n,k;alpha) = B_{n,k}([alpha].)
    Stirling1Assoc, // |s_r(n,k)| = B_{n,k,(r)}((.-1)!)
    GfcAssoc        // C_r(n,k;alpha) = B_{n,k,(r)}([alpha].)
};

// Signed special numbers.  Gfc kinds alternate in sign, so Auto mode runs
// exact rationals up to n = 64 and sign-tracked floats above, noting the
// switch in *warnings (the recurrence is cancellation-free for these
// weights, so the float values remain accurate).
ExtVal special_number(SpecialKind kind, int n, int k, double alpha = 0.0,
                      int r = 1, Mode mode = Mode::Auto,
                      std::vector<std::string>* warnings = nullptr);

} // namespace gibbspart

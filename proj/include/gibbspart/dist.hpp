#pragma once

#include <optional>

#include "gibbspart/bell.hpp"

namespace gibbspart {

// Which extreme block size a query concerns.
enum class Which { Largest, Smallest };

enum class StatKind { Blocks, Largest, IthLargest, Smallest };

// A single distribution query: the statistic of partition Pi_n under the
// model, optionally conditioned on the block count being cond_k.
struct StatQuery {
    GibbsModel model;
    int n = 1;
    StatKind stat = StatKind::Blocks;
    int i = 1;                 // order index for IthLargest
    int r = 1;                 // size threshold for size statistics
    std::optional<int> cond_k; // condition on exactly cond_k blocks
};
// ParamError / RangeError when the query violates its invariants
// (1 <= r <= n, i >= 1, 1 <= cond_k <= n, n >= 1, n within model range).
void validate(const StatQuery& q);

// P(K_n = k) = v_{n,k} B_{n,k}(w) for k = 1..n.  The ExtVal variant keeps
// exact rationals in exact mode.  NormalizationError when the entries do
// not sum to 1 (beyond 1e-8 in float mode; exactly in exact mode), which
// signals an inconsistent custom model.
std::vector<ExtVal> blocks_pmf_extval(const GibbsModel& model, int n,
                                      Mode mode = Mode::Auto);
std::vector<double> blocks_pmf(const GibbsModel& model, int n,
                               Mode mode = Mode::Auto);

// P(|A_(i)| <= r), the cdf of the i-th largest block size, with the
// convention |A_(i)| = 0 when i exceeds the number of blocks:
//   i = 1:  sum_k v_{n,k} B^{(r)}_{n,k}
//   i >= 2: sum_{k<i} v_{n,k} B_{n,k} + sum_{k>=i} v_{n,k} B^{(r),(i)}_{n,k}
ExtVal extreme_cdf_extval(const GibbsModel& model, int n, int i, int r,
                          Mode mode = Mode::Auto);
double extreme_cdf(const GibbsModel& model, int n, int i, int r,
                   Mode mode = Mode::Auto);

// P(|A_(K_n)| >= r) = sum_{k <= n/r} v_{n,k} B_{n,k,(r)}(w); 1 at r = 1.
ExtVal smallest_tail_extval(const GibbsModel& model, int n, int r,
                            Mode mode = Mode::Auto);
double smallest_tail(const GibbsModel& model, int n, int r,
                     Mode mode = Mode::Auto);

// Conditional laws given the block count; v-weights drop out, so these
// take only the weight sequence:
//   largest:  P(|A_(1)| <= r     | K_n = k) = B^{(r)}_{n,k} / B_{n,k}
//   smallest: P(|A_(K_n)| >= r   | K_n = k) = B_{n,k,(r)} / B_{n,k}
// The largest cdf is exactly 0 for r < n/k (structural zero).
double conditional_extreme(const WeightFn& w, int n, int k, Which which, int r,
                           Mode mode = Mode::Auto);
// P(|A_(i)| <= r | K_n = k) = B^{(r),(i)}_{n,k} / B_{n,k}.
double conditional_ith_largest(const WeightFn& w, int n, int k, int i, int r,
                               Mode mode = Mode::Auto);

// Factorial moments of the extreme sizes:
//   smallest: E([|A_(K_n)|]_i) = i sum_{j=i}^n [j-1]_{i-1} P(|A_(K_n)| >= j)
//   largest:  E([|A_(1)|]_i)   = [n]_i - i sum_{j=i}^n [j-1]_{i-1} P(|A_(1)| <= j-1)
double factorial_moment(const GibbsModel& model, int n, Which which, int i,
                        Mode mode = Mode::Auto);

} // namespace gibbspart

#pragma once

#include "gibbspart/dirichlet.hpp"
#include "gibbspart/extval.hpp"
#include "gibbspart/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace gibbspart {

// Visits every partition of n (parts in nonincreasing order) in
// reverse-lexicographic order.  Guarded to n <= 40 (37338 partitions).
void for_each_partition(
    int n, const std::function<void(const std::vector<int>&)>& visit);

// Number of partitions of n by the pentagonal-number recurrence (exact).
BigInt partition_count(int n);

// Brute-force event probabilities by full enumeration of partitions with
// exact EPPF multiplicities; everything stays rational.
enum class OracleEvent { Blocks, LargestAtMost, IthLargestAtMost,
                         SmallestAtLeast };

struct OracleQuery {
    OracleEvent event = OracleEvent::Blocks;
    int k = 1;                 // Blocks: P(K_n = k)
    int i = 1;                 // order for IthLargestAtMost
    int r = 1;                 // size threshold for the extreme events
    std::optional<int> cond_k; // condition on {K_n = cond_k}
};

Rational exact_stat_enum(const GibbsModel& model, int n, const OracleQuery& q);

// Monte Carlo estimate of the incomplete Dirichlet integral by uniform
// box sampling with rejection; independent of the quadrature evaluator.
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};
McEstimate dirichlet_mc(const DirichletIntegralSpec& spec,
                        long long samples, std::uint64_t seed);

} // namespace gibbspart

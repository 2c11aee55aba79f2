#pragma once

#include <cstdint>
#include <functional>

#include "gibbspart/dist.hpp"

namespace gibbspart {

// A sampled partition of [n] recorded by block-size multiplicities:
// multiplicities[j-1] = number of blocks of size j.  sum j*m_j = n and
// sum m_j = k.
struct PartitionSample {
    int n = 0;
    std::vector<int> multiplicities;
    int k = 0;
};

// Counter-seeded xoshiro256++ stream.  Distinct (master_seed, stream_index)
// pairs give statistically independent streams; equal pairs reproduce the
// same draws, which makes every experiment independent of thread count.
class RngStream {
public:
    RngStream(uint64_t master_seed, uint64_t stream_index);
    uint64_t next_u64();
    double next_double(); // uniform on [0,1)
private:
    uint64_t s_[4];
};

// Exact generic sampler: draws K from the block-count pmf, then peels off
// the block containing the lowest unassigned label, whose size J satisfies
// P(J = j) proportional to C(n'-1, j-1) w_j B_{n'-j,k'-1}(w).  Requires a
// sign-safe model; ModelError if the block-count pmf fails normalization.
PartitionSample sample_partition(const GibbsModel& model, int n, RngStream& rng);

// Sequential insertion sampler for the Ewens-Pitman family: element t+1
// joins a block of current size s with probability (s - alpha)/(t + theta)
// and opens a new block with probability (theta + k*alpha)/(t + theta).
// For alpha < 0 the new-block weight is pinned to exact zero at k = m.
PartitionSample sample_ep_sequential(double alpha, double theta, int n,
                                     RngStream& rng);

// Gnedin-family sampler via the mixture representation: draw the total
// block count M of the infinite partition, then sample the symmetric
// Dirichlet-multinomial partition (alpha = -1, theta = M); blocks of the
// mixture that receive no elements are simply absent.  gamma = 0 yields
// the all-singleton partition.
PartitionSample sample_gnedin(double gamma, double zeta, int n, RngStream& rng);

using PartitionPredicate = std::function<bool(const PartitionSample&)>;

// The event counted in the simulation table: the smallest block exceeds 1,
// i.e. the partition has no singleton blocks.
bool smallest_exceeds_one(const PartitionSample& s);

// Runs `trials` independent samples on per-trial rng streams
// (master_seed, trial_index) and counts how often the event holds.
// Dispatches to the family-specific sampler when the model allows it.
// The count is independent of `threads`.
long long run_experiment(const GibbsModel& model, int n, long long trials,
                         uint64_t master_seed, const PartitionPredicate& event,
                         int threads = 1);

} // namespace gibbspart

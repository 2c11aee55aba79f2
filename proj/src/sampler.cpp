#include "gibbspart/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gibbspart/special.hpp"

namespace gibbspart {

namespace {

inline uint64_t rotl64(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(uint64_t master_seed, uint64_t stream_index) {
    uint64_t st = master_seed;
    uint64_t base = splitmix64(st) + stream_index;
    s_[0] = splitmix64(base);
    s_[1] = splitmix64(base);
    s_[2] = splitmix64(base);
    s_[3] = splitmix64(base);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1; // xoshiro needs nonzero state
}

uint64_t RngStream::next_u64() {
    uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl64(s_[3], 45);
    return result;
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

PartitionSample to_sample(int n, const std::vector<int>& sizes) {
    PartitionSample out;
    out.n = n;
    out.k = static_cast<int>(sizes.size());
    out.multiplicities.assign(n, 0);
    for (int s : sizes) ++out.multiplicities[s - 1];
    return out;
}

// Shared per-(model, n) state for the generic sampler; tables come from the
// global cache so repeated trials amortize the build.
struct GenericSampler {
    const GibbsModel& model;
    int n;
    std::vector<double> k_pmf;
    BellTablePtr table;

    GenericSampler(const GibbsModel& m, int n_) : model(m), n(n_) {
        if (!m.nonnegative())
            throw ModelError("cannot sample a model with negative weights/v");
        try {
            k_pmf = blocks_pmf(m, n_, Mode::Float);
        } catch (const NormalizationError& e) {
            throw ModelError(std::string("block-count pmf invalid: ") + e.what());
        }
        table = bell_table(m.weights(), n_, Mode::Float);
    }

    PartitionSample draw(RngStream& rng) const {
        // K ~ blocks pmf by inverse cdf
        double u = rng.next_double();
        int k = n;
        double cum = 0.0;
        for (int j = 1; j <= n; ++j) {
            cum += k_pmf[j - 1];
            if (u < cum) {
                k = j;
                break;
            }
        }
        // Peel one block at a time; the normalizer of each step is exactly
        // B_{n',k'} by the one-new-block recurrence.
        std::vector<int> sizes;
        sizes.reserve(k);
        int np = n, kp = k;
        while (kp > 1) {
            double log_norm = table->log_at(np, kp);
            double u2 = rng.next_double();
            double c = 0.0;
            int drawn = -1, last_nonzero = -1;
            for (int j = 1; j <= np - kp + 1; ++j) {
                if (table->sign_at(np - j, kp - 1) == 0) continue;
                ExtVal wj = model.w(j, Mode::Float);
                if (wj.is_zero()) continue;
                double lp = log_binomial(np - 1, j - 1) + wj.log_mag() +
                            table->log_at(np - j, kp - 1) - log_norm;
                c += std::exp(lp);
                last_nonzero = j;
                if (u2 < c) {
                    drawn = j;
                    break;
                }
            }
            if (drawn < 0) drawn = last_nonzero; // float drift at the top of the cdf
            if (drawn < 0) throw ModelError("peel step found no admissible block size");
            sizes.push_back(drawn);
            np -= drawn;
            --kp;
        }
        sizes.push_back(np); // last block takes the remainder
        return to_sample(n, sizes);
    }
};

} // namespace

PartitionSample sample_partition(const GibbsModel& model, int n, RngStream& rng) {
    if (n < 1) throw RangeError("n must be >= 1");
    GenericSampler s(model, n);
    return s.draw(rng);
}

PartitionSample sample_ep_sequential(double alpha, double theta, int n,
                                     RngStream& rng) {
    if (n < 1) throw RangeError("n must be >= 1");
    GibbsModel model = GibbsModel::ewens_pitman(alpha, theta); // validates (alpha, theta)
    int m = model.m();

    std::vector<int> sizes;
    sizes.reserve(16);
    sizes.push_back(1); // first element always opens a block
    for (int t = 1; t < n; ++t) {
        int k = static_cast<int>(sizes.size());
        double new_w = theta + k * alpha;
        if (m > 0 && k >= m) new_w = 0.0; // theta = -m*alpha exactly
        if (new_w < 0.0) new_w = 0.0;
        double u = rng.next_double() * (t + theta);
        if (u < new_w) {
            sizes.push_back(1);
            continue;
        }
        u -= new_w;
        int joined = -1;
        for (int b = 0; b < k; ++b) {
            u -= sizes[b] - alpha;
            if (u < 0.0) {
                joined = b;
                break;
            }
        }
        if (joined < 0) joined = k - 1; // float drift
        ++sizes[joined];
    }
    return to_sample(n, sizes);
}

PartitionSample sample_gnedin(double gamma, double zeta, int n, RngStream& rng) {
    if (n < 1) throw RangeError("n must be >= 1");
    GibbsModel model = GibbsModel::gnedin(gamma, zeta); // validates (gamma, zeta)
    if (gamma == 0.0) {
        // v_{n,k} vanishes except at k = n: every block is a singleton.
        PartitionSample out;
        out.n = n;
        out.k = n;
        out.multiplicities.assign(n, 0);
        out.multiplicities[0] = n;
        return out;
    }
    static thread_local std::optional<GnedinBlockPmf> pmf_cache;
    static thread_local std::pair<double, double> pmf_key{-1, -1};
    if (!pmf_cache || pmf_key != std::make_pair(gamma, zeta)) {
        pmf_cache = gnedin_block_pmf(gamma, zeta);
        pmf_key = {gamma, zeta};
    }
    const GnedinBlockPmf& pmf = *pmf_cache;

    double u = rng.next_double();
    double cum = 0.0;
    int m = -1;
    for (size_t j = 0; j < pmf.probs.size(); ++j) {
        cum += pmf.probs[j];
        if (u < cum) {
            m = static_cast<int>(j) + 1;
            break;
        }
    }
    for (int j = static_cast<int>(pmf.probs.size()) + 1; m < 0; ++j) {
        if (j > 1000000)
            throw NonConvergenceError("block-count draw ran past 1e6 mixture terms");
        cum += pmf.prob(j);
        if (u < cum) m = j;
    }
    return sample_ep_sequential(-1.0, m, n, rng);
}

bool smallest_exceeds_one(const PartitionSample& s) {
    return s.n >= 1 && s.multiplicities[0] == 0;
}

long long run_experiment(const GibbsModel& model, int n, long long trials,
                         uint64_t master_seed, const PartitionPredicate& event,
                         int threads) {
    if (trials < 1) throw ParamError("trials must be >= 1");
    if (n < 1) throw RangeError("n must be >= 1");
    if (threads < 1) threads = 1;

    // Family-dispatched per-trial draw; the generic state is built once and
    // shared read-only across workers.
    std::function<PartitionSample(RngStream&)> draw;
    std::optional<GenericSampler> generic;
    switch (model.kind()) {
    case ModelKind::EwensPitman:
        draw = [&model, n](RngStream& r) {
            return sample_ep_sequential(model.alpha(), model.theta(), n, r);
        };
        break;
    case ModelKind::Gnedin:
        draw = [&model, n](RngStream& r) {
            return sample_gnedin(model.gamma(), model.zeta(), n, r);
        };
        break;
    default:
        generic.emplace(model, n);
        draw = [&generic](RngStream& r) { return generic->draw(r); };
        break;
    }

    auto count_range = [&](long long lo, long long hi) {
        long long c = 0;
        for (long long t = lo; t < hi; ++t) {
            RngStream rng(master_seed, static_cast<uint64_t>(t));
            if (event(draw(rng))) ++c;
        }
        return c;
    };

    if (threads == 1) return count_range(0, trials);

    threads = static_cast<int>(std::min<long long>(threads, trials));
    std::vector<long long> counts(threads, 0);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    long long chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        long long lo = w * chunk, hi = std::min<long long>(trials, lo + chunk);
        workers.emplace_back([&, w, lo, hi] { counts[w] = count_range(lo, hi); });
    }
    for (auto& t : workers) t.join();
    long long total = 0;
    for (long long c : counts) total += c;
    return total;
}

} // namespace gibbspart

#include <doctest.h>

#include "gibbspart/dist.hpp"
#include "gibbspart/oracle.hpp"
#include "gibbspart/sampler.hpp"
#include "gibbspart/special.hpp"

#include <cmath>
#include <map>
#include <vector>

using namespace gibbspart;

namespace {

// Index partitions of n by their multiplicity vector for frequency counts.
std::map<std::vector<int>, double> exact_shape_probs(const GibbsModel& model,
                                                     int n) {
    std::map<std::vector<int>, double> probs;
    for_each_partition(n, [&](const std::vector<int>& parts) {
        std::vector<int> mult(static_cast<size_t>(n), 0);
        for (int p : parts) ++mult[static_cast<size_t>(p - 1)];
        probs[mult] =
            model.eppf_multiplicities(mult, Mode::Exact).to_double();
    });
    return probs;
}

} // namespace

TEST_SUITE("sampler") {

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(42, 0), b(42, 0), c(42, 1);
    bool all_equal = true;
    bool any_diff_stream = false;
    for (int i = 0; i < 64; ++i) {
        const uint64_t va = a.next_u64();
        if (va != b.next_u64()) all_equal = false;
        if (va != c.next_u64()) any_diff_stream = true;
    }
    CHECK(all_equal);
    CHECK(any_diff_stream);

    RngStream d(7, 3);
    for (int i = 0; i < 1000; ++i) {
        const double u = d.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("samples are valid partitions") {
    auto model = GibbsModel::ewens_pitman(0.5, 1.0);
    RngStream rng(1, 0);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = sample_partition(model, 17, rng);
        CHECK(s.n == 17);
        int total = 0, k = 0;
        for (size_t j = 0; j < s.multiplicities.size(); ++j) {
            total += static_cast<int>(j + 1) * s.multiplicities[j];
            k += s.multiplicities[j];
        }
        CHECK(total == 17);
        CHECK(k == s.k);
    }
    // n = 1: the only partition.
    auto one = sample_partition(model, 1, rng);
    CHECK(one.k == 1);
    CHECK(one.multiplicities == std::vector<int>{1});
}

TEST_CASE("sequential sampler pins the block-count cap for alpha < 0") {
    RngStream rng(5, 0);
    for (int trial = 0; trial < 500; ++trial) {
        auto s = sample_ep_sequential(-0.5, 1.0, 12, rng);
        CHECK(s.k <= 2);
    }
}

TEST_CASE("generic sampler matches exact shape law (chi-square)") {
    // n = 5, three models, 200k trials each; Wilson-Hilferty chi-square.
    for (auto model :
         {GibbsModel::ewens_pitman(0.5, 1.0), GibbsModel::ewens_pitman(0.0, 1.0),
          GibbsModel::gnedin(1.0, 1.0)}) {
        const int n = 5;
        const long long trials = 200000;
        auto probs = exact_shape_probs(model, n);
        std::map<std::vector<int>, long long> counts;
        for (long long t = 0; t < trials; ++t) {
            RngStream rng(99, static_cast<uint64_t>(t));
            auto s = sample_partition(model, n, rng);
            ++counts[s.multiplicities];
        }
        double stat = 0.0;
        int dof = -1;
        for (const auto& [shape, p] : probs) {
            const double expect = p * static_cast<double>(trials);
            if (expect < 5.0) continue; // merge-negligible cells
            const double got = static_cast<double>(counts[shape]);
            stat += (got - expect) * (got - expect) / expect;
            ++dof;
        }
        REQUIRE(dof >= 1);
        CHECK(chi_square_sf(stat, dof) > 1e-3);
    }
}

TEST_CASE("sequential and generic samplers agree in law") {
    // K-distributions at EP(0.5, 1), n = 50, 100k trials; chi-square across
    // the two independent samplers' empirical block counts.
    const int n = 50;
    const long long trials = 100000;
    auto model = GibbsModel::ewens_pitman(0.5, 1.0);
    std::vector<long long> ka(n + 1, 0), kb(n + 1, 0);
    for (long long t = 0; t < trials; ++t) {
        RngStream r1(123, static_cast<uint64_t>(t));
        RngStream r2(456, static_cast<uint64_t>(t));
        ++ka[static_cast<size_t>(sample_partition(model, n, r1).k)];
        ++kb[static_cast<size_t>(sample_ep_sequential(0.5, 1.0, n, r2).k)];
    }
    // Two-sample chi-square on pooled bins with expected >= 10.
    double stat = 0.0;
    int dof = -1;
    for (int k = 1; k <= n; ++k) {
        const double a = static_cast<double>(ka[static_cast<size_t>(k)]);
        const double b = static_cast<double>(kb[static_cast<size_t>(k)]);
        if (a + b < 20.0) continue;
        stat += (a - b) * (a - b) / (a + b);
        ++dof;
    }
    REQUIRE(dof >= 3);
    CHECK(chi_square_sf(stat, dof) > 1e-3);

    // And both match the exact block-count law on a coarse statistic.
    auto pmf = blocks_pmf(model, n);
    double mean_exact = 0.0;
    for (int k = 1; k <= n; ++k) mean_exact += k * pmf[static_cast<size_t>(k - 1)];
    double mean_a = 0.0, mean_b = 0.0;
    for (int k = 1; k <= n; ++k) {
        mean_a += k * static_cast<double>(ka[static_cast<size_t>(k)]);
        mean_b += k * static_cast<double>(kb[static_cast<size_t>(k)]);
    }
    mean_a /= static_cast<double>(trials);
    mean_b /= static_cast<double>(trials);
    CHECK(std::abs(mean_a - mean_exact) < 0.15);
    CHECK(std::abs(mean_b - mean_exact) < 0.15);
}

TEST_CASE("gnedin sampler matches exact block-count law") {
    const int n = 100;
    const long long trials = 100000;
    auto model = GibbsModel::gnedin(1.0, 1.0);
    auto pmf = blocks_pmf(model, n);
    std::vector<long long> counts(n + 1, 0);
    for (long long t = 0; t < trials; ++t) {
        RngStream rng(2024, static_cast<uint64_t>(t));
        ++counts[static_cast<size_t>(sample_gnedin(1.0, 1.0, n, rng).k)];
    }
    for (int k = 1; k <= n; ++k) {
        const double p = pmf[static_cast<size_t>(k - 1)];
        const double expect = p * static_cast<double>(trials);
        if (expect < 10.0) continue;
        const double se = std::sqrt(static_cast<double>(trials) * p * (1 - p));
        CHECK(std::abs(static_cast<double>(counts[static_cast<size_t>(k)]) -
                       expect) <= 4.0 * se);
    }
    // gamma = 0 degenerates to all singletons.
    RngStream rng(3, 0);
    auto s = sample_gnedin(0.0, 1.0, 20, rng);
    CHECK(s.k == 20);
    CHECK(s.multiplicities[0] == 20);
}

TEST_CASE("run_experiment is thread-count invariant and seed-deterministic") {
    auto model = GibbsModel::ewens_pitman(0.0, 1.0);
    const long long c1 =
        run_experiment(model, 60, 4000, 11, smallest_exceeds_one, 1);
    const long long c2 =
        run_experiment(model, 60, 4000, 11, smallest_exceeds_one, 4);
    const long long c3 =
        run_experiment(model, 60, 4000, 11, smallest_exceeds_one, 3);
    CHECK(c1 == c2);
    CHECK(c1 == c3);
    const long long other =
        run_experiment(model, 60, 4000, 12, smallest_exceeds_one, 2);
    CHECK(c1 != other); // different master seed, almost surely different
}

TEST_CASE("run_experiment matches exact probability") {
    auto model = GibbsModel::ewens_pitman(0.0, 1.0);
    const int n = 100;
    const long long trials = 10000;
    const double p = smallest_tail(model, n, 2);
    const long long count =
        run_experiment(model, n, trials, 1, smallest_exceeds_one, 2);
    const double se = std::sqrt(static_cast<double>(trials) * p * (1 - p));
    CHECK(std::abs(static_cast<double>(count) -
                   p * static_cast<double>(trials)) <= 4.0 * se);

    // Degenerate cell: one-block model always lacks singletons (n > 1).
    auto one_block = GibbsModel::ewens_pitman(-1.0, 1.0);
    CHECK(run_experiment(one_block, n, 500, 1, smallest_exceeds_one, 2) ==
          500);
}

} // TEST_SUITE

#pragma once

#include "gibbspart/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gibbspart {

// One self-check outcome: `observed` is the measured discrepancy (or score)
// and `threshold` the bound it must not exceed.
struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double threshold = 0.0;
    std::string detail;
};

// Distribution operations against brute-force enumeration (exact rational
// comparison for the table-backed operations, 1e-12 for the double-valued
// ones) across representative models, n up to n_max (<= 12 recommended).
std::vector<CheckResult> oracle_equivalence_suite(int n_max = 8);

// Combinatorial-table identities evaluated in exact arithmetic over a grid
// of weight sequences, n <= n_max, r in {2, 3}; every residual must be an
// exact zero.
std::vector<CheckResult> identity_suite(int n_max = 12);

// One simulation cell: sample `trials` partitions of size n, count those
// whose smallest block exceeds 1, and compare against the exact probability
// with a binomial z-score (|z| <= z_max passes).
CheckResult simulation_cell(const GibbsModel& model, int n, long long trials,
                            std::uint64_t seed, double z_max = 4.0,
                            int threads = 1);

// Randomized dirichlet-integral specs (b <= 3): quadrature against the
// Monte Carlo oracle within z_max standard errors.
std::vector<CheckResult> quadrature_suite(int cases = 20,
                                          std::uint64_t seed = 1234,
                                          double z_max = 4.0,
                                          long long mc_samples = 2'000'000);

} // namespace gibbspart

#include "doctest.h"

#include "gibbspart/dirichlet.hpp"
#include "gibbspart/errors.hpp"
#include "gibbspart/model.hpp"
#include "gibbspart/oracle.hpp"

#include <vector>

using namespace gibbspart;

namespace {
OracleQuery blocks_query(int k) {
    OracleQuery q;
    q.event = OracleEvent::Blocks;
    q.k = k;
    return q;
}

OracleQuery smallest_query(int r) {
    OracleQuery q;
    q.event = OracleEvent::SmallestAtLeast;
    q.r = r;
    return q;
}

OracleQuery largest_query(int r) {
    OracleQuery q;
    q.event = OracleEvent::LargestAtMost;
    q.r = r;
    return q;
}

OracleQuery ith_query(int i, int r) {
    OracleQuery q;
    q.event = OracleEvent::IthLargestAtMost;
    q.i = i;
    q.r = r;
    return q;
}
} // namespace

TEST_SUITE("oracle") {

TEST_CASE("partition counts") {
    CHECK(partition_count(0) == BigInt(1));
    CHECK(partition_count(1) == BigInt(1));
    CHECK(partition_count(10) == BigInt(42));
    CHECK(partition_count(40) == BigInt(37338));
    CHECK(partition_count(100) == BigInt(190569292));
    CHECK_THROWS_AS(partition_count(-1), RangeError);
}

TEST_CASE("partition enumeration order and coverage") {
    std::vector<std::vector<int>> seen;
    for_each_partition(6, [&](const std::vector<int>& parts) {
        seen.push_back(parts);
    });
    REQUIRE(seen.size() == 11);
    CHECK(BigInt(static_cast<long>(seen.size())) == partition_count(6));
    CHECK(seen.front() == std::vector<int>{6});
    CHECK(seen.back() == std::vector<int>{1, 1, 1, 1, 1, 1});
    for (std::size_t t = 0; t < seen.size(); ++t) {
        int sum = 0;
        for (std::size_t j = 0; j < seen[t].size(); ++j) {
            sum += seen[t][j];
            if (j > 0) CHECK(seen[t][j] <= seen[t][j - 1]);
        }
        CHECK(sum == 6);
        if (t > 0) CHECK(seen[t] < seen[t - 1]); // reverse-lexicographic
    }
    CHECK_THROWS_AS(for_each_partition(0, [](const std::vector<int>&) {}),
                    RangeError);
    CHECK_THROWS_AS(for_each_partition(41, [](const std::vector<int>&) {}),
                    RangeError);
}

TEST_CASE("enumeration probabilities for the unit-rate model at n = 4") {
    auto model = GibbsModel::ewens_pitman(0.0, 1.0);
    CHECK(exact_stat_enum(model, 4, blocks_query(1)) == Rational(6, 24));
    CHECK(exact_stat_enum(model, 4, blocks_query(2)) == Rational(11, 24));
    CHECK(exact_stat_enum(model, 4, blocks_query(3)) == Rational(6, 24));
    CHECK(exact_stat_enum(model, 4, blocks_query(4)) == Rational(1, 24));
    Rational total = 0;
    for (int k = 1; k <= 4; ++k)
        total += exact_stat_enum(model, 4, blocks_query(k));
    CHECK(total == Rational(1));

    CHECK(exact_stat_enum(model, 4, smallest_query(2)) == Rational(3, 8));
    CHECK(exact_stat_enum(model, 4, smallest_query(1)) == Rational(1));
    CHECK(exact_stat_enum(model, 4, largest_query(2)) == Rational(10, 24));
    CHECK(exact_stat_enum(model, 4, largest_query(4)) == Rational(1));
    // The i-th largest coincides with the largest at i = 1 and is vacuously
    // certain once fewer than i blocks can exist alongside the bound.
    CHECK(exact_stat_enum(model, 4, ith_query(1, 2)) ==
          exact_stat_enum(model, 4, largest_query(2)));
    CHECK(exact_stat_enum(model, 4, ith_query(3, 1)) == Rational(1));

    OracleQuery cond = largest_query(2);
    cond.cond_k = 2;
    CHECK(exact_stat_enum(model, 4, cond) == Rational(3, 11));
}

TEST_CASE("enumeration guard rails") {
    auto model = GibbsModel::ewens_pitman(0.0, 1.0);
    CHECK_THROWS_AS(exact_stat_enum(model, 41, blocks_query(1)), RangeError);
    CHECK_THROWS_AS(exact_stat_enum(model, 0, blocks_query(1)), RangeError);
    OracleQuery bad_i = ith_query(0, 1);
    CHECK_THROWS_AS(exact_stat_enum(model, 4, bad_i), ParamError);
    OracleQuery bad_cond = largest_query(2);
    bad_cond.cond_k = 5;
    CHECK_THROWS_AS(exact_stat_enum(model, 4, bad_cond), ParamError);
    // At alpha = -1, theta = 2 at most two blocks carry mass: conditioning
    // on three is a zero-probability event.
    auto two_block = GibbsModel::ewens_pitman(-1.0, 2.0);
    OracleQuery impossible = largest_query(3);
    impossible.cond_k = 3;
    CHECK_THROWS_AS(exact_stat_enum(two_block, 4, impossible), ModelError);
    // Custom models only reach as far as their v-table.
    auto tiny = GibbsModel::custom({1.0, 1.0}, {{1.0}, {0.0, 1.0}});
    CHECK(exact_stat_enum(tiny, 2, blocks_query(2)) == Rational(1));
    CHECK_THROWS_AS(exact_stat_enum(tiny, 3, blocks_query(1)), RangeError);
}

TEST_CASE("box-sampling integral estimates") {
    DirichletIntegralSpec s;
    s.b = 1;
    s.p = 0.25;
    s.q = 0.25;
    s.nu = 1.0;
    s.rho = 1.0;
    // A flat integrand over the full box has zero sampling variance: the
    // estimate is the exact interval length 1 - q - p.
    const McEstimate flat_est = dirichlet_mc(s, 1000, 2024);
    CHECK(flat_est.estimate == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(flat_est.std_error == 0.0);

    // b = 2 rejects the corner of the box, so the estimator carries noise.
    DirichletIntegralSpec s2 = s;
    s2.b = 2;
    s2.p = 0.1;
    s2.q = 0.2;
    const McEstimate a = dirichlet_mc(s2, 100000, 2024);
    const McEstimate b = dirichlet_mc(s2, 100000, 2024);
    CHECK(a.estimate == b.estimate); // seeded determinism
    CHECK(a.std_error == b.std_error);
    CHECK(a.std_error > 0.0);
    // Exact value (1 - q - b*p)^b = 0.36 at nu = rho = 1.
    CHECK(std::abs(a.estimate - 0.36) <= 4.0 * a.std_error + 1e-12);
    const McEstimate c = dirichlet_mc(s2, 100000, 999);
    CHECK(c.estimate != a.estimate);
    CHECK(std::abs(c.estimate - 0.36) <= 4.0 * c.std_error + 1e-12);

    CHECK_THROWS_AS(dirichlet_mc(s, 1, 7), ParamError);
    DirichletIntegralSpec empty = s;
    empty.p = 0.8; // b*p >= 1-q
    CHECK_THROWS_AS(dirichlet_mc(empty, 100, 7), EmptyDomainError);
    DirichletIntegralSpec flat = s;
    flat.q = 0.0;
    flat.rho = 0.0; // rho must be positive once the top face is included
    CHECK_THROWS_AS(dirichlet_mc(flat, 100, 7), ParamError);
    DirichletIntegralSpec pole = s;
    pole.nu = -1.0;
    CHECK_THROWS_AS(dirichlet_mc(pole, 100, 7), PoleError);
}

} // TEST_SUITE

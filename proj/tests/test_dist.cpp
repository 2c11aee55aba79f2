#include <doctest.h>

#include "gibbspart/dist.hpp"

#include <cmath>
#include <vector>

using namespace gibbspart;

TEST_SUITE("dist") {

TEST_CASE("block-count pmf known values") {
    auto ep = GibbsModel::ewens_pitman(0.0, 1.0);
    auto pmf = blocks_pmf_extval(ep, 4, Mode::Exact);
    CHECK(pmf[0].exact() == Rational(6, 24));
    CHECK(pmf[1].exact() == Rational(11, 24));
    CHECK(pmf[2].exact() == Rational(6, 24));
    CHECK(pmf[3].exact() == Rational(1, 24));

    // Float path sums to 1.
    auto big = blocks_pmf(ep, 200, Mode::Float);
    double total = 0.0;
    for (double p : big) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    // alpha < 0: zero probability beyond m blocks.
    auto epm = GibbsModel::ewens_pitman(-0.5, 1.0);
    auto pm = blocks_pmf_extval(epm, 6, Mode::Exact);
    CHECK(pm[2].is_zero());
    CHECK(pm[0].exact() + pm[1].exact() == Rational(1));
}

TEST_CASE("largest-size cdf known values") {
    auto ep = GibbsModel::ewens_pitman(0.0, 1.0);
    // P(L <= 2) at n=4: shapes {2,2} and {2,1,1} and {1^4}: (3+6+1)/24.
    CHECK(extreme_cdf_extval(ep, 4, 1, 2, Mode::Exact).exact() ==
          Rational(10, 24));
    // P(2nd largest <= 1) at n=4: at most one block of size > 1.
    CHECK(extreme_cdf_extval(ep, 4, 2, 1, Mode::Exact).exact() ==
          Rational(21, 24));
    // r = n is certain.
    CHECK(extreme_cdf_extval(ep, 4, 1, 4, Mode::Exact).exact() == Rational(1));
    // i > n: the i-th largest is 0 by convention, cdf is 1.
    CHECK(extreme_cdf_extval(ep, 4, 5, 1, Mode::Exact).exact() == Rational(1));
}

TEST_CASE("smallest-size tail known values") {
    auto ep = GibbsModel::ewens_pitman(0.0, 1.0);
    // P(S >= 2) at n=4: shapes {4} and {2,2}: (6+3)/24 = 3/8.
    CHECK(smallest_tail_extval(ep, 4, 2, Mode::Exact).exact() ==
          Rational(3, 8));
    CHECK(smallest_tail_extval(ep, 4, 1, Mode::Exact).exact() == Rational(1));
    // P(S >= 4) = P(single block of size 4) = 6/24.
    CHECK(smallest_tail_extval(ep, 4, 4, Mode::Exact).exact() ==
          Rational(1, 4));
}

TEST_CASE("monotonicity in r") {
    auto model = GibbsModel::ewens_pitman(0.5, 1.0);
    double prev_cdf = -1.0;
    double prev_tail = 2.0;
    for (int r = 1; r <= 12; ++r) {
        const double c = extreme_cdf(model, 12, 1, r);
        const double t = smallest_tail(model, 12, r);
        CHECK(c >= prev_cdf - 1e-14);
        CHECK(t <= prev_tail + 1e-14);
        prev_cdf = c;
        prev_tail = t;
    }
    CHECK(prev_cdf == doctest::Approx(1.0));
}

TEST_CASE("conditional laws") {
    auto w = factorial_weights();
    // P(L <= 2 | K = 2) at n=4: {2,2} within k=2: 3/11.
    CHECK(conditional_extreme(w, 4, 2, Which::Largest, 2, Mode::Exact) ==
          doctest::Approx(3.0 / 11.0));
    // P(S >= 2 | K = 2) at n=4: {2,2} again (since {3,1} has S=1): 3/11.
    CHECK(conditional_extreme(w, 4, 2, Which::Smallest, 2, Mode::Exact) ==
          doctest::Approx(3.0 / 11.0));
    // Structural zero: largest <= r impossible for r < n/k.
    CHECK(conditional_extreme(w, 9, 2, Which::Largest, 4, Mode::Exact) == 0.0);
    // i-th largest given k: i=2, r=2, n=4, k=2 -> both blocks <= 2 or
    // one oversized block: {2,2} and {3,1}: (3+8)/11 = 1.
    CHECK(conditional_ith_largest(w, 4, 2, 2, 2, Mode::Exact) ==
          doctest::Approx(1.0));
    CHECK(conditional_ith_largest(w, 4, 2, 2, 1, Mode::Exact) ==
          doctest::Approx(8.0 / 11.0));
}

TEST_CASE("factorial moments") {
    auto ep = GibbsModel::ewens_pitman(0.0, 1.0);
    // E[S] = 15/8 and E[L] = 67/24 at n=4.
    CHECK(factorial_moment(ep, 4, Which::Smallest, 1, Mode::Exact) ==
          doctest::Approx(15.0 / 8.0));
    CHECK(factorial_moment(ep, 4, Which::Largest, 1, Mode::Exact) ==
          doctest::Approx(67.0 / 24.0));
    // E[[L]_2] = E[L(L-1)]: shapes give (12*6 + 6*8 + 2*9 + 0)/24 = 138/24.
    CHECK(factorial_moment(ep, 4, Which::Largest, 2, Mode::Exact) ==
          doctest::Approx(138.0 / 24.0));
    // L <= n always: E[[L]_1] <= n.
    CHECK(factorial_moment(ep, 12, Which::Largest, 1, Mode::Float) <= 12.0);
}

TEST_CASE("query validation") {
    auto ep = GibbsModel::ewens_pitman(0.0, 1.0);
    CHECK_THROWS_AS(extreme_cdf(ep, 4, 1, 5), Error);
    CHECK_THROWS_AS(extreme_cdf(ep, 4, 0, 2), Error);
    CHECK_THROWS_AS(smallest_tail(ep, 0, 1), Error);
    CHECK_THROWS_AS(conditional_extreme(factorial_weights(), 4, 5,
                                        Which::Largest, 2),
                    Error);
    // Custom model bounded by its v table.
    auto cu = GibbsModel::custom({1.0, 1.0},
                                 {{1.0}, {0.5, 0.25}});
    CHECK_THROWS_AS(blocks_pmf(cu, 3), Error);
}

TEST_CASE("custom model failing normalization is reported") {
    auto bad = GibbsModel::custom({1.0, 1.0}, {{1.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(blocks_pmf_extval(bad, 2, Mode::Exact),
                    NormalizationError);
}

} // TEST_SUITE

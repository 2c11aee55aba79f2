#include "doctest.h"

#include "gibbspart/asymp.hpp"
#include "gibbspart/bell.hpp"
#include "gibbspart/dist.hpp"
#include "gibbspart/errors.hpp"
#include "gibbspart/model.hpp"
#include "gibbspart/special.hpp"

#include <cmath>
#include <vector>

using namespace gibbspart;

namespace {
constexpr double kGolomb = 0.62432998854355087; // lim E[largest]/n, alpha=0, theta=1
// P(max(Y, 1-Y) <= 0.6) for Y ~ Beta(1/2, 1/2) (arcsine law).
constexpr double kArcsine06 = 0.12818843369794986;
} // namespace

TEST_SUITE("asymp") {

TEST_CASE("asymptotic form evaluation") {
    AsymptoticForm f{2.0, -1.5, 2.0, false};
    const double n = 100.0;
    CHECK(f.evaluate(n) ==
          doctest::Approx(2.0 * std::pow(n, -1.5) * std::pow(std::log(n), 2.0))
              .epsilon(1e-14));
    AsymptoticForm unit{3.0, 0.0, 0.0, false};
    CHECK(unit.evaluate(7.0) == 3.0);
    CHECK_THROWS_AS(f.evaluate(0.0), ParamError);
    CHECK_THROWS_AS(f.evaluate(-2.0), ParamError);
}

TEST_CASE("parity sign rule") {
    ParitySign s{-1, true, true};
    CHECK(s.at(3, 2) == 1);  // -1 * (-1)^3 * (-1)^2
    CHECK(s.at(4, 2) == -1);
    CHECK(s.at(4, 3) == 1);
    ParitySign n_only{1, true, false};
    CHECK(n_only.at(5, 9) == -1);
    CHECK(n_only.at(6, 9) == 1);
    ParitySign constant{1, false, false};
    CHECK(constant.at(11, 4) == 1);
}

TEST_CASE("Sibuya block-frequency mass") {
    CHECK(sibuya_pmf(0.5, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sibuya_pmf(0.5, 2) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(sibuya_pmf(0.3, 1) == doctest::Approx(0.3).epsilon(1e-15));
    // p(j+1)/p(j) = (j - alpha)/(j + 1)
    CHECK(sibuya_pmf(0.3, 4) / sibuya_pmf(0.3, 3) ==
          doctest::Approx((3.0 - 0.3) / 4.0).epsilon(1e-13));
    // Partial sums approach 1 with tail ~ r^-alpha / Gamma(1 - alpha).
    double partial = 0.0;
    for (int j = 1; j <= 400; ++j) partial += sibuya_pmf(0.3, j);
    const double tail_est = std::pow(400.0, -0.3) / std::tgamma(0.7);
    CHECK(partial < 1.0);
    CHECK(1.0 - partial == doctest::Approx(tail_est).epsilon(5e-3));
    CHECK_THROWS_AS(sibuya_pmf(1.5, 1), ParamError);
    CHECK_THROWS_AS(sibuya_pmf(0.5, 0), ParamError);
}

TEST_CASE("smallest-block tail forms for fixed threshold") {
    // 0 < alpha < 1: constant 2 Gamma(2) / Gamma(1/2) * (partial sum)^-3
    // equals 8/sqrt(pi) at r = 2.
    auto pos = smallest_tail_asymp_ep(0.5, 1.0, 2);
    CHECK(pos.leading.coefficient ==
          doctest::Approx(8.0 / std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(pos.leading.coefficient ==
          doctest::Approx(4.5135166683820502).epsilon(1e-14));
    CHECK(pos.leading.n_power == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(pos.leading.log_n_power == 0.0);
    CHECK(!pos.correction.has_value());
    // Large-threshold simplification keeps the n-order, constant -> 1/Gamma(1/2).
    auto pos_lr = smallest_tail_asymp_ep(0.5, 1.0, 2, true);
    CHECK(pos_lr.leading.coefficient ==
          doctest::Approx(0.56418958354775628).epsilon(1e-14));
    CHECK(pos_lr.leading.n_power == doctest::Approx(-1.5).epsilon(1e-15));

    // alpha = 0: limit exp(-theta * H_{r-1}), here e^-1.
    auto zero = smallest_tail_asymp_ep(0.0, 1.0, 2);
    CHECK(zero.leading.coefficient ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(zero.leading.n_power == 0.0);
    auto zero_lr = smallest_tail_asymp_ep(0.0, 1.0, 10, true);
    CHECK(zero_lr.leading.coefficient ==
          doctest::Approx(std::exp(-kEulerGamma) / 10.0).epsilon(1e-12));

    // alpha < 0 with theta = -m*alpha: tends to 1, signed O(n^alpha) term.
    auto neg = smallest_tail_asymp_ep(-0.5, 1.0, 2);
    CHECK(neg.leading.coefficient == 1.0);
    CHECK(neg.leading.n_power == 0.0);
    REQUIRE(neg.correction.has_value());
    CHECK(neg.correction->coefficient ==
          doctest::Approx(-0.56418958354775628).epsilon(1e-12));
    CHECK(neg.correction->n_power == doctest::Approx(-0.5).epsilon(1e-15));
    // m = 1: a single block survives every threshold, no correction term.
    auto single = smallest_tail_asymp_ep(-0.5, 0.5, 3);
    CHECK(single.leading.coefficient == 1.0);
    CHECK(!single.correction.has_value());
    // Large-threshold form only pins the order of the correction.
    auto neg_lr = smallest_tail_asymp_ep(-0.5, 1.0, 2, true);
    REQUIRE(neg_lr.correction.has_value());
    CHECK(neg_lr.correction->order_only);
    CHECK(neg_lr.correction->n_power == doctest::Approx(-0.5).epsilon(1e-15));

    CHECK_THROWS_AS(smallest_tail_asymp_ep(0.5, 1.0, 1), ParamError);
}

TEST_CASE("Buchstab function closed forms and delay equation") {
    // Two terms survive at x = 0.4: 0.4 * (1 + log 1.5).
    CHECK(buchstab_omega(1.0, 0.4) ==
          doctest::Approx(0.4 * (1.0 + std::log(1.5))).epsilon(1e-6));
    CHECK(buchstab_omega(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // In u = 1/x coordinates with theta = 1: d/du [u * omega(1/u)] = omega(1/(u-1)).
    const double h = 1e-4;
    for (double u : {2.2, 2.5, 2.8}) {
        const double lhs = ((u + h) * buchstab_omega(1.0, 1.0 / (u + h)) -
                            (u - h) * buchstab_omega(1.0, 1.0 / (u - h))) /
                           (2.0 * h);
        const double rhs = buchstab_omega(1.0, 1.0 / (u - 1.0));
        CHECK(std::abs(lhs - rhs) <= 1e-3);
    }
    CHECK_THROWS_AS(buchstab_omega(0.0, 0.5), ParamError);
    CHECK_THROWS_AS(buchstab_omega(1.0, 1.5), ParamError);
}

TEST_CASE("smallest-block large deviations") {
    // alpha = 0, theta = 1, x = 0.4: Gamma(1) * 0.4^-1 * omega(0.4) = 1 + log 1.5.
    auto zero = smallest_large_dev(0.0, 1.0, 0.4);
    CHECK(zero.coefficient ==
          doctest::Approx(1.0 + std::log(1.5)).epsilon(1e-6));
    CHECK(zero.n_power == doctest::Approx(-1.0).epsilon(1e-15));
    // 0 < alpha < 1: Gamma(1 + theta)/Gamma(1 - alpha), order n^(-theta-alpha);
    // the constant does not depend on x.
    auto pos = smallest_large_dev(0.5, 1.0, 0.3);
    CHECK(pos.coefficient ==
          doctest::Approx(1.0 / std::tgamma(0.5)).epsilon(1e-12));
    CHECK(pos.n_power == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(smallest_large_dev(0.5, 1.0, 0.7).coefficient ==
          doctest::Approx(pos.coefficient).epsilon(1e-13));
    // alpha = -1/2, theta = 1 (two blocks): constant arcsine-law probability.
    auto neg = smallest_large_dev(-0.5, 1.0, 0.4);
    CHECK(neg.coefficient == doctest::Approx(kArcsine06).epsilon(1e-6));
    CHECK(neg.n_power == 0.0);
    // x above 1/m: empty constant at the boundary, order-only envelope beyond.
    CHECK(smallest_large_dev(-0.5, 1.0, 0.5).coefficient == 0.0);
    auto beyond = smallest_large_dev(-0.5, 1.0, 0.6);
    CHECK(beyond.order_only);
    CHECK(beyond.n_power == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(smallest_large_dev(0.0, 1.0, 1.2), ParamError);

    // Exact tail at finite n approaches the alpha = 0 form (ratios shrink
    // toward 1 as n grows at fixed x = 0.4).
    auto model = GibbsModel::ewens_pitman(0.0, 1.0);
    const double r500 =
        smallest_tail(model, 500, 200, Mode::Float) / zero.evaluate(500);
    const double r2000 =
        smallest_tail(model, 2000, 800, Mode::Float) / zero.evaluate(2000);
    CHECK(r500 == doctest::Approx(1.0).epsilon(0.03));
    CHECK(r2000 == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::abs(r2000 - 1.0) < std::abs(r500 - 1.0));
}

TEST_CASE("conditional smallest-block limits given block count") {
    // alpha = 0, k = 2, x = 1/4: log 3 * (log n)^-1.
    auto zero = consistent_smallest_cond(0.0, 0.25, 2);
    CHECK(zero.coefficient == doctest::Approx(std::log(3.0)).epsilon(1e-7));
    CHECK(zero.n_power == 0.0);
    CHECK(zero.log_n_power == doctest::Approx(-1.0).epsilon(1e-15));
    // k*alpha at a positive integer sits on a gamma pole.
    CHECK_THROWS_AS(consistent_smallest_cond(0.5, 0.25, 2), PoleError);
    // alpha = 0.3, k = 2: positive constant, order n^(-(k-1) alpha).
    auto pos = consistent_smallest_cond(0.3, 0.25, 2);
    CHECK(pos.coefficient ==
          doctest::Approx(0.39643045748907868).epsilon(1e-7));
    CHECK(pos.coefficient > 0.0);
    CHECK(pos.n_power == doctest::Approx(-0.3).epsilon(1e-13));
    // Vanishes when fewer than k blocks of size >= xn fit.
    CHECK(consistent_smallest_cond(0.3, 0.6, 2).coefficient == 0.0);
    CHECK(consistent_smallest_cond(0.3, 1.2, 2).coefficient == 0.0);
    // alpha < 0: plain constant.
    auto neg = consistent_smallest_cond(-0.5, 0.4, 2);
    CHECK(neg.coefficient == doctest::Approx(kArcsine06).epsilon(1e-6));
    CHECK(neg.n_power == 0.0);

    // Exact conditional probabilities converge to the form (alpha = 0.3).
    auto model = GibbsModel::ewens_pitman(0.3, 1.0);
    const double e500 = conditional_extreme(model.weights(), 500, 2,
                                            Which::Smallest, 125, Mode::Float);
    const double e1500 = conditional_extreme(model.weights(), 1500, 2,
                                             Which::Smallest, 375, Mode::Float);
    const double q500 = e500 / pos.evaluate(500);
    const double q1500 = e1500 / pos.evaluate(1500);
    CHECK(q500 > 0.9);
    CHECK(q500 < 1.25);
    CHECK(q1500 > 0.9);
    CHECK(q1500 < 1.25);
    CHECK(std::abs(q1500 - 1.0) < std::abs(q500 - 1.0));
}

TEST_CASE("marginal smallest-block tail from block-count mixture") {
    // With P(K_n = k) ~ Gamma(theta) theta^k n^-theta (alpha = 0) the mixture
    // reproduces the large-deviation form exactly, term by term.
    auto f0 = [](int) { return 1.0; };
    auto eta = [](int) { return 1.0; };
    const double mix = consistent_smallest_marginal(0.0, f0, eta, 0.4, 500.0);
    const double direct = smallest_large_dev(0.0, 1.0, 0.4).evaluate(500.0);
    CHECK(mix == doctest::Approx(direct).epsilon(1e-12));
    // alpha = 0.3, theta = 1: f(k) = prod_{i<k} (1 + 0.3 i), eta2 = theta.
    // The k = 1 term recovers the unconditional rate; higher k decay faster,
    // so the ratio tightens as n grows.
    auto f3 = [](int k) {
        double p = 1.0;
        for (int i = 0; i < k; ++i) p *= 1.0 + 0.3 * i;
        return p;
    };
    auto rate = smallest_large_dev(0.3, 1.0, 0.25);
    const double q4 = consistent_smallest_marginal(0.3, f3, eta, 0.25, 1e4) /
                      rate.evaluate(1e4);
    const double q6 = consistent_smallest_marginal(0.3, f3, eta, 0.25, 1e6) /
                      rate.evaluate(1e6);
    CHECK(q6 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(q6 - 1.0) < std::abs(q4 - 1.0));
    CHECK(consistent_smallest_marginal(0.3, f3, eta, 1.2, 100.0) == 0.0);
    CHECK_THROWS_AS(consistent_smallest_marginal(1.5, f3, eta, 0.25, 100.0),
                    ParamError);
}

TEST_CASE("generalized Dickman function") {
    // alpha = 0, theta = 1, x = 1/2: 1 - log 2.
    CHECK(dickman_rho(0.0, 1.0, 0.5) ==
          doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-9));
    // On [1/2, 1) the alpha = 0, theta = 1 curve is 1 + log x.
    CHECK(dickman_rho(0.0, 1.0, 0.6) ==
          doctest::Approx(1.0 + std::log(0.6)).epsilon(1e-9));
    CHECK(dickman_rho(0.0, 1.0, 1.0) == 1.0);
    CHECK(dickman_rho(0.0, 1.0, 2.0) == 1.0);
    // alpha = -1, theta = 2 (two equal-weight blocks): 2x - 1 on [1/2, 1],
    // zero below the 1/2 support edge.
    CHECK(dickman_rho(-1.0, 2.0, 0.6) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(dickman_rho(-1.0, 2.0, 0.4) == 0.0);
    // alpha = -1/2, theta = 1: arcsine law for the larger of two fractions.
    CHECK(dickman_rho(-0.5, 1.0, 0.6) ==
          doctest::Approx(kArcsine06).epsilon(1e-6));
    CHECK(dickman_rho(-0.5, 1.0, 0.4) == 0.0);
    // Monotone nondecreasing in x across level boundaries.
    const std::vector<double> grid = {0.15, 0.25, 0.4, 0.6, 0.8, 1.0};
    double prev = -1.0;
    for (double x : grid) {
        const double v = dickman_rho(0.0, 1.0, x);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    // theta = 0 with alpha > 0 is a removable singularity, evaluated as the
    // theta -> 0+ limit; continuity in theta pins it.
    const double at_zero = dickman_rho(0.5, 0.0, 0.6);
    CHECK(at_zero == doctest::Approx(dickman_rho(0.5, 1e-5, 0.6)).epsilon(1e-4));
    CHECK(at_zero > 0.0);
    CHECK(at_zero < 1.0);
    CHECK(dickman_rho(0.5, 0.0, 0.35) < at_zero);

    // Exact largest-block distributions converge to the limit curve
    // (alpha = 0, theta = 1, x = 1/2).
    auto model = GibbsModel::ewens_pitman(0.0, 1.0);
    const double lim = dickman_rho(0.0, 1.0, 0.5, 1e-9);
    const double c400 = extreme_cdf(model, 400, 1, 200, Mode::Float) / lim;
    const double c1200 = extreme_cdf(model, 1200, 1, 600, Mode::Float) / lim;
    CHECK(c400 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(c1200 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(c1200 - 1.0) < std::abs(c400 - 1.0));
    // Sharper cross-check in the alpha-regime (alpha = 1/2, theta = 1).
    auto half = GibbsModel::ewens_pitman(0.5, 1.0);
    const double exact500 = extreme_cdf(half, 500, 1, 250, Mode::Float);
    CHECK(exact500 / dickman_rho(0.5, 1.0, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("conditional largest-block limits given block count") {
    // Two equal-weight blocks: max fraction <= 1/2 has limit probability 0.
    CHECK(rho_tilde(-1.0, 0.5, 2) == 0.0);
    // At k = m the conditional and unconditional limits coincide.
    CHECK(rho_tilde(-1.0, 0.6, 2) ==
          doctest::Approx(dickman_rho(-1.0, 2.0, 0.6)).epsilon(1e-12));
    CHECK(rho_tilde(-0.5, 0.6, 2) ==
          doctest::Approx(dickman_rho(-0.5, 1.0, 0.6)).epsilon(1e-12));
    // Probability range and support cutoff.
    CHECK(rho_tilde(-1.0, 0.95, 3) == doctest::Approx(0.9925).epsilon(1e-10));
    CHECK(rho_tilde(-1.0, 0.3, 3) == 0.0);
    for (double x : {0.4, 0.55, 0.7, 0.85}) {
        const double v = rho_tilde(-1.0, x, 3);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("root of the truncated binomial series") {
    // Small-order closed form: 1 - xi/2 - xi^2/8 vanishes at 2(sqrt(3) - 1).
    const double root2 = rho_r_root(0.5, 2);
    CHECK(root2 == doctest::Approx(2.0 * (std::sqrt(3.0) - 1.0)).epsilon(1e-12));
    CHECK(f_r_eval(0.5, 2, 1.0) ==
          doctest::Approx(1.0 - 0.5 - 0.125).epsilon(1e-14));
    CHECK(f_r_derivative(0.5, 2, 1.0) ==
          doctest::Approx(-0.5 - 0.25).epsilon(1e-14));
    // Residuals at the root and monotone decrease in r.
    double prev_root = root2;
    for (int r : {10, 100, 1000, 10000}) {
        const double rho = rho_r_root(0.5, r);
        CHECK(std::abs(f_r_eval(0.5, r, rho)) <= 1e-12);
        CHECK(rho > 1.0);
        CHECK(rho < prev_root);
        prev_root = rho;
    }
    // The scaled excess r*(rho_r - 1) converges, but not to the one-step
    // Newton guess (1-alpha)/alpha = 1: the curvature of the series at 1
    // enters at the same order as its value, and the true limit is the root
    // eps* of alpha * sum_{k>=1} eps^k / (k! (k - alpha)) = 1, which is
    // 0.854033 at alpha = 1/2.
    CHECK(10.0 * (rho_r_root(0.5, 10) - 1.0) ==
          doctest::Approx(0.86908919).epsilon(1e-6));
    CHECK(100.0 * (rho_r_root(0.5, 100) - 1.0) ==
          doctest::Approx(0.85554381).epsilon(1e-6));
    CHECK(10000.0 * (rho_r_root(0.5, 10000) - 1.0) ==
          doctest::Approx(0.85404777).epsilon(1e-6));
    // Coarse agreement with the Newton guess at moderate r (alpha = 1/2).
    CHECK(std::abs(100.0 * (rho_r_root(0.5, 100) - 1.0) - 1.0) < 0.25);
    CHECK_THROWS_AS(rho_r_root(0.0, 10), ParamError);
    CHECK_THROWS_AS(rho_r_root(0.5, 0), ParamError);
}

TEST_CASE("small-deviation probability of the largest block") {
    const double er = largest_small_dev(0.5, 1.0, 200, 10, DevForm::ExactRoot);
    const double lm = largest_small_dev(0.5, 1.0, 200, 10, DevForm::Limit);
    CHECK(er == doctest::Approx(1.6525263263272413e-06).epsilon(1e-12));
    CHECK(lm == doctest::Approx(1.2950610156345928e-07).epsilon(1e-12));
    // Exact probabilities track the root form ever more closely as r grows
    // with n = 5r.
    auto model = GibbsModel::ewens_pitman(0.5, 1.0);
    double prev_gap = 1e9;
    for (int r : {20, 40, 80}) {
        const int n = 5 * r;
        const double exact = extreme_cdf(model, n, 1, r, Mode::Float);
        const double form = largest_small_dev(0.5, 1.0, n, r, DevForm::ExactRoot);
        const double ratio = exact / form;
        CHECK(ratio > 1.0);
        CHECK(ratio < 1.2);
        CHECK(std::abs(ratio - 1.0) < prev_gap);
        prev_gap = std::abs(ratio - 1.0);
    }
}

TEST_CASE("scaled factorial-moment limits of the extremes") {
    // Two equal-weight blocks (alpha = -1, theta = 2): E[S]/n -> 1/4,
    // E[S(S-n^-1 scale)]... second scaled moment 1/12, E[L]/n -> 3/4.
    CHECK(moment_limit_smallest(-1.0, 2, 1) ==
          doctest::Approx(0.25).epsilon(1e-10));
    CHECK(moment_limit_smallest(-1.0, 2, 2) ==
          doctest::Approx(1.0 / 12.0).epsilon(1e-10));
    CHECK(moment_limit_largest(-1.0, 2.0, 1) ==
          doctest::Approx(0.75).epsilon(1e-10));
    // Single block: the smallest is everything.
    CHECK(moment_limit_smallest(-0.5, 1, 1) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Arcsine model (alpha = -1/2, two blocks): E[S]/n -> 1/2 - 1/pi.
    CHECK(moment_limit_smallest(-0.5, 2, 1) ==
          doctest::Approx(0.5 - 1.0 / M_PI).epsilon(2e-9));
    // alpha = 0, theta = 1: mean largest fraction tends to the Golomb
    // constant; the tail truncation meets a 1e-6 budget but not the default.
    CHECK(std::abs(moment_limit_largest(0.0, 1.0, 1, 1e-6) - kGolomb) < 2e-6);
    CHECK_THROWS_AS(moment_limit_largest(0.0, 1.0, 1), ToleranceError);
    CHECK_THROWS_AS(moment_limit_smallest(0.5, 2, 1), ParamError);
}

TEST_CASE("block-count mixture extreme-value asymptotics") {
    auto model = GibbsModel::gnedin(1.0, 1.0);
    // Smallest-block tail at x = 0.15 against the exact law at n = 400.
    const double st = gnedin_smallest_tail_asymp(1.0, 1.0, 0.15);
    CHECK(st == doctest::Approx(0.5911137828).epsilon(1e-9));
    CHECK(smallest_tail(model, 400, 60, Mode::Float) / st ==
          doctest::Approx(1.0).epsilon(0.02));
    // Above x = 1/2 only the single-block event survives.
    CHECK(gnedin_smallest_tail_asymp(1.0, 1.0, 0.6) ==
          doctest::Approx(gnedin_block_pmf(1.0, 1.0).prob(1)).epsilon(1e-12));
    // Largest-block limit law at x = 0.6 against the exact law at n = 400.
    const double lc = gnedin_largest_cdf_asymp(1.0, 1.0, 0.6, 1e-9);
    CHECK(lc == doctest::Approx(0.3510705484).epsilon(1e-9));
    CHECK(extreme_cdf(model, 400, 1, 240, Mode::Float) / lc ==
          doctest::Approx(1.0).epsilon(0.02));
    CHECK(gnedin_largest_cdf_asymp(1.0, 1.0, 1.0, 1e-9) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // First scaled moments of both extremes.
    const double sm = gnedin_smallest_moment_asymp(1.0, 1.0, 1);
    CHECK(sm == doctest::Approx(0.482014709).epsilon(1e-8));
    CHECK(factorial_moment(model, 400, Which::Smallest, 1, Mode::Float) /
              400.0 / sm ==
          doctest::Approx(1.0).epsilon(0.02));
    const double lmom = gnedin_largest_moment_asymp(1.0, 1.0, 1);
    CHECK(lmom == doctest::Approx(0.7245818327).epsilon(1e-8));
    // Independent evaluation of the largest-moment series at lighter tails:
    // sum_m P(M = m) H_m / m.
    GnedinBlockPmf pmf = gnedin_block_pmf(2.0, 1.5);
    double manual = 0.0;
    double harmonic = 0.0;
    for (int m = 1; m <= 4000; ++m) {
        harmonic += 1.0 / m;
        manual += pmf.prob(m) * harmonic / m;
    }
    CHECK(gnedin_largest_moment_asymp(2.0, 1.5, 1) ==
          doctest::Approx(manual).epsilon(1e-7));
}

TEST_CASE("special-number ratio asymptotics") {
    // Fixed block count, alpha = -1: |coefficient| n / 2 with sign (-1)^n.
    auto lah = gfc_fixed_k_asymp(-1.0, 2);
    CHECK(lah.magnitude.coefficient == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(lah.magnitude.n_power == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lah.sign.at(7, 2) == -1);
    CHECK(lah.sign.at(8, 2) == 1);
    // The n = 2000 ratio is exactly (n-1)/n times the leading form.
    {
        ExtVal exact = special_number(SpecialKind::Gfc, 2000, 2, -1.0, 1,
                                      Mode::Float);
        const double ratio =
            std::exp(exact.log_mag() - log_factorial(2000)) /
            lah.magnitude.evaluate(2000.0);
        CHECK(ratio == doctest::Approx(1999.0 / 2000.0).epsilon(1e-10));
        CHECK(exact.sign() == lah.sign.at(2000, 2));
    }
    // alpha = 1/2, one block: 1/(2 sqrt(pi)) n^-3/2, sign (-1)^(n-1).
    auto half = gfc_fixed_k_asymp(0.5, 1);
    CHECK(half.magnitude.coefficient ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-13));
    CHECK(half.magnitude.n_power == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(half.sign.at(4, 1) == -1);
    {
        ExtVal exact = special_number(SpecialKind::Gfc, 2000, 1, 0.5, 1,
                                      Mode::Float);
        const double ratio =
            std::exp(exact.log_mag() - log_factorial(2000)) /
            half.magnitude.evaluate(2000.0);
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(exact.sign() == half.sign.at(2000, 1));
    }
    CHECK_THROWS_AS(gfc_fixed_k_asymp(0.0, 2), ParamError);
    CHECK_THROWS_AS(gfc_fixed_k_asymp(1.0, 2), PoleError);

    // Size-floor variants in the regime r = x n.
    auto ga = gfc_assoc_asymp(-1.0, 2, 0.25);
    CHECK(ga.magnitude.coefficient == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(ga.magnitude.n_power == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ga.sign.at(7, 2) == -1);
    CHECK(ga.sign.at(8, 2) == 1);
    auto sa = stirling1_assoc_asymp(2, 0.25);
    CHECK(sa.magnitude.coefficient ==
          doctest::Approx(std::log(3.0)).epsilon(1e-9));
    CHECK(sa.magnitude.n_power == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(sa.sign.at(5, 2) == 1);
    CHECK_THROWS_AS(gfc_assoc_asymp(-1.0, 2, 0.5), ParamError);
    CHECK_THROWS_AS(stirling1_assoc_asymp(2, 0.5), ParamError);
    auto gb = gfc_assoc_boundary_asymp(-0.5, 3);
    CHECK(gb.magnitude.order_only);
    CHECK(gb.magnitude.n_power == doctest::Approx(-1.5).epsilon(1e-15));
    auto sb = stirling1_assoc_boundary_asymp(3);
    CHECK(sb.magnitude.order_only);
    CHECK(sb.magnitude.n_power == doctest::Approx(-3.0).epsilon(1e-15));

    // Uniform one-block ratio is exactly 1/n; k = 3 tracks the exact value.
    CHECK(stirling1_hwang_ratio(100, 1) == doctest::Approx(0.01).epsilon(1e-12));
    {
        ExtVal exact = special_number(SpecialKind::Stirling1, 1000, 3, 0.0, 1,
                                      Mode::Float);
        const double exact_ratio =
            std::exp(exact.log_mag() - log_factorial(1000));
        CHECK(exact_ratio / stirling1_hwang_ratio(1000, 3) ==
          doctest::Approx(1.0245404).epsilon(1e-4));
    }
    CHECK_THROWS_AS(stirling1_hwang_ratio(1, 1), ParamError);
}

} // TEST_SUITE

#include <doctest.h>

#include "gibbspart/special.hpp"

#include <cmath>

using namespace gibbspart;

TEST_SUITE("special") {

TEST_CASE("log_gamma_signed on both half-lines") {
    CHECK(log_gamma_signed(5.0).sign == 1);
    CHECK(log_gamma_signed(5.0).log_abs == doctest::Approx(std::log(24.0)));
    CHECK(log_gamma_signed(0.5).log_abs ==
          doctest::Approx(0.5 * std::log(M_PI)));

    // Gamma(-0.5) = -2 sqrt(pi); Gamma(-1.5) = 4 sqrt(pi)/3.
    auto gm = log_gamma_signed(-0.5);
    CHECK(gm.sign == -1);
    CHECK(gm.log_abs == doctest::Approx(std::log(2.0 * std::sqrt(M_PI))));
    auto gm2 = log_gamma_signed(-1.5);
    CHECK(gm2.sign == 1);
    CHECK(gm2.log_abs ==
          doctest::Approx(std::log(4.0 * std::sqrt(M_PI) / 3.0)));

    CHECK_THROWS_AS(log_gamma_signed(0.0), PoleError);
    CHECK_THROWS_AS(log_gamma_signed(-3.0), PoleError);
}

TEST_CASE("sin_pi exact near integers") {
    CHECK(sin_pi(1.0) == 0.0);
    CHECK(sin_pi(-7.0) == 0.0);
    CHECK(sin_pi(0.5) == doctest::Approx(1.0));
    CHECK(sin_pi(2.5) == doctest::Approx(1.0));
    CHECK(sin_pi(1e8 + 0.5) == doctest::Approx(1.0));
}

TEST_CASE("log_factorial and log_binomial") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)));
    CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)));
    CHECK(log_binomial(400, 200) ==
          doctest::Approx(log_factorial(400) - 2 * log_factorial(200)));
}

TEST_CASE("factorial_poly rising and falling") {
    // (2)_{3;1} = 2*3*4 = 24
    CHECK(factorial_poly(2.0, 3, 1.0, FactKind::Rising).to_double() ==
          doctest::Approx(24.0));
    // [0.5]_3 = 0.5 * (-0.5) * (-1.5) = 0.375
    auto f = factorial_poly(0.5, 3, 1.0, FactKind::Falling, Mode::Exact);
    CHECK(f.exact() == Rational(3, 8));
    // (theta)_{k;alpha} with a step: (1)_{3;0.5} = 1 * 1.5 * 2 = 3
    auto r = factorial_poly(1.0, 3, 0.5, FactKind::Rising, Mode::Exact);
    CHECK(r.exact() == Rational(3));
    // i = 0 -> empty product
    CHECK(factorial_poly(7.0, 0, 1.0, FactKind::Rising).to_double() == 1.0);
    // zero factor gives exact zero
    CHECK(factorial_poly(-2.0, 3, 1.0, FactKind::Rising).is_zero());
}

TEST_CASE("harmonic_number") {
    CHECK(harmonic_number(0) == 0.0);
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0));
}

TEST_CASE("chi-square survival function") {
    // Q(1.0; dof=2) = exp(-1/2)
    CHECK(chi_square_sf(1.0, 2) == doctest::Approx(std::exp(-0.5)));
    // Known quantile: P(chi2_1 > 3.841459) ~ 0.05
    CHECK(chi_square_sf(3.8414588206941227, 1) ==
          doctest::Approx(0.05).epsilon(1e-6));
    CHECK(gamma_q(1.0, 0.0) == doctest::Approx(1.0));
}

} // TEST_SUITE

#include "gibbspart/asymp.hpp"

#include "gibbspart/extval.hpp"
#include "gibbspart/model.hpp"
#include "gibbspart/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gibbspart {

namespace {

bool is_nonpositive_integer(double x) {
    if (x > 1e-12) return false;
    const double r = std::nearbyint(x);
    return std::abs(x - r) < 1e-12 * std::max(1.0, std::abs(x));
}

// Validates two-parameter model arguments; returns m (>= 1) when alpha < 0
// (theta = -m*alpha required), 0 otherwise.
int validate_ep_params(double alpha, double theta) {
    if (!(alpha < 1.0))
        throw ParamError("two-parameter model requires alpha < 1");
    if (alpha >= 0.0) {
        if (!(theta > -alpha))
            throw ParamError("two-parameter model with 0 <= alpha < 1 "
                             "requires theta > -alpha");
        return 0;
    }
    const double md = theta / (-alpha);
    const int m = static_cast<int>(std::llround(md));
    if (m < 1 || std::abs(md - m) > 1e-9 * std::max(1.0, std::abs(md)))
        throw ParamError("two-parameter model with alpha < 0 requires "
                         "theta = -m*alpha for a positive integer m");
    return m;
}

// p_alpha(j) without range validation; the recurrence
// p(j+1) = p(j) (j - alpha)/(j + 1) also generates the signed values used
// for alpha < 0.
double sibuya_partial_sum(double alpha, int r) {
    double sum = 0.0, comp = 0.0;
    double p = alpha;
    for (int j = 1; j <= r - 1; ++j) {
        const double y = p - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        p *= (j - alpha) / (j + 1);
    }
    return sum;
}

// I^(b)_{x,x}(nu; nu); 1 for b = 0, 0 when the domain is empty.
double idir_xx(double x, double nu, int b, double tol) {
    if (b == 0) return 1.0;
    if (b * x >= 1.0 - x) return 0.0;
    DirichletIntegralSpec s;
    s.b = b;
    s.p = x;
    s.q = x;
    s.nu = nu;
    s.rho = nu;
    s.tol = tol;
    return incomplete_dirichlet(s);
}

// I^(b)_{x,0}(nu; rho); 1 for b = 0, 0 when the domain is empty.
double idir_x0(double x, double nu, double rho, int b, double tol) {
    if (b == 0) return 1.0;
    if (b * x >= 1.0) return 0.0;
    DirichletIntegralSpec s;
    s.b = b;
    s.p = x;
    s.q = 0.0;
    s.nu = nu;
    s.rho = rho;
    s.tol = tol;
    return incomplete_dirichlet(s);
}

double term_tol(double tol, int k) {
    return tol * 0.5 / static_cast<double>(1 << std::min(k, 30));
}

} // namespace

double AsymptoticForm::evaluate(double n) const {
    if (!(n > 0.0))
        throw ParamError("AsymptoticForm::evaluate: n must be > 0");
    double v = coefficient * std::pow(n, n_power);
    if (log_n_power != 0.0) v *= std::pow(std::log(n), log_n_power);
    return v;
}

int ParitySign::at(long long n, long long k) const {
    int s = base;
    if (flip_n && (n & 1)) s = -s;
    if (flip_k && (k & 1)) s = -s;
    return s;
}

double sibuya_pmf(double alpha, int j) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParamError("sibuya_pmf: alpha must lie in (0, 1)");
    if (j < 1) throw ParamError("sibuya_pmf: j must be >= 1");
    double p = alpha;
    for (int i = 1; i < j; ++i) p *= (i - alpha) / (i + 1);
    return p;
}

SmallestTailAsymp smallest_tail_asymp_ep(double alpha, double theta, int r,
                                         bool large_r) {
    const int m = validate_ep_params(alpha, theta);
    if (r < 2) throw ParamError("smallest_tail_asymp_ep: r must be >= 2");
    SmallestTailAsymp out;
    if (alpha == 0.0) {
        if (large_r) {
            out.leading.coefficient =
                std::exp(-kEulerGamma * theta) * std::pow(r, -theta);
        } else {
            out.leading.coefficient =
                std::exp(-theta * harmonic_number(r - 1));
        }
        return out;
    }
    if (alpha > 0.0) {
        const double c =
            std::exp(std::lgamma(1.0 + theta) - std::lgamma(1.0 - alpha));
        out.leading.n_power = -theta - alpha;
        if (large_r) {
            out.leading.coefficient = c;
        } else {
            const double s = sibuya_partial_sum(alpha, r);
            out.leading.coefficient = c * std::pow(s, -1.0 - theta / alpha);
        }
        return out;
    }
    // alpha < 0: the tail tends to 1; the correction is the signed
    // O(n^alpha) second-order term (absent for m = 1).
    out.leading.coefficient = 1.0;
    if (m >= 2) {
        AsymptoticForm corr;
        corr.n_power = alpha;
        if (large_r) {
            corr.coefficient = std::pow(r, -alpha);
            corr.order_only = true;
        } else {
            const double s = sibuya_partial_sum(alpha, r); // negative
            corr.coefficient =
                m *
                std::exp(std::lgamma(-m * alpha) -
                         std::lgamma((1.0 - m) * alpha)) *
                s;
        }
        out.correction = corr;
    }
    return out;
}

double buchstab_omega(double theta, double x, double tol) {
    if (!(theta > 0.0))
        throw ParamError("buchstab_omega: theta must be > 0");
    if (!(x > 0.0 && x <= 1.0))
        throw ParamError("buchstab_omega: x must lie in (0, 1]");
    double sum = 0.0;
    double coef = 1.0; // theta^k / k!
    for (int k = 1;; ++k) {
        if (k >= 2 && k * x >= 1.0) break;
        coef *= theta / k;
        sum += coef * idir_xx(x, 0.0, k - 1, term_tol(tol, k));
    }
    return std::pow(x, theta) * sum;
}

AsymptoticForm smallest_large_dev(double alpha, double theta, double x,
                                  double tol) {
    const int m = validate_ep_params(alpha, theta);
    if (!(x > 0.0 && x < 1.0))
        throw ParamError("smallest_large_dev: x must lie in (0, 1)");
    AsymptoticForm f;
    if (alpha == 0.0) {
        f.coefficient = std::exp(std::lgamma(theta)) * std::pow(x, -theta) *
                        buchstab_omega(theta, x, tol);
        f.n_power = -theta;
        return f;
    }
    if (alpha > 0.0) {
        f.coefficient =
            std::exp(std::lgamma(1.0 + theta) - std::lgamma(1.0 - alpha));
        f.n_power = -theta - alpha;
        return f;
    }
    if (m == 1) {
        f.coefficient = 1.0;
        return f;
    }
    if (m * x < 1.0) {
        f.coefficient = idir_xx(x, -alpha, m - 1, tol);
        return f;
    }
    const int fl = static_cast<int>(std::floor(1.0 / x + 1e-12));
    if (fl >= m) return f; // x = 1/m exactly: degenerate corner, limit 0
    f.coefficient = 1.0;
    f.n_power = (m - fl) * alpha;
    f.order_only = true;
    return f;
}

AsymptoticForm consistent_smallest_cond(double alpha, double x, int k,
                                        double tol) {
    if (!(alpha < 1.0))
        throw ParamError("consistent_smallest_cond: alpha must be < 1");
    if (k < 1) throw ParamError("consistent_smallest_cond: k must be >= 1");
    if (!(x > 0.0)) throw ParamError("consistent_smallest_cond: x must be > 0");
    AsymptoticForm f;
    if (x > 1.0) return f;
    if (k >= 2 && k * x >= 1.0) return f;
    if (alpha > 0.0) {
        if (is_nonpositive_integer(-k * alpha))
            throw PoleError("consistent_smallest_cond: k*alpha at a positive "
                            "integer puts the constant at a gamma pole");
        const SignedLog g1 = log_gamma_signed(-alpha);
        const SignedLog g2 = log_gamma_signed(-k * alpha);
        const double ratio =
            g1.sign * g2.sign * std::exp(g1.log_abs - g2.log_abs);
        const double sgn = (k % 2 == 1) ? 1.0 : -1.0; // (-1)^(k-1)
        f.coefficient =
            ratio * sgn / k * idir_xx(x, -alpha, k - 1, tol);
        f.n_power = -(k - 1) * alpha;
        return f;
    }
    if (alpha == 0.0) {
        f.coefficient = idir_xx(x, 0.0, k - 1, tol) / k;
        f.log_n_power = 1.0 - k;
        return f;
    }
    f.coefficient = idir_xx(x, -alpha, k - 1, tol);
    return f;
}

double consistent_smallest_marginal(double alpha,
                                    const std::function<double(int)>& f_k,
                                    const std::function<double(int)>& eta2,
                                    double x, double n, double tol) {
    if (!(alpha < 1.0))
        throw ParamError("consistent_smallest_marginal: alpha must be < 1");
    if (!(x > 0.0))
        throw ParamError("consistent_smallest_marginal: x must be > 0");
    if (!(n > 1.0))
        throw ParamError("consistent_smallest_marginal: n must be > 1");
    if (x > 1.0) return 0.0;
    double total = 0.0;
    for (int k = 1;; ++k) {
        if (k >= 2 && k * x >= 1.0) break;
        const double tk = term_tol(tol, k);
        if (alpha == 0.0) {
            total += f_k(k) * std::pow(n, -eta2(k)) *
                     std::exp(-log_factorial(k)) * idir_xx(x, 0.0, k - 1, tk);
            continue;
        }
        if (alpha > 0.0 && is_nonpositive_integer(-k * alpha))
            throw PoleError("consistent_smallest_marginal: k*alpha at a "
                            "positive integer puts a term at a gamma pole");
        const SignedLog g = log_gamma_signed(-k * alpha);
        double denom_sign = g.sign;
        if (alpha > 0.0 && (k & 1)) denom_sign = -denom_sign; // (-alpha)^k
        const double denom_log = g.log_abs +
                                 k * std::log(std::abs(alpha)) +
                                 log_factorial(k);
        total += f_k(k) * denom_sign * std::exp(-denom_log) *
                 std::pow(n, -eta2(k) - k * alpha) *
                 idir_xx(x, -alpha, k - 1, tk);
    }
    return total;
}

double dickman_rho(double alpha, double theta, double x, double tol) {
    const int m = validate_ep_params(alpha, theta);
    if (!(x > 0.0)) throw ParamError("dickman_rho: x must be > 0");
    if (x >= 1.0) return 1.0;
    if (alpha == 0.0) {
        double sum = 1.0, coef = 1.0;
        for (int k = 1; k * x < 1.0; ++k) {
            coef *= -theta / k;
            sum += coef * idir_x0(x, 0.0, theta, k, term_tol(tol, k));
        }
        return sum;
    }
    if (alpha > 0.0) {
        if (theta == 0.0) {
            // The theta = 0 display pairs a vanishing coefficient with a
            // gamma pole; evaluate as the limit theta -> 0+ (Richardson,
            // ratio 10).
            const double a1 = dickman_rho(alpha, 1e-2, x, tol);
            const double a2 = dickman_rho(alpha, 1e-3, x, tol);
            const double a3 = dickman_rho(alpha, 1e-4, x, tol);
            const double b1 = (10.0 * a2 - a1) / 9.0;
            const double b2 = (10.0 * a3 - a2) / 9.0;
            return (100.0 * b2 - b1) / 99.0;
        }
        double sum = 1.0, coef = 1.0; // (theta)_{k;alpha} / (alpha^k k!)
        for (int k = 1; k * x < 1.0; ++k) {
            coef *= (theta + (k - 1) * alpha) / (alpha * k);
            sum += coef *
                   idir_x0(x, -alpha, k * alpha + theta, k, term_tol(tol, k));
        }
        return sum;
    }
    // alpha < 0, theta = -m*alpha: support requires ceil(1/x) <= m.
    if (static_cast<int>(std::ceil(1.0 / x - 1e-12)) > m) return 0.0;
    double sum = 0.0;
    for (int k = 0; k <= m && k * x < 1.0; ++k) {
        const double b = (k == 0) ? 1.0 : std::exp(log_binomial(m, k));
        const double sgn = (k & 1) ? -1.0 : 1.0;
        sum += sgn * b *
               idir_x0(x, -alpha, (k - m) * alpha, k, term_tol(tol, k + 1));
    }
    return sum;
}

double rho_tilde(double alpha, double x, int k, double tol) {
    if (!(alpha < 0.0)) throw ParamError("rho_tilde: alpha must be < 0");
    if (k < 1) throw ParamError("rho_tilde: k must be >= 1");
    if (!(x > 0.0)) throw ParamError("rho_tilde: x must be > 0");
    if (x < 1.0 && k * x < 1.0) return 0.0; // x^-1 > k: no support
    double sum = 0.0;
    for (int j = 0; j <= k && j * x < 1.0; ++j) {
        const double b = (j == 0) ? 1.0 : std::exp(log_binomial(k, j));
        const double sgn = (j & 1) ? -1.0 : 1.0;
        sum += sgn * b *
               idir_x0(x, -alpha, (j - k) * alpha, j, term_tol(tol, j + 1));
    }
    return sum;
}

namespace {

// Evaluates f_r and f_r' together with Kahan compensation; overflow in
// xi^j (possible while bracketing at large xi) collapses to -infinity,
// which preserves the sign information the root search needs.
void f_r_both(double alpha, int r, double xi, double* f, double* fp) {
    double s = 1.0, sc = 0.0;
    double d = 0.0, dc = 0.0;
    double p = alpha;   // p_alpha(j)
    double xpow = 1.0;  // xi^(j-1)
    for (int j = 1; j <= r; ++j) {
        const double tf = -p * xpow * xi;
        const double td = -p * j * xpow;
        double y = tf - sc;
        double t = s + y;
        sc = (t - s) - y;
        s = t;
        y = td - dc;
        t = d + y;
        dc = (t - d) - y;
        d = t;
        p *= (j - alpha) / (j + 1);
        xpow *= xi;
        if (xpow > 1e290) {
            s = -std::numeric_limits<double>::infinity();
            d = -std::numeric_limits<double>::infinity();
            break;
        }
    }
    *f = s;
    *fp = d;
}

} // namespace

double f_r_eval(double alpha, int r, double xi) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParamError("f_r_eval: alpha must lie in (0, 1)");
    if (r < 1) throw ParamError("f_r_eval: r must be >= 1");
    double f, fp;
    f_r_both(alpha, r, xi, &f, &fp);
    return f;
}

double f_r_derivative(double alpha, int r, double xi) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParamError("f_r_derivative: alpha must lie in (0, 1)");
    if (r < 1) throw ParamError("f_r_derivative: r must be >= 1");
    double f, fp;
    f_r_both(alpha, r, xi, &f, &fp);
    return fp;
}

double rho_r_root(double alpha, int r) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParamError("rho_r_root: alpha must lie in (0, 1)");
    if (r < 1) throw ParamError("rho_r_root: r must be >= 1");
    // f_r(1) > 0 and f_r(2/alpha) <= 1 - p_alpha(1)*(2/alpha) = -1 < 0
    // bracket the unique positive root.  Away from the root f_r is
    // exponentially steep in xi (terms up to xi^r), where Newton only
    // creeps; bisect until |f| < 1 and let Newton finish from there.
    double lo = 1.0, hi = 2.0 / alpha;
    double xi = 0.5 * (lo + hi);
    double f = 0.0, fp = 0.0;
    for (int it = 0; it < 200; ++it) {
        f_r_both(alpha, r, xi, &f, &fp);
        if (std::abs(f) <= 1e-13) return xi;
        if (f > 0.0)
            lo = xi;
        else
            hi = xi;
        double nxt = 0.5 * (lo + hi);
        if (std::abs(f) < 1.0) {
            const double newton = xi - f / fp;
            if (newton > lo && newton < hi) nxt = newton;
        }
        if (nxt == xi) break;
        xi = nxt;
    }
    if (std::abs(f) > 1e-12)
        throw ConvergenceError("rho_r_root: root refinement stalled above "
                               "the 1e-12 residual target");
    return xi;
}

double largest_small_dev(double alpha, double theta, int n, int r,
                         DevForm form) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParamError("largest_small_dev: alpha must lie in (0, 1)");
    if (!(theta > -alpha))
        throw ParamError("largest_small_dev: theta must exceed -alpha");
    if (n < 1) throw ParamError("largest_small_dev: n must be >= 1");
    if (r < 1) throw ParamError("largest_small_dev: r must be >= 1");
    // Gamma(theta)/Gamma(theta/alpha) rewritten pole-free as
    // Gamma(1+theta) / (alpha Gamma(1+theta/alpha)); both arguments are
    // positive for theta > -alpha.
    const double log_g = std::lgamma(1.0 + theta) -
                         std::lgamma(1.0 + theta / alpha) - std::log(alpha);
    double log_val;
    if (form == DevForm::ExactRoot) {
        const double rho = rho_r_root(alpha, r);
        double f, fp;
        f_r_both(alpha, r, rho, &f, &fp);
        const double a = -rho * fp; // > 0: f_r is strictly decreasing
        log_val = log_g - (theta / alpha) * std::log(a) -
                  (n + 1.0) * std::log(rho) +
                  (theta / alpha - theta) * std::log(static_cast<double>(n));
    } else {
        const double a = alpha / std::exp(std::lgamma(2.0 - alpha));
        const double ratio = static_cast<double>(n) / r;
        log_val = log_g - (theta / alpha) * std::log(a) -
                  (1.0 - alpha) / alpha * ratio +
                  (theta / alpha - theta) * std::log(ratio);
    }
    return std::exp(log_val);
}

double moment_limit_smallest(double alpha, int m, int i, double tol) {
    if (!(alpha < 0.0))
        throw ParamError("moment_limit_smallest: alpha must be < 0");
    if (m < 1) throw ParamError("moment_limit_smallest: m must be >= 1");
    if (i < 1) throw ParamError("moment_limit_smallest: i must be >= 1");
    if (m == 1) return 1.0;
    const double inner = tol * 0.5;
    auto f = [&](double x) {
        return std::pow(x, i - 1.0) * idir_xx(x, -alpha, m - 1, inner);
    };
    return i * integrate_adaptive(f, 0.0, 1.0 / m, tol * 0.5);
}

double moment_limit_largest(double alpha, double theta, int i, double tol) {
    const int m = validate_ep_params(alpha, theta);
    if (i < 1) throw ParamError("moment_limit_largest: i must be >= 1");
    const int j_cap = (alpha < 0.0) ? m - 1 : 6;
    if (j_cap == 0) return 1.0; // alpha < 0, m = 1: the largest is everything
    const double piece_tol = tol * 0.5 / j_cap;
    const double inner_tol = piece_tol / 10.0;
    double integral = 0.0;
    bool tail_ok = (alpha < 0.0); // exact support cutoff at 1/m
    for (int j = 1; j <= j_cap; ++j) {
        const double lo = 1.0 / (j + 1.0);
        const double hi = 1.0 / j;
        auto f = [&](double x) {
            return i * std::pow(x, i - 1.0) *
                   dickman_rho(alpha, theta, x, inner_tol);
        };
        integral += integrate_adaptive(f, lo, hi, piece_tol);
        if (alpha >= 0.0) {
            // Remaining mass below x = 1/(j+1): rho is nonincreasing as x
            // decreases, so int_0^xj i x^(i-1) rho dx <= rho(xj) xj^i.
            const double xj = 1.0 / (j + 1.0);
            const double bound =
                dickman_rho(alpha, theta, xj, tol * 0.1) * std::pow(xj, i);
            if (bound <= tol * 0.5) {
                tail_ok = true;
                break;
            }
        }
    }
    if (!tail_ok)
        throw ToleranceError("moment_limit_largest: truncation tail bound "
                             "exceeds the requested tolerance");
    return 1.0 - integral;
}

double gnedin_smallest_tail_asymp(double gamma, double zeta, double x) {
    if (!(x > 0.0))
        throw ParamError("gnedin_smallest_tail_asymp: x must be > 0");
    const GnedinBlockPmf pmf = gnedin_block_pmf(gamma, zeta);
    const int f = static_cast<int>(std::floor(1.0 / x + 1e-12));
    double sum = 0.0;
    for (int m = 1; m <= f; ++m) {
        const double base = std::max(0.0, 1.0 - m * x);
        const double factor = (m == 1) ? 1.0 : std::pow(base, m - 1);
        sum += pmf.prob(m) * factor;
    }
    return sum;
}

double gnedin_smallest_moment_asymp(double gamma, double zeta, int j,
                                    double tol) {
    if (j < 1)
        throw ParamError("gnedin_smallest_moment_asymp: j must be >= 1");
    if (!(tol > 0.0))
        throw ParamError("gnedin_smallest_moment_asymp: tol must be > 0");
    const GnedinBlockPmf pmf = gnedin_block_pmf(gamma, zeta);
    auto factor = [&](int m) {
        return std::exp(-(j * std::log(static_cast<double>(m)) +
                          log_binomial(m + j - 1, j)));
    };
    double sum = 0.0;
    for (int m = 1; m <= 1000000; ++m) {
        sum += pmf.prob(m) * factor(m);
        if (m >= 2 && pmf.tail_bound(m) * factor(m + 1) <= tol) return sum;
    }
    throw NonConvergenceError("gnedin_smallest_moment_asymp: series did not "
                              "converge within the term budget");
}

namespace {

// P(max uniform spacing > x) for m spacings, by inclusion-exclusion:
// sum_k (-1)^(k+1) binom(m,k) (1-kx)_+^(m-1).  Exact rational evaluation
// for small m (the alternating sum cancels); dominant-term float sum above.
double spacing_max_exceeds(int m, double x) {
    if (m == 1) return (x < 1.0) ? 1.0 : 0.0;
    if (m <= 60) {
        const Rational rx(x);
        Rational sum = 0;
        BigInt binom = 1;
        for (int k = 1; k <= m && k * x < 1.0; ++k) {
            binom = binom * (m - k + 1) / k;
            Rational base = 1 - k * rx;
            Rational pw = 1;
            for (int t = 0; t < m - 1; ++t) pw *= base;
            const Rational term = Rational(binom) * pw;
            if (k & 1)
                sum += term;
            else
                sum -= term;
        }
        return rational_to_double(sum);
    }
    double sum = 0.0;
    for (int k = 1; k <= m && k * x < 1.0; ++k) {
        const double lt = log_binomial(m, k) +
                          (m - 1.0) * std::log1p(-k * x);
        sum += ((k & 1) ? 1.0 : -1.0) * std::exp(lt);
    }
    return std::min(1.0, std::max(0.0, sum));
}

} // namespace

double gnedin_largest_cdf_asymp(double gamma, double zeta, double x,
                                double tol) {
    if (!(x > 0.0))
        throw ParamError("gnedin_largest_cdf_asymp: x must be > 0");
    if (!(tol > 0.0))
        throw ParamError("gnedin_largest_cdf_asymp: tol must be > 0");
    if (x >= 1.0) return 1.0;
    const GnedinBlockPmf pmf = gnedin_block_pmf(gamma, zeta);
    const int c = static_cast<int>(std::ceil(1.0 / x - 1e-12));
    // Complement form: with fewer than ceil(1/x) blocks the largest
    // fraction always exceeds x; above that the exceedance probability
    // decays geometrically.
    double below = 0.0;
    for (int m = 1; m < c; ++m) below += pmf.prob(m);
    const double z = 1.0 - x;
    double over = 0.0;
    bool converged = false;
    for (int m = std::max(1, c); m <= 1000000; ++m) {
        over += pmf.prob(m) * spacing_max_exceeds(m, x);
        // sum_{m' > m} m' z^(m'-1) = z^m (m x + 1) / x^2 bounds the rest.
        const double rest =
            std::exp(m * std::log(z)) * (m * x + 1.0) / (x * x);
        if (rest <= 0.5 * tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NonConvergenceError("gnedin_largest_cdf_asymp: exceedance sum "
                                  "did not converge within the term budget");
    return 1.0 - below - over;
}

double gnedin_largest_moment_asymp(double gamma, double zeta, int j,
                                   double tol) {
    if (j < 1)
        throw ParamError("gnedin_largest_moment_asymp: j must be >= 1");
    if (!(tol > 0.0))
        throw ParamError("gnedin_largest_moment_asymp: tol must be > 0");
    const GnedinBlockPmf pmf = gnedin_block_pmf(gamma, zeta);
    // E[max^j | m blocks] = j! h_j(1, 1/2, ..., 1/m) / (m)_j with h_j the
    // complete homogeneous symmetric polynomial, built by the all-positive
    // recurrence h_j(..1/m) = h_j(..1/(m-1)) + h_{j-1}(..1/m)/m.
    std::vector<double> h(static_cast<std::size_t>(j) + 1, 0.0);
    h[0] = 1.0;
    const double jfact = std::exp(log_factorial(j));
    double sum = 0.0;
    for (int m = 1; m <= 1000000; ++m) {
        for (int q = 1; q <= j; ++q)
            h[static_cast<std::size_t>(q)] +=
                h[static_cast<std::size_t>(q - 1)] / m;
        double rising = 1.0;
        for (int t = 0; t < j; ++t) rising *= (m + t);
        const double e_max = jfact * h[static_cast<std::size_t>(j)] / rising;
        sum += pmf.prob(m) * e_max;
        // E[max^j | m'] <= E[max | m'] = H_{m'}/m' <= (log m' + 1)/m',
        // nonincreasing in m'.
        const double envelope = (std::log(m + 1.0) + 1.0) / (m + 1.0);
        if (m >= 2 && pmf.tail_bound(m) * envelope <= tol) return sum;
    }
    throw NonConvergenceError("gnedin_largest_moment_asymp: series did not "
                              "converge within the term budget");
}

SpecialNumberAsymp gfc_fixed_k_asymp(double alpha, int k) {
    if (alpha == 0.0)
        throw ParamError("gfc_fixed_k_asymp: alpha must be non-zero");
    if (k < 1) throw ParamError("gfc_fixed_k_asymp: k must be >= 1");
    SpecialNumberAsymp out;
    if (alpha > 0.0) {
        if (is_nonpositive_integer(-alpha))
            throw PoleError("gfc_fixed_k_asymp: integer alpha puts the "
                            "constant at a gamma pole");
        const SignedLog g = log_gamma_signed(-alpha);
        out.magnitude.coefficient =
            std::exp(-g.log_abs - log_factorial(k - 1));
        out.magnitude.n_power = -1.0 - alpha;
        out.sign.base = -g.sign; // (-1)^(n+k-1) sign(Gamma(-alpha))
        out.sign.flip_n = true;
        out.sign.flip_k = true;
        return out;
    }
    out.magnitude.coefficient =
        std::exp(-std::lgamma(-k * alpha) - log_factorial(k));
    out.magnitude.n_power = -1.0 - k * alpha;
    out.sign.base = 1; // (-1)^n
    out.sign.flip_n = true;
    return out;
}

SpecialNumberAsymp gfc_assoc_asymp(double alpha, int k, double x, double tol) {
    if (alpha == 0.0)
        throw ParamError("gfc_assoc_asymp: alpha must be non-zero");
    if (k < 1) throw ParamError("gfc_assoc_asymp: k must be >= 1");
    if (!(x > 0.0 && k * x < 1.0))
        throw ParamError("gfc_assoc_asymp: requires 0 < x and k < 1/x (use "
                         "the boundary form at k = n/r)");
    if (alpha > 0.0 && is_nonpositive_integer(-k * alpha))
        throw PoleError("gfc_assoc_asymp: k*alpha at a positive integer puts "
                        "the constant at a gamma pole");
    const double idir = idir_xx(x, -alpha, k - 1, tol);
    const SignedLog g = log_gamma_signed(-k * alpha);
    const double c =
        idir * g.sign * std::exp(-g.log_abs - log_factorial(k));
    SpecialNumberAsymp out;
    out.magnitude.coefficient = std::abs(c);
    out.magnitude.n_power = -1.0 - k * alpha;
    out.sign.base = (c >= 0.0) ? 1 : -1; // times (-1)^n
    out.sign.flip_n = true;
    return out;
}

SpecialNumberAsymp gfc_assoc_boundary_asymp(double alpha, int k) {
    if (alpha == 0.0)
        throw ParamError("gfc_assoc_boundary_asymp: alpha must be non-zero");
    if (k < 2)
        throw ParamError("gfc_assoc_boundary_asymp: k must be >= 2");
    SpecialNumberAsymp out;
    out.magnitude.coefficient = 1.0;
    out.magnitude.n_power = -k * (1.0 + alpha);
    out.magnitude.order_only = true;
    return out;
}

SpecialNumberAsymp stirling1_assoc_asymp(int k, double x, double tol) {
    if (k < 1) throw ParamError("stirling1_assoc_asymp: k must be >= 1");
    if (!(x > 0.0 && k * x < 1.0))
        throw ParamError("stirling1_assoc_asymp: requires 0 < x and k < 1/x "
                         "(use the boundary form at k = n/r)");
    SpecialNumberAsymp out;
    out.magnitude.coefficient =
        idir_xx(x, 0.0, k - 1, tol) * std::exp(-log_factorial(k));
    out.magnitude.n_power = -1.0;
    return out;
}

SpecialNumberAsymp stirling1_assoc_boundary_asymp(int k) {
    if (k < 2)
        throw ParamError("stirling1_assoc_boundary_asymp: k must be >= 2");
    SpecialNumberAsymp out;
    out.magnitude.coefficient = 1.0;
    out.magnitude.n_power = -static_cast<double>(k);
    out.magnitude.order_only = true;
    return out;
}

double stirling1_hwang_ratio(int n, int k) {
    if (n < 2) throw ParamError("stirling1_hwang_ratio: n must be >= 2");
    if (k < 1) throw ParamError("stirling1_hwang_ratio: k must be >= 1");
    const double log_n = std::log(static_cast<double>(n));
    return std::exp((k - 1) * std::log(log_n) - log_factorial(k - 1) -
                    log_n - std::lgamma(1.0 + (k - 1) / log_n));
}

} // namespace gibbspart

#pragma once

#include "gibbspart/dirichlet.hpp"
#include "gibbspart/errors.hpp"

#include <functional>
#include <optional>

namespace gibbspart {

// One leading-order term c * n^a * (log n)^b.  When `order_only` is set the
// magnitude scale is known but the constant is not asserted; `coefficient`
// then carries a positive envelope scale only.
struct AsymptoticForm {
    double coefficient = 0.0;
    double n_power = 0.0;
    double log_n_power = 0.0;
    bool order_only = false;

    double evaluate(double n) const;
};

// Sibuya block-frequency mass function p_alpha(j) = binom(alpha, j) *
// (-1)^(j+1) for 0 < alpha < 1, j >= 1.
double sibuya_pmf(double alpha, int j);

// Leading behaviour of P(smallest block >= r) for the two-parameter model
// with fixed r >= 2 as n grows.  For alpha < 0 (theta = -m*alpha) the
// probability tends to 1 and `correction` carries the signed O(n^alpha)
// second term (absent when m = 1, where the tail is exactly 1 in the limit).
// With `large_r` set, the constants are replaced by their r -> infinity
// simplifications (for alpha < 0 the correction becomes order-only in n/r).
struct SmallestTailAsymp {
    AsymptoticForm leading;
    std::optional<AsymptoticForm> correction;
};
SmallestTailAsymp smallest_tail_asymp_ep(double alpha, double theta, int r,
                                         bool large_r = false);

// Buchstab-type function omega_theta(x) = x^theta * sum_{k>=1, kx<=1}
// theta^k/k! * I^(k-1)_{x,x}(0;0) for theta > 0 and 0 < x <= 1.
double buchstab_omega(double theta, double x, double tol = 1e-8);

// Large-deviation rate of P(smallest block >= xn), 0 < x < 1:
//   alpha = 0:      Gamma(theta) x^-theta omega_theta(x) * n^-theta
//   0 < alpha < 1:  Gamma(1+theta)/Gamma(1-alpha) * n^(-theta-alpha)
//   alpha < 0:      the constant I^(m-1)_{x,x}(-alpha;-alpha) when
//                   x^-1 >= m, an order-only n^((m-floor(1/x))*alpha)
//                   envelope when x^-1 < m.
AsymptoticForm smallest_large_dev(double alpha, double theta, double x,
                                  double tol = 1e-8);

// Limit of P(smallest block >= xn | K_n = k) for a consistent Gibbs model in
// the alpha-regime, as a form in n:
//   0 < alpha < 1: Gamma(-alpha)/Gamma(-k alpha) * (-1)^(k-1)/k
//                  * I^(k-1)_{x,x}(-alpha;-alpha) * n^(-(k-1) alpha)
//   alpha = 0:     I^(k-1)_{x,x}(0;0)/k * (log n)^(1-k)
//   alpha < 0:     I^(k-1)_{x,x}(-alpha;-alpha)
// Zero when x^-1 < k.
AsymptoticForm consistent_smallest_cond(double alpha, double x, int k,
                                        double tol = 1e-8);

// Marginal P(smallest block >= xn) for a consistent Gibbs model whose
// block-count distribution satisfies P(K_n = k) ~ f(k) * n^(-eta2(k)) in the
// alpha-regime (for alpha != 0 the regime exponent contributes the extra
// n^(-k alpha) factor); evaluated at sample size n.
double consistent_smallest_marginal(double alpha,
                                    const std::function<double(int)>& f_k,
                                    const std::function<double(int)>& eta2,
                                    double x, double n, double tol = 1e-8);

// Generalized Dickman function: the limit of P(largest block <= xn) for the
// two-parameter model.  For alpha < 0, theta must equal -m*alpha and the
// value is 0 when ceil(1/x) > m; x >= 1 gives 1.
double dickman_rho(double alpha, double theta, double x, double tol = 1e-8);

// Limit of P(largest block <= xn | K_n = k) for alpha < 0:
//   sum_{0 <= j < 1/x} (-1)^j binom(k,j) I^(j)_{x,0}(-alpha;(j-k) alpha)
// when x^-1 <= k, else 0.
double rho_tilde(double alpha, double x, int k, double tol = 1e-8);

// Truncated binomial series f_r(xi) = sum_{j=0..r} binom(alpha,j)(-xi)^j
// = 1 - sum_{j=1..r} p_alpha(j) xi^j for 0 < alpha < 1, its derivative, and
// its unique positive root rho_r (= 1 + (1-alpha)/(alpha r) + O(r^-2)),
// found to |f_r(rho_r)| <= 1e-12.
double f_r_eval(double alpha, int r, double xi);
double f_r_derivative(double alpha, int r, double xi);
double rho_r_root(double alpha, int r);

// Small-deviation probability P(largest block <= r) for 0 < alpha < 1 in the
// regime r = o(n), evaluated at finite n:
//   ExactRoot: Gamma(theta)/Gamma(theta/alpha) * (-rho_r f_r'(rho_r))^
//              (-theta/alpha) * rho_r^-(n+1) * n^(theta/alpha - theta)
//   Limit:     same with rho_r -> exp-form constants:
//              (alpha/Gamma(2-alpha))^(-theta/alpha)
//              * exp(-(1-alpha)/alpha * n/r) * (n/r)^(theta/alpha - theta)
enum class DevForm { ExactRoot, Limit };
double largest_small_dev(double alpha, double theta, int n, int r,
                         DevForm form);

// Limits of the scaled factorial moments E[[S_n]_i]/n^i (smallest block,
// alpha < 0 with theta = -m*alpha) and E[[L_n]_i]/n^i (largest block):
//   smallest: i * integral_0^(1/m) x^(i-1) I^(m-1)_{x,x}(-alpha;-alpha) dx
//   largest:  1 - i * integral_0^1 x^(i-1) rho_{alpha,theta}(x) dx
// The largest-block integral is evaluated piecewise on [1/(j+1), 1/j]; for
// alpha >= 0 it is truncated at x = 1/7 with a tail bound checked against
// tol (ToleranceError when the bound cannot be met).
double moment_limit_smallest(double alpha, int m, int i, double tol = 1e-8);
double moment_limit_largest(double alpha, double theta, int i,
                            double tol = 1e-8);

// Asymptotic laws of the extreme block fractions under the block-count
// mixture model with weight sequence (1-alpha)_(j-1), alpha = -1, mixed over
// the number of blocks M:
//   smallest tail  P(smallest > x M^-0 n)/...: sum_m P(M=m)(1-mx)^(m-1)
//   smallest moment limit of E[(smallest/n)^j]: sum_m P(M=m)/(m^j binom(m+j-1,j))
//   largest cdf    P(largest <= xn) -> sum_{m >= 1/x} P(M=m) P_m(max <= x)
//   largest moment limit of E[(largest/n)^j]: sum_m P(M=m) j! h_j(1,...,1/m)/(m)_j
double gnedin_smallest_tail_asymp(double gamma, double zeta, double x);
double gnedin_smallest_moment_asymp(double gamma, double zeta, int j,
                                    double tol = 1e-10);
double gnedin_largest_cdf_asymp(double gamma, double zeta, double x,
                                double tol = 1e-8);
double gnedin_largest_moment_asymp(double gamma, double zeta, int j,
                                   double tol = 1e-8);

// Sign of an integer-parity-dependent quantity: base * (-1)^n [if flip_n]
// * (-1)^k [if flip_k].
struct ParitySign {
    int base = 1;
    bool flip_n = false;
    bool flip_k = false;

    int at(long long n, long long k) const;
};

// Leading asymptotics of special-number ratios X(n,k)/n! as n grows with k
// fixed; the magnitude carries a positive coefficient and the sign is
// reported separately as a parity rule.
struct SpecialNumberAsymp {
    AsymptoticForm magnitude;
    ParitySign sign;
};

// Generalized factorial coefficients C(n,k;alpha), fixed k:
//   alpha > 0: n^(-1-alpha) / (|Gamma(-alpha)| (k-1)!)
//   alpha < 0: n^(-1-k alpha) / (Gamma(-k alpha) k!)
SpecialNumberAsymp gfc_fixed_k_asymp(double alpha, int k);

// Associated (minimum block size r+1 ... i.e. r-associated) variants in the
// regime r ~ x n with k fixed, k < 1/x:
//   C_r(n,k;alpha)/n! ~ +-I^(k-1)_{x,x}(-alpha;-alpha)/(Gamma(-k alpha) k!)
//                        * n^(-1-k alpha)
//   |s_r(n,k)|/n!     ~ I^(k-1)_{x,x}(0;0)/k! * n^-1
// Boundary forms give the order-only envelope at k = n/r:
//   C_r: O(n^(-k(1+alpha))),  s_r: O(n^-k).
SpecialNumberAsymp gfc_assoc_asymp(double alpha, int k, double x,
                                   double tol = 1e-8);
SpecialNumberAsymp gfc_assoc_boundary_asymp(double alpha, int k);
SpecialNumberAsymp stirling1_assoc_asymp(int k, double x, double tol = 1e-8);
SpecialNumberAsymp stirling1_assoc_boundary_asymp(int k);

// Uniform unsigned Stirling-number ratio |s(n,k)|/n! ~ (log n)^(k-1) /
// ((k-1)! n Gamma(1 + (k-1)/log n)), valid for 1 <= k = O(log n), n >= 2.
double stirling1_hwang_ratio(int n, int k);

} // namespace gibbspart

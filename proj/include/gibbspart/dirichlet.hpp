#pragma once

#include "gibbspart/errors.hpp"

#include <functional>

namespace gibbspart {

// Globally adaptive Gauss-Kronrod (7-15) integration of f over (a, b) to
// the requested absolute tolerance.  Endpoints are never evaluated, so
// integrable endpoint singularities are admissible.  Throws ToleranceError
// when the error estimate cannot be brought under the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol);

// Incomplete Dirichlet integral over the restricted simplex
//   Delta_b(p,q) = { y_j > p, 1 <= j <= b; sum_j y_j < 1 - q },
// with y_{b+1} = 1 - sum_j y_j:
//   I^(b)_{p,q}(nu; rho) = Gamma(rho+b*nu) / (Gamma(rho) Gamma(nu)^b)
//                          * Int y_{b+1}^{rho-1} prod_j y_j^{nu-1} dy.
// Conventions: I^(0) = 1; nu = 0 drops the gamma prefactor entirely and the
// integrand becomes y_{b+1}^{rho-1} prod_j y_j^{-1} (including rho = 0).
// nu and rho may be negative; the restricted domain keeps the integral
// finite.  q = 0 is admitted when the y_{b+1} boundary is integrable
// (rho > 0).  rho = 0 with nu != 0 (a gamma pole against a divergent
// integral) is evaluated as the limit rho -> 0+ by Richardson extrapolation
// over rho in {1e-2, 1e-3, 1e-4}.
struct DirichletIntegralSpec {
    int b = 0;
    double p = 0.0;
    double q = 0.0;
    double nu = 0.0;
    double rho = 0.0;
    double tol = 1e-8; // absolute tolerance on the result
};

// Full evaluator: closed forms where available (b = 0; nu = 1 with q = 0;
// nu = rho = 1; b = 1 with nu = rho = 0), nested adaptive Gauss-Kronrod
// quadrature for b <= 6 with per-level budget tol/3^level, Monte Carlo
// fallback above b = 6 (ToleranceError when its standard error cannot
// reach tol).  Errors: ParamError, EmptyDomainError, PoleError,
// ToleranceError.
double incomplete_dirichlet(const DirichletIntegralSpec& spec);

// Same contract restricted to the quadrature path (no closed-form
// shortcuts, b <= 6); used to cross-check the shortcuts and the Monte
// Carlo oracle.
double incomplete_dirichlet_quadrature(const DirichletIntegralSpec& spec);

} // namespace gibbspart

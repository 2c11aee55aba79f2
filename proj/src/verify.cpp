#include "gibbspart/verify.hpp"

#include "gibbspart/bell.hpp"
#include "gibbspart/dirichlet.hpp"
#include "gibbspart/dist.hpp"
#include "gibbspart/errors.hpp"
#include "gibbspart/oracle.hpp"
#include "gibbspart/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gibbspart {

namespace {

std::string model_tag(const GibbsModel& model) { return model.describe(); }

CheckResult exact_check(std::string name, const Rational& got,
                        const Rational& want) {
    CheckResult res;
    res.name = std::move(name);
    res.pass = (got == want);
    res.observed = std::abs(rational_to_double(got - want));
    res.threshold = 0.0;
    if (!res.pass) {
        std::ostringstream os;
        os << "got " << rational_to_double(got) << ", want "
           << rational_to_double(want);
        res.detail = os.str();
    }
    return res;
}

CheckResult close_check(std::string name, double got, double want,
                        double rel_tol) {
    CheckResult res;
    res.name = std::move(name);
    const double scale = std::max({std::abs(got), std::abs(want), 1.0});
    res.observed = std::abs(got - want) / scale;
    res.threshold = rel_tol;
    res.pass = res.observed <= rel_tol;
    if (!res.pass) {
        std::ostringstream os;
        os << "got " << got << ", want " << want;
        res.detail = os.str();
    }
    return res;
}

std::vector<GibbsModel> reference_models() {
    std::vector<GibbsModel> models;
    models.push_back(GibbsModel::ewens_pitman(0.5, 1.0));
    models.push_back(GibbsModel::ewens_pitman(0.0, 1.0));
    models.push_back(GibbsModel::ewens_pitman(-0.5, 1.0));
    models.push_back(GibbsModel::gnedin(1.0, 1.0));
    return models;
}

} // namespace

std::vector<CheckResult> oracle_equivalence_suite(int n_max) {
    if (n_max < 2 || n_max > 12) {
        throw RangeError("oracle_equivalence_suite: n_max must be in [2, 12]");
    }
    std::vector<CheckResult> out;
    for (const GibbsModel& model : reference_models()) {
        const std::string tag = model_tag(model);
        // Exact-rational equivalence of the table-driven operations.
        for (int n = 2; n <= n_max; ++n) {
            const auto pmf = blocks_pmf_extval(model, n, Mode::Exact);
            for (int k = 1; k <= n; ++k) {
                OracleQuery q;
                q.event = OracleEvent::Blocks;
                q.k = k;
                out.push_back(exact_check(
                    tag + " blocks n=" + std::to_string(n) +
                        " k=" + std::to_string(k),
                    pmf[static_cast<std::size_t>(k - 1)].exact(),
                    exact_stat_enum(model, n, q)));
            }
            for (int r = 1; r <= n; ++r) {
                for (int i : {1, 2}) {
                    OracleQuery q;
                    q.event = OracleEvent::IthLargestAtMost;
                    q.i = i;
                    q.r = r;
                    out.push_back(exact_check(
                        tag + " cdf n=" + std::to_string(n) +
                            " i=" + std::to_string(i) +
                            " r=" + std::to_string(r),
                        extreme_cdf_extval(model, n, i, r, Mode::Exact)
                            .exact(),
                        exact_stat_enum(model, n, q)));
                }
                OracleQuery q;
                q.event = OracleEvent::SmallestAtLeast;
                q.r = r;
                out.push_back(exact_check(
                    tag + " smallest n=" + std::to_string(n) +
                        " r=" + std::to_string(r),
                    smallest_tail_extval(model, n, r, Mode::Exact).exact(),
                    exact_stat_enum(model, n, q)));
            }
        }
        // Double-valued operations at n_max: conditional laws and moments.
        const int n = n_max;
        const auto pmf_n = blocks_pmf_extval(model, n, Mode::Exact);
        for (int k = 1; k <= n; ++k) {
            if (pmf_n[static_cast<std::size_t>(k - 1)].exact() == 0) {
                continue; // conditioning event has probability zero
            }
            for (int r = 1; r <= n; ++r) {
                OracleQuery ql;
                ql.event = OracleEvent::LargestAtMost;
                ql.r = r;
                ql.cond_k = k;
                out.push_back(close_check(
                    tag + " cond-largest n=" + std::to_string(n) +
                        " k=" + std::to_string(k) + " r=" + std::to_string(r),
                    conditional_extreme(model.weights(), n, k, Which::Largest, r,
                                        Mode::Exact),
                    rational_to_double(exact_stat_enum(model, n, ql)), 1e-12));

                OracleQuery qs;
                qs.event = OracleEvent::SmallestAtLeast;
                qs.r = r;
                qs.cond_k = k;
                out.push_back(close_check(
                    tag + " cond-smallest n=" + std::to_string(n) +
                        " k=" + std::to_string(k) + " r=" + std::to_string(r),
                    conditional_extreme(model.weights(), n, k, Which::Smallest, r,
                                        Mode::Exact),
                    rational_to_double(exact_stat_enum(model, n, qs)), 1e-12));

                OracleQuery q2;
                q2.event = OracleEvent::IthLargestAtMost;
                q2.i = 2;
                q2.r = r;
                q2.cond_k = k;
                out.push_back(close_check(
                    tag + " cond-2nd-largest n=" + std::to_string(n) +
                        " k=" + std::to_string(k) + " r=" + std::to_string(r),
                    conditional_ith_largest(model.weights(), n, k, 2, r,
                                            Mode::Exact),
                    rational_to_double(exact_stat_enum(model, n, q2)), 1e-12));
            }
        }
        for (int i : {1, 2}) {
            for (Which which : {Which::Largest, Which::Smallest}) {
                // E[(X)_i] by enumeration: sum over partitions of the falling
                // factorial of the extreme size times its exact probability.
                Rational want = 0;
                for_each_partition(n, [&](const std::vector<int>& parts) {
                    std::vector<int> mult(static_cast<std::size_t>(n) + 1, 0);
                    for (int part : parts) {
                        ++mult[static_cast<std::size_t>(part)];
                    }
                    std::vector<int> m(mult.begin() + 1, mult.end());
                    const Rational p =
                        model.eppf_multiplicities(m, Mode::Exact).exact();
                    const int x = which == Which::Largest ? parts.front()
                                                          : parts.back();
                    Rational ff = 1;
                    for (int t = 0; t < i; ++t) {
                        ff *= (x - t);
                    }
                    want += ff * p;
                });
                out.push_back(close_check(
                    tag + " moment " +
                        (which == Which::Largest ? "largest" : "smallest") +
                        " i=" + std::to_string(i) + " n=" + std::to_string(n),
                    factorial_moment(model, n, which, i, Mode::Exact),
                    rational_to_double(want), 1e-12));
            }
        }
    }
    return out;
}

std::vector<CheckResult> identity_suite(int n_max) {
    if (n_max < 2 || n_max > 16) {
        throw RangeError("identity_suite: n_max must be in [2, 16]");
    }
    std::vector<CheckResult> out;
    struct NamedWeights {
        std::string name;
        WeightFn w;
    };
    const NamedWeights families[] = {
        {"consistent(0.5)", consistent_weights(0.5)},
        {"factorial", factorial_weights()},
        {"falling(-1)", falling_factorial_weights(-1.0)},
    };
    for (const auto& fam : families) {
        for (int r : {2, 3}) {
            int worst_count = 0;
            double worst = 0.0;
            std::string worst_at;
            for (int n = 1; n <= n_max; ++n) {
                for (int k = 1; k <= n; ++k) {
                    IdentityResiduals res =
                        crosscheck_identities(fam.w, n, k, r, Mode::Exact);
                    const std::optional<double>* all[] = {
                        &res.max_size_expansion, &res.min_size_expansion,
                        &res.min_size_shift, &res.max_size_shift};
                    for (const auto* ropt : all) {
                        if (!ropt->has_value()) {
                            continue;
                        }
                        ++worst_count;
                        const double v = std::abs(**ropt);
                        if (v > worst) {
                            worst = v;
                            worst_at = "n=" + std::to_string(n) +
                                       " k=" + std::to_string(k);
                        }
                    }
                }
            }
            CheckResult res;
            res.name = "identities " + fam.name + " r=" + std::to_string(r);
            res.observed = worst;
            res.threshold = 0.0;
            res.pass = (worst == 0.0) && worst_count > 0;
            if (!res.pass) {
                res.detail = worst_count == 0 ? "no identity applied"
                                              : "worst at " + worst_at;
            }
            out.push_back(res);
        }
    }
    return out;
}

CheckResult simulation_cell(const GibbsModel& model, int n, long long trials,
                            std::uint64_t seed, double z_max, int threads) {
    if (n < 1 || trials < 1) {
        throw RangeError("simulation_cell: need n >= 1 and trials >= 1");
    }
    const double p = smallest_tail(model, n, 2);
    const long long count =
        run_experiment(model, n, trials, seed, smallest_exceeds_one, threads);
    CheckResult res;
    res.name = model_tag(model) + " sim n=" + std::to_string(n) +
               " trials=" + std::to_string(trials);
    const double t = static_cast<double>(trials);
    const double phat = static_cast<double>(count) / t;
    if (p <= 0.0 || p >= 1.0) {
        // Degenerate cell: the count must match exactly.
        const long long want = p >= 1.0 ? trials : 0;
        res.pass = (count == want);
        res.observed = static_cast<double>(std::llabs(count - want));
        res.threshold = 0.0;
        if (!res.pass) {
            res.detail = "degenerate p=" + std::to_string(p) + " but count=" +
                         std::to_string(count);
        }
        return res;
    }
    const double se = std::sqrt(p * (1.0 - p) / t);
    res.observed = std::abs(phat - p) / se;
    res.threshold = z_max;
    res.pass = res.observed <= z_max;
    std::ostringstream os;
    os << "p=" << p << " phat=" << phat << " z=" << res.observed;
    res.detail = os.str();
    return res;
}

std::vector<CheckResult> quadrature_suite(int cases, std::uint64_t seed,
                                          double z_max, long long mc_samples) {
    if (cases < 1) {
        throw RangeError("quadrature_suite: cases must be >= 1");
    }
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto away_from_nonpos_ints = [&](double lo, double hi,
                                     double margin) -> double {
        for (int attempt = 0; attempt < 256; ++attempt) {
            const double v = lo + (hi - lo) * unit(rng);
            const double nearest = std::nearbyint(v);
            if (nearest <= 0.0 && std::abs(v - nearest) < margin) {
                continue;
            }
            return v;
        }
        return (lo + hi) / 2.0;
    };
    int made = 0;
    while (made < cases) {
        DirichletIntegralSpec spec;
        spec.b = 1 + static_cast<int>(rng() % 3);
        spec.nu = unit(rng) < 0.3
                      ? 0.0
                      : away_from_nonpos_ints(-0.85, 2.2, 0.07);
        spec.q = unit(rng) < 0.4 ? 0.0 : 0.05 + 0.40 * unit(rng);
        if (spec.q == 0.0) {
            spec.rho = 0.15 + 2.35 * unit(rng);
        } else {
            spec.rho = away_from_nonpos_ints(-0.8, 2.5, 0.07);
        }
        if (spec.nu != 0.0) {
            // rho + b*nu must stay away from the gamma poles as well.
            const double top = spec.rho + spec.b * spec.nu;
            const double nearest = std::nearbyint(top);
            if (nearest <= 0.0 && std::abs(top - nearest) < 0.07) {
                continue;
            }
            if (spec.nu != 0.0 && spec.rho == 0.0) {
                continue; // limit case exercised elsewhere
            }
        }
        spec.p = (0.02 + 0.88 * unit(rng)) * (1.0 - spec.q) / spec.b;
        if (spec.b * spec.p >= 1.0 - spec.q - 1e-3) {
            continue;
        }
        spec.tol = 1e-9;
        double quad = 0.0;
        try {
            quad = incomplete_dirichlet_quadrature(spec);
        } catch (const Error&) {
            continue; // spec rejected by validation; draw another
        }
        const std::uint64_t case_seed = rng();
        const McEstimate mc = dirichlet_mc(spec, mc_samples, case_seed);
        CheckResult res;
        std::ostringstream name;
        name << "quadrature b=" << spec.b << " p=" << spec.p
             << " q=" << spec.q << " nu=" << spec.nu << " rho=" << spec.rho;
        res.name = name.str();
        const double allowance = z_max * mc.std_error + 1e-9;
        res.observed = std::abs(quad - mc.estimate);
        res.threshold = allowance;
        res.pass = res.observed <= allowance;
        if (!res.pass) {
            std::ostringstream os;
            os << "quad=" << quad << " mc=" << mc.estimate
               << " se=" << mc.std_error;
            res.detail = os.str();
        }
        out.push_back(res);
        ++made;
    }
    return out;
}

} // namespace gibbspart

#include "gibbspart/oracle.hpp"

#include "gibbspart/special.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gibbspart {

namespace {

void gen_partitions(int remaining, int max_part, std::vector<int>& parts,
                    const std::function<void(const std::vector<int>&)>& visit) {
    if (remaining == 0) {
        visit(parts);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        parts.push_back(p);
        gen_partitions(remaining - p, p, parts, visit);
        parts.pop_back();
    }
}

bool event_holds(const std::vector<int>& parts, const OracleQuery& q) {
    const int k = static_cast<int>(parts.size());
    switch (q.event) {
    case OracleEvent::Blocks:
        return k == q.k;
    case OracleEvent::LargestAtMost:
        return parts.front() <= q.r;
    case OracleEvent::IthLargestAtMost:
        // With fewer than i blocks the i-th largest does not exist and the
        // event holds vacuously (matching the cumulative convention).
        return k < q.i || parts[static_cast<std::size_t>(q.i) - 1] <= q.r;
    case OracleEvent::SmallestAtLeast:
        return parts.back() >= q.r;
    }
    return false;
}

} // namespace

void for_each_partition(
    int n, const std::function<void(const std::vector<int>&)>& visit) {
    if (n < 1 || n > 40)
        throw RangeError("for_each_partition: n must lie in [1, 40]");
    std::vector<int> parts;
    parts.reserve(static_cast<std::size_t>(n));
    gen_partitions(n, n, parts, visit);
}

BigInt partition_count(int n) {
    if (n < 0) throw RangeError("partition_count: n must be >= 0");
    std::vector<BigInt> p(static_cast<std::size_t>(n) + 1);
    p[0] = 1;
    for (int i = 1; i <= n; ++i) {
        BigInt acc = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2;
            const int g2 = k * (3 * k + 1) / 2;
            if (g1 > i && g2 > i) break;
            const BigInt sgn = (k % 2 == 1) ? 1 : -1;
            if (g1 <= i) acc += sgn * p[static_cast<std::size_t>(i - g1)];
            if (g2 <= i) acc += sgn * p[static_cast<std::size_t>(i - g2)];
        }
        p[static_cast<std::size_t>(i)] = acc;
    }
    return p[static_cast<std::size_t>(n)];
}

Rational exact_stat_enum(const GibbsModel& model, int n,
                         const OracleQuery& q) {
    if (n < 1 || n > 40)
        throw RangeError("exact_stat_enum: n must lie in [1, 40]");
    if (n > model.max_n())
        throw RangeError("exact_stat_enum: n exceeds the model's max_n");
    if (q.i < 1) throw ParamError("exact_stat_enum: i must be >= 1");
    if (q.cond_k && (*q.cond_k < 1 || *q.cond_k > n))
        throw ParamError("exact_stat_enum: cond_k must lie in [1, n]");
    Rational num = 0;
    Rational den = 0;
    std::vector<int> mult(static_cast<std::size_t>(n));
    for_each_partition(n, [&](const std::vector<int>& parts) {
        const int k = static_cast<int>(parts.size());
        if (q.cond_k && k != *q.cond_k) return;
        std::fill(mult.begin(), mult.end(), 0);
        for (int part : parts) ++mult[static_cast<std::size_t>(part) - 1];
        const Rational pr =
            model.eppf_multiplicities(mult, Mode::Exact).exact();
        if (q.cond_k) den += pr;
        if (event_holds(parts, q)) num += pr;
    });
    if (q.cond_k) {
        if (den == 0)
            throw ModelError("exact_stat_enum: conditioning event has "
                             "probability zero");
        return num / den;
    }
    return num;
}

McEstimate dirichlet_mc(const DirichletIntegralSpec& spec, long long samples,
                        std::uint64_t seed) {
    if (samples < 2) throw ParamError("dirichlet_mc: samples must be >= 2");
    if (spec.b < 0) throw ParamError("dirichlet_mc: b must be >= 0");
    if (spec.b == 0) return {1.0, 0.0};
    if (!(spec.p > 0.0)) throw ParamError("dirichlet_mc: p must be > 0");
    if (!(spec.q >= 0.0 && spec.q < 1.0))
        throw ParamError("dirichlet_mc: q must lie in [0, 1)");
    if (!(spec.b * spec.p < 1.0 - spec.q))
        throw EmptyDomainError("dirichlet_mc: b*p >= 1-q leaves an empty "
                               "domain");
    if (spec.q == 0.0 && !(spec.rho > 0.0))
        throw ParamError("dirichlet_mc: q = 0 requires rho > 0");

    double pre = 1.0;
    if (spec.nu != 0.0) {
        const SignedLog top = log_gamma_signed(spec.rho + spec.b * spec.nu);
        const SignedLog bot1 = log_gamma_signed(spec.rho);
        const SignedLog bot2 = log_gamma_signed(spec.nu);
        if (!std::isfinite(top.log_abs) || !std::isfinite(bot2.log_abs))
            throw PoleError("dirichlet_mc: gamma prefactor at a pole");
        // rho at a pole sends 1/Gamma(rho) to zero: the integral's limit.
        if (!std::isfinite(bot1.log_abs)) return {0.0, 0.0};
        int sign = top.sign * bot1.sign;
        for (int j = 0; j < spec.b; ++j) sign *= bot2.sign;
        pre = sign * std::exp(top.log_abs - bot1.log_abs -
                              spec.b * bot2.log_abs);
    }

    const double width = 1.0 - spec.q - spec.b * spec.p;
    double volume = 1.0;
    for (int j = 0; j < spec.b; ++j) volume *= width;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double mean = 0.0, m2 = 0.0;
    std::vector<double> y(static_cast<std::size_t>(spec.b));
    for (long long t = 0; t < samples; ++t) {
        double sum = 0.0;
        for (int j = 0; j < spec.b; ++j) {
            y[static_cast<std::size_t>(j)] = spec.p + width * unif(rng);
            sum += y[static_cast<std::size_t>(j)];
        }
        double val = 0.0;
        if (sum < 1.0 - spec.q) {
            val = std::pow(1.0 - sum, spec.rho - 1.0);
            for (int j = 0; j < spec.b; ++j)
                val *= std::pow(y[static_cast<std::size_t>(j)],
                                spec.nu - 1.0);
        }
        const double delta = val - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (val - mean);
    }
    const double var = m2 / (static_cast<double>(samples) - 1.0);
    McEstimate out;
    out.estimate = pre * volume * mean;
    out.std_error = std::abs(pre) * volume *
                    std::sqrt(std::max(var, 0.0) /
                              static_cast<double>(samples));
    return out;
}

} // namespace gibbspart

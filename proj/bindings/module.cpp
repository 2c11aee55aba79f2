// Python bindings: models, exact distributions, sampling, asymptotic forms,
// special-number tables, Dirichlet integrals, and the verification suites.

#include "gibbspart/asymp.hpp"
#include "gibbspart/bell.hpp"
#include "gibbspart/dirichlet.hpp"
#include "gibbspart/dist.hpp"
#include "gibbspart/errors.hpp"
#include "gibbspart/model.hpp"
#include "gibbspart/oracle.hpp"
#include "gibbspart/sampler.hpp"
#include "gibbspart/verify.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace gibbspart;

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Which parse_which(const std::string& which) {
    if (which == "largest") return Which::Largest;
    if (which == "smallest") return Which::Smallest;
    throw ParamError("which must be 'largest' or 'smallest', got '" + which +
                     "'");
}

SpecialKind parse_kind(const std::string& kind) {
    if (kind == "stirling1") return SpecialKind::Stirling1;
    if (kind == "gfc") return SpecialKind::Gfc;
    if (kind == "stirling1-assoc") return SpecialKind::Stirling1Assoc;
    if (kind == "gfc-assoc") return SpecialKind::GfcAssoc;
    throw ParamError("unknown special-number kind: " + kind);
}

std::vector<int> sizes_descending(const PartitionSample& s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(s.k));
    for (int j = s.n; j >= 1; --j) {
        const int mult = s.multiplicities[static_cast<std::size_t>(j - 1)];
        for (int c = 0; c < mult; ++c) out.push_back(j);
    }
    return out;
}

py::dict check_to_dict(const CheckResult& c) {
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["observed"] = c.observed;
    d["threshold"] = c.threshold;
    d["detail"] = c.detail;
    return d;
}

py::list checks_to_list(const std::vector<CheckResult>& checks) {
    py::list out;
    for (const auto& c : checks) out.append(check_to_dict(c));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and asymptotic distributions of extreme block sizes in "
              "Gibbs-type random partitions";

    // Translators run newest-first, so the base class goes in before the
    // derived ones.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
    py::register_exception<EmptyDomainError>(m, "EmptyDomainError",
                                             PyExc_ValueError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
    py::register_exception<ToleranceError>(m, "ToleranceError",
                                           PyExc_ArithmeticError);
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError",
                                                PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                             PyExc_ArithmeticError);
    py::register_exception<NormalizationError>(m, "NormalizationError",
                                               PyExc_ArithmeticError);

    // ------------------------------------------------------------ models --
    py::class_<GibbsModel>(m, "Model")
        .def_static("ewens_pitman", &GibbsModel::ewens_pitman,
                    py::arg("alpha"), py::arg("theta"))
        .def_static("gnedin", &GibbsModel::gnedin, py::arg("gamma"),
                    py::arg("zeta"))
        .def_static("from_json", &GibbsModel::from_json, py::arg("text"))
        .def("describe", &GibbsModel::describe)
        .def("__repr__", &GibbsModel::describe)
        .def(
            "eppf",
            [](const GibbsModel& model, const std::vector<int>& sizes) {
                return model.eppf_composition(sizes, Mode::Auto).to_double();
            },
            py::arg("block_sizes"),
            "Probability of one particular set partition with these block "
            "sizes")
        .def(
            "eppf_exact",
            [](const GibbsModel& model, const std::vector<int>& sizes) {
                return rational_str(
                    model.eppf_composition(sizes, Mode::Exact).exact());
            },
            py::arg("block_sizes"), "Same as eppf, as an exact fraction");

    // ----------------------------------------------- exact distributions --
    m.def(
        "blocks_pmf",
        [](const GibbsModel& model, int n) {
            const auto pmf = blocks_pmf_extval(model, n, Mode::Auto);
            std::vector<double> out;
            out.reserve(pmf.size());
            for (const auto& v : pmf) out.push_back(v.to_double());
            return out;
        },
        py::arg("model"), py::arg("n"),
        "P(number of blocks = k) for k = 1..n (index k-1)");
    m.def(
        "blocks_pmf_exact",
        [](const GibbsModel& model, int n) {
            const auto pmf = blocks_pmf_extval(model, n, Mode::Exact);
            std::vector<std::string> out;
            out.reserve(pmf.size());
            for (const auto& v : pmf) out.push_back(rational_str(v.exact()));
            return out;
        },
        py::arg("model"), py::arg("n"));
    m.def(
        "extreme_cdf",
        [](const GibbsModel& model, int n, int i, int r) {
            return extreme_cdf(model, n, i, r);
        },
        py::arg("model"), py::arg("n"), py::arg("i"), py::arg("r"),
        "P(i-th largest block size <= r)");
    m.def(
        "extreme_cdf_exact",
        [](const GibbsModel& model, int n, int i, int r) {
            return rational_str(
                extreme_cdf_extval(model, n, i, r, Mode::Exact).exact());
        },
        py::arg("model"), py::arg("n"), py::arg("i"), py::arg("r"));
    m.def(
        "smallest_tail",
        [](const GibbsModel& model, int n, int r) {
            return smallest_tail(model, n, r);
        },
        py::arg("model"), py::arg("n"), py::arg("r"),
        "P(smallest block size >= r)");
    m.def(
        "smallest_tail_exact",
        [](const GibbsModel& model, int n, int r) {
            return rational_str(
                smallest_tail_extval(model, n, r, Mode::Exact).exact());
        },
        py::arg("model"), py::arg("n"), py::arg("r"));
    m.def(
        "conditional_extreme",
        [](const GibbsModel& model, int n, int k, const std::string& which,
           int r) {
            return conditional_extreme(model.weights(), n, k,
                                       parse_which(which), r, Mode::Auto);
        },
        py::arg("model"), py::arg("n"), py::arg("k"), py::arg("which"),
        py::arg("r"),
        "P(largest <= r | k blocks) or P(smallest >= r | k blocks)");
    m.def(
        "conditional_ith_largest",
        [](const GibbsModel& model, int n, int k, int i, int r) {
            return conditional_ith_largest(model.weights(), n, k, i, r,
                                           Mode::Auto);
        },
        py::arg("model"), py::arg("n"), py::arg("k"), py::arg("i"),
        py::arg("r"), "P(i-th largest <= r | k blocks)");
    m.def(
        "factorial_moment",
        [](const GibbsModel& model, int n, const std::string& which, int i) {
            return factorial_moment(model, n, parse_which(which), i,
                                    Mode::Auto);
        },
        py::arg("model"), py::arg("n"), py::arg("which"), py::arg("i"),
        "i-th descending factorial moment of the extreme block size");

    // ------------------------------------------------------------ sampler --
    m.def(
        "sample_block_sizes",
        [](const GibbsModel& model, int n, std::uint64_t seed,
           std::uint64_t stream) {
            RngStream rng(seed, stream);
            return sizes_descending(sample_partition(model, n, rng));
        },
        py::arg("model"), py::arg("n"), py::arg("seed"),
        py::arg("stream") = 0,
        "One sampled partition as a descending list of block sizes");
    m.def(
        "count_no_singletons",
        [](const GibbsModel& model, int n, long long trials,
           std::uint64_t seed, int threads) {
            return run_experiment(model, n, trials, seed,
                                  smallest_exceeds_one, threads);
        },
        py::arg("model"), py::arg("n"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1,
        "Number of sampled partitions whose smallest block exceeds 1");

    // ------------------------------------------------------- asymptotics --
    py::class_<AsymptoticForm>(m, "AsymptoticForm")
        .def_readonly("coefficient", &AsymptoticForm::coefficient)
        .def_readonly("n_power", &AsymptoticForm::n_power)
        .def_readonly("log_n_power", &AsymptoticForm::log_n_power)
        .def_readonly("order_only", &AsymptoticForm::order_only)
        .def("evaluate", &AsymptoticForm::evaluate, py::arg("n"))
        .def("__repr__", [](const AsymptoticForm& f) {
            std::ostringstream os;
            os << "AsymptoticForm(coefficient=" << f.coefficient
               << ", n_power=" << f.n_power
               << ", log_n_power=" << f.log_n_power
               << ", order_only=" << (f.order_only ? "True" : "False") << ")";
            return os.str();
        });

    m.def("sibuya_pmf", &sibuya_pmf, py::arg("alpha"), py::arg("j"));
    m.def(
        "smallest_tail_asymp",
        [](double alpha, double theta, int r, bool large_r) {
            const auto res = smallest_tail_asymp_ep(alpha, theta, r, large_r);
            py::dict d;
            d["leading"] = res.leading;
            d["correction"] = res.correction
                                  ? py::cast(*res.correction)
                                  : py::object(py::none());
            return d;
        },
        py::arg("alpha"), py::arg("theta"), py::arg("r"),
        py::arg("large_r") = false,
        "Leading form (and correction when available) of P(smallest >= r)");
    m.def("buchstab_omega", &buchstab_omega, py::arg("theta"), py::arg("x"),
          py::arg("tol") = 1e-8);
    m.def("smallest_large_dev", &smallest_large_dev, py::arg("alpha"),
          py::arg("theta"), py::arg("x"), py::arg("tol") = 1e-8,
          "Asymptotic form of P(smallest >= nx)");
    m.def("consistent_smallest_cond", &consistent_smallest_cond,
          py::arg("alpha"), py::arg("x"), py::arg("k"),
          py::arg("tol") = 1e-8,
          "Asymptotic form of P(smallest >= nx | k blocks)");
    m.def("dickman_rho", &dickman_rho, py::arg("alpha"), py::arg("theta"),
          py::arg("x"), py::arg("tol") = 1e-8,
          "Limit of P(largest <= nx)");
    m.def("rho_tilde", &rho_tilde, py::arg("alpha"), py::arg("x"),
          py::arg("k"), py::arg("tol") = 1e-8,
          "Limit of P(largest <= nx | k blocks)");
    m.def("rho_r_root", &rho_r_root, py::arg("alpha"), py::arg("r"),
          "Root in (1, 1/alpha) of the truncated binomial series");
    m.def(
        "largest_small_dev",
        [](double alpha, double theta, int n, int r, const std::string& form) {
            DevForm f;
            if (form == "exact-root") {
                f = DevForm::ExactRoot;
            } else if (form == "limit") {
                f = DevForm::Limit;
            } else {
                throw ParamError("form must be 'exact-root' or 'limit'");
            }
            return largest_small_dev(alpha, theta, n, r, f);
        },
        py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("r"),
        py::arg("form") = "exact-root",
        "Approximate P(largest <= r) for fixed small r");
    m.def("moment_limit_smallest", &moment_limit_smallest, py::arg("alpha"),
          py::arg("m"), py::arg("i"), py::arg("tol") = 1e-8);
    m.def("moment_limit_largest", &moment_limit_largest, py::arg("alpha"),
          py::arg("theta"), py::arg("i"), py::arg("tol") = 1e-8);
    m.def("gnedin_smallest_tail_asymp", &gnedin_smallest_tail_asymp,
          py::arg("gamma"), py::arg("zeta"), py::arg("x"));
    m.def("gnedin_smallest_moment_asymp", &gnedin_smallest_moment_asymp,
          py::arg("gamma"), py::arg("zeta"), py::arg("j"),
          py::arg("tol") = 1e-10);
    m.def("gnedin_largest_cdf_asymp", &gnedin_largest_cdf_asymp,
          py::arg("gamma"), py::arg("zeta"), py::arg("x"),
          py::arg("tol") = 1e-8);
    m.def("gnedin_largest_moment_asymp", &gnedin_largest_moment_asymp,
          py::arg("gamma"), py::arg("zeta"), py::arg("j"),
          py::arg("tol") = 1e-8);

    // --------------------------------------------------- special numbers --
    m.def(
        "special_number",
        [](const std::string& kind, int n, int k, double alpha, int r) {
            const ExtVal v =
                special_number(parse_kind(kind), n, k, alpha, r, Mode::Auto);
            py::dict d;
            d["value"] = v.to_double();
            d["sign"] = v.sign();
            d["log_abs"] = v.log_mag();
            return d;
        },
        py::arg("kind"), py::arg("n"), py::arg("k"), py::arg("alpha") = 0.0,
        py::arg("r") = 1,
        "kind: stirling1 | gfc | stirling1-assoc | gfc-assoc");
    m.def(
        "special_number_exact",
        [](const std::string& kind, int n, int k, double alpha, int r) {
            return rational_str(
                special_number(parse_kind(kind), n, k, alpha, r, Mode::Exact)
                    .exact());
        },
        py::arg("kind"), py::arg("n"), py::arg("k"), py::arg("alpha") = 0.0,
        py::arg("r") = 1);
    m.def(
        "bell_value",
        [](const GibbsModel& model, int n, int k, const std::string& family,
           int r) {
            BellTablePtr tab;
            if (family == "plain") {
                tab = bell_table(model.weights(), n, Mode::Auto);
            } else if (family == "min-size") {
                tab = bell_table_min_size(model.weights(), r, n, Mode::Auto);
            } else if (family == "max-size") {
                tab = bell_table_max_size(model.weights(), r, n, Mode::Auto);
            } else {
                throw ParamError(
                    "family must be plain, min-size, or max-size");
            }
            return tab->at(n, k).to_double();
        },
        py::arg("model"), py::arg("n"), py::arg("k"),
        py::arg("family") = "plain", py::arg("r") = 1,
        "Partial-sum table entry for the model's weight sequence");

    // ------------------------------------------------ Dirichlet integrals --
    m.def(
        "incomplete_dirichlet",
        [](int b, double p, double q, double nu, double rho, double tol) {
            DirichletIntegralSpec spec;
            spec.b = b;
            spec.p = p;
            spec.q = q;
            spec.nu = nu;
            spec.rho = rho;
            spec.tol = tol;
            return incomplete_dirichlet(spec);
        },
        py::arg("b"), py::arg("p"), py::arg("q"), py::arg("nu"),
        py::arg("rho"), py::arg("tol") = 1e-8,
        "Incomplete Dirichlet integral over the restricted simplex");
    m.def(
        "dirichlet_mc",
        [](int b, double p, double q, double nu, double rho,
           long long samples, std::uint64_t seed) {
            DirichletIntegralSpec spec;
            spec.b = b;
            spec.p = p;
            spec.q = q;
            spec.nu = nu;
            spec.rho = rho;
            const McEstimate e = dirichlet_mc(spec, samples, seed);
            return py::make_tuple(e.estimate, e.std_error);
        },
        py::arg("b"), py::arg("p"), py::arg("q"), py::arg("nu"),
        py::arg("rho"), py::arg("samples"), py::arg("seed"),
        "Monte Carlo estimate (estimate, standard_error)");

    // ------------------------------------------------------------- oracle --
    m.def(
        "partition_count",
        [](int n) { return rational_str(Rational(partition_count(n))); },
        py::arg("n"),
        "Number of integer partitions of n (as a decimal string)");
    m.def(
        "enum_probability",
        [](const GibbsModel& model, int n, const std::string& event, int k,
           int i, int r, std::optional<int> cond_k) {
            OracleQuery q;
            if (event == "blocks") {
                q.event = OracleEvent::Blocks;
            } else if (event == "largest-at-most") {
                q.event = OracleEvent::LargestAtMost;
            } else if (event == "ith-largest-at-most") {
                q.event = OracleEvent::IthLargestAtMost;
            } else if (event == "smallest-at-least") {
                q.event = OracleEvent::SmallestAtLeast;
            } else {
                throw ParamError("unknown event: " + event);
            }
            q.k = k;
            q.i = i;
            q.r = r;
            q.cond_k = cond_k;
            return rational_str(exact_stat_enum(model, n, q));
        },
        py::arg("model"), py::arg("n"), py::arg("event"), py::arg("k") = 1,
        py::arg("i") = 1, py::arg("r") = 1, py::arg("cond_k") = py::none(),
        "Brute-force enumeration probability as an exact fraction (n <= 40)");

    // ------------------------------------------------------------- verify --
    m.def(
        "verify_core",
        [](int oracle_n_max, int identity_n_max) {
            auto checks = oracle_equivalence_suite(oracle_n_max);
            const auto ids = identity_suite(identity_n_max);
            checks.insert(checks.end(), ids.begin(), ids.end());
            return checks_to_list(checks);
        },
        py::arg("oracle_n_max") = 8, py::arg("identity_n_max") = 12);
    m.def(
        "verify_quadrature",
        [](int cases, std::uint64_t seed, double z_max, long long samples) {
            return checks_to_list(
                quadrature_suite(cases, seed, z_max, samples));
        },
        py::arg("cases") = 20, py::arg("seed") = 1234, py::arg("z_max") = 4.0,
        py::arg("samples") = 2'000'000);
    m.def(
        "verify_simulation_cell",
        [](const GibbsModel& model, int n, long long trials,
           std::uint64_t seed, double z_max, int threads) {
            return check_to_dict(
                simulation_cell(model, n, trials, seed, z_max, threads));
        },
        py::arg("model"), py::arg("n"), py::arg("trials"), py::arg("seed"),
        py::arg("z_max") = 4.0, py::arg("threads") = 1);
}

// Command-line front end: model parsing, exact/asymptotic/sampling commands,
// verification suites, deterministic CSV/JSON emission.
//
// Exit codes: 0 success; 2 usage/parameter validation failure; 3 numeric
// failure (non-convergence, tolerance not met, failed verification).

#include "gibbspart/asymp.hpp"
#include "gibbspart/bell.hpp"
#include "gibbspart/dirichlet.hpp"
#include "gibbspart/dist.hpp"
#include "gibbspart/errors.hpp"
#include "gibbspart/model.hpp"
#include "gibbspart/oracle.hpp"
#include "gibbspart/sampler.hpp"
#include "gibbspart/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using gibbspart::GibbsModel;
using json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string rational_str(const gibbspart::Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// --model accepts inline JSON (starts with '{') or a path to a JSON file.
GibbsModel load_model(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{') {
        std::ifstream in(arg);
        if (!in) {
            throw gibbspart::ParamError("cannot open model file: " + arg);
        }
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
    }
    return GibbsModel::from_json(text);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw gibbspart::ParamError("cannot open output file: " + out_path);
    }
    out << text;
}

// Tabular emitter: fixed column set, rows appended in order, rendered as
// CSV (17 significant digits) or a JSON array of row objects.
class Table {
public:
    explicit Table(std::vector<std::string> columns)
        : columns_(std::move(columns)) {}

    void add_row(std::vector<json> cells) { rows_.push_back(std::move(cells)); }

    std::string render(const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& row : rows_) {
                json obj = json::object();
                for (size_t c = 0; c < columns_.size(); ++c) {
                    obj[columns_[c]] = row[c];
                }
                arr.push_back(std::move(obj));
            }
            return arr.dump() + "\n";
        }
        std::string out;
        for (size_t c = 0; c < columns_.size(); ++c) {
            if (c) out += ',';
            out += columns_[c];
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                const json& cell = row[c];
                if (cell.is_number_float()) {
                    out += fmt17(cell.get<double>());
                } else if (cell.is_string()) {
                    out += cell.get<std::string>();
                } else {
                    out += cell.dump();
                }
            }
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<json>> rows_;
};

struct CommonFlags {
    std::string model_json;
    std::string format = "csv";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& cf, bool model_required) {
    auto* m = cmd->add_option("--model", cf.model_json,
                              "model descriptor: inline JSON or file path");
    if (model_required) m->required();
    cmd->add_option("--format", cf.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", cf.out_path, "write output to file (default stdout)");
}

// ---------------------------------------------------------------- dist ----

struct DistArgs {
    CommonFlags common;
    int n = 1;
    std::string stat;
    int i = 1;
    std::optional<int> r;
    std::optional<int> cond_k;
    bool exact = false;
};

int run_dist(const DistArgs& a) {
    using namespace gibbspart;
    const GibbsModel model = a.common.model_json.empty()
                                 ? GibbsModel::ewens_pitman(0.0, 1.0)
                                 : load_model(a.common.model_json);
    const Mode mode = a.exact ? Mode::Exact : Mode::Auto;
    Table* table = nullptr;
    std::optional<Table> t;

    auto value_cols = [&](std::vector<std::string> base) {
        if (a.exact) base.push_back("exact");
        return base;
    };
    auto push_extval = [&](std::vector<json> prefix, const ExtVal& v) {
        prefix.push_back(v.to_double());
        if (a.exact) prefix.push_back(rational_str(v.exact()));
        table->add_row(std::move(prefix));
    };

    if (a.stat == "blocks") {
        t.emplace(value_cols({"k", "probability"}));
        table = &*t;
        const auto pmf = blocks_pmf_extval(model, a.n, mode);
        for (int k = 1; k <= a.n; ++k) {
            push_extval({k}, pmf[static_cast<size_t>(k - 1)]);
        }
    } else if (a.stat == "cdf") {
        t.emplace(value_cols({"i", "r", "probability"}));
        table = &*t;
        if (a.r) {
            push_extval({a.i, *a.r},
                        extreme_cdf_extval(model, a.n, a.i, *a.r, mode));
        } else {
            for (int r = 1; r <= a.n; ++r) {
                push_extval({a.i, r},
                            extreme_cdf_extval(model, a.n, a.i, r, mode));
            }
        }
    } else if (a.stat == "smallest") {
        t.emplace(value_cols({"r", "probability"}));
        table = &*t;
        if (a.r) {
            push_extval({*a.r}, smallest_tail_extval(model, a.n, *a.r, mode));
        } else {
            for (int r = 1; r <= a.n; ++r) {
                push_extval({r}, smallest_tail_extval(model, a.n, r, mode));
            }
        }
    } else if (a.stat == "cond-largest" || a.stat == "cond-smallest") {
        if (!a.cond_k || !a.r) {
            throw ParamError("stat " + a.stat + " requires --cond-k and --r");
        }
        t.emplace(std::vector<std::string>{"n", "k", "r", "probability"});
        table = &*t;
        const Which which =
            a.stat == "cond-largest" ? Which::Largest : Which::Smallest;
        table->add_row({a.n, *a.cond_k, *a.r,
                        conditional_extreme(model.weights(), a.n, *a.cond_k,
                                            which, *a.r, mode)});
    } else if (a.stat == "cond-ith") {
        if (!a.cond_k || !a.r) {
            throw ParamError("stat cond-ith requires --cond-k and --r");
        }
        t.emplace(std::vector<std::string>{"n", "k", "i", "r", "probability"});
        table = &*t;
        table->add_row({a.n, *a.cond_k, a.i, *a.r,
                        conditional_ith_largest(model.weights(), a.n, *a.cond_k,
                                                a.i, *a.r, mode)});
    } else if (a.stat == "moment-largest" || a.stat == "moment-smallest") {
        t.emplace(std::vector<std::string>{"i", "moment"});
        table = &*t;
        const Which which =
            a.stat == "moment-largest" ? Which::Largest : Which::Smallest;
        table->add_row({a.i, factorial_moment(model, a.n, which, a.i, mode)});
    } else {
        throw ParamError("unknown --stat: " + a.stat);
    }
    write_output(table->render(a.common.format), a.common.out_path);
    return 0;
}

// -------------------------------------------------------------- sample ----

struct SampleArgs {
    CommonFlags common;
    int n = 1;
    long long trials = 1;
    uint64_t seed = 0;
    int threads = 1;
    std::string event;
};

std::string sizes_descending(const gibbspart::PartitionSample& s) {
    std::string out;
    for (int j = s.n; j >= 1; --j) {
        for (int c = 0; c < s.multiplicities[static_cast<size_t>(j - 1)]; ++c) {
            if (!out.empty()) out += '|';
            out += std::to_string(j);
        }
    }
    return out;
}

int run_sample(const SampleArgs& a) {
    using namespace gibbspart;
    const GibbsModel model = load_model(a.common.model_json);
    if (!a.event.empty()) {
        if (a.event != "smallest-gt-1") {
            throw ParamError("unknown --event: " + a.event);
        }
        const long long count = run_experiment(model, a.n, a.trials, a.seed,
                                               smallest_exceeds_one, a.threads);
        Table table({"trials", "count", "fraction"});
        table.add_row({a.trials, count,
                       static_cast<double>(count) / static_cast<double>(a.trials)});
        write_output(table.render(a.common.format), a.common.out_path);
        return 0;
    }
    Table table({"trial", "k", "sizes"});
    for (long long t = 0; t < a.trials; ++t) {
        RngStream rng(a.seed, static_cast<uint64_t>(t));
        PartitionSample s;
        if (model.kind() == ModelKind::EwensPitman) {
            s = sample_ep_sequential(model.alpha(), model.theta(), a.n, rng);
        } else if (model.kind() == ModelKind::Gnedin) {
            s = sample_gnedin(model.gamma(), model.zeta(), a.n, rng);
        } else {
            s = sample_partition(model, a.n, rng);
        }
        table.add_row({t, s.k, sizes_descending(s)});
    }
    write_output(table.render(a.common.format), a.common.out_path);
    return 0;
}

// --------------------------------------------------------------- asymp ----

struct AsympArgs {
    CommonFlags common;
    std::string name;
    double alpha = 0.0, theta = 0.0, gamma = 0.0, zeta = 0.0, x = 0.0;
    double tol = 1e-8;
    int r = 1, i = 1, k = 1, m = 1;
    std::optional<double> n;
    bool large_r = false;
    std::string form = "exact-root";
};

void add_form_rows(Table& table, const std::string& part,
                   const gibbspart::AsymptoticForm& f,
                   const std::optional<double>& n) {
    std::vector<json> row{part, f.coefficient, f.n_power, f.log_n_power,
                          f.order_only ? 1 : 0};
    if (n) row.push_back(f.evaluate(*n));
    table.add_row(std::move(row));
}

int run_asymp(const AsympArgs& a) {
    using namespace gibbspart;
    const std::string& name = a.name;

    auto emit_value = [&](double v) {
        Table table({"name", "value"});
        table.add_row({name, v});
        write_output(table.render(a.common.format), a.common.out_path);
    };
    auto form_table = [&]() {
        std::vector<std::string> cols{"part", "coefficient", "n_power",
                                      "log_n_power", "order_only"};
        if (a.n) cols.push_back("value");
        return Table(cols);
    };
    auto emit_special = [&](const SpecialNumberAsymp& s) {
        std::vector<std::string> cols{"coefficient", "n_power", "log_n_power",
                                      "order_only", "sign_base", "sign_flip_n",
                                      "sign_flip_k"};
        if (a.n) cols.push_back("value");
        Table table(cols);
        std::vector<json> row{s.magnitude.coefficient, s.magnitude.n_power,
                              s.magnitude.log_n_power,
                              s.magnitude.order_only ? 1 : 0, s.sign.base,
                              s.sign.flip_n ? 1 : 0, s.sign.flip_k ? 1 : 0};
        if (a.n) {
            const auto nn = static_cast<long long>(*a.n);
            row.push_back(s.magnitude.evaluate(*a.n) *
                          static_cast<double>(s.sign.at(nn, a.k)));
        }
        table.add_row(std::move(row));
        write_output(table.render(a.common.format), a.common.out_path);
    };

    if (name == "dickman") {
        emit_value(dickman_rho(a.alpha, a.theta, a.x, a.tol));
    } else if (name == "rho-tilde") {
        emit_value(rho_tilde(a.alpha, a.x, a.k, a.tol));
    } else if (name == "buchstab") {
        emit_value(buchstab_omega(a.theta, a.x, a.tol));
    } else if (name == "sibuya") {
        emit_value(sibuya_pmf(a.alpha, a.i));
    } else if (name == "smallest-tail") {
        const auto res =
            smallest_tail_asymp_ep(a.alpha, a.theta, a.r, a.large_r);
        Table table = form_table();
        add_form_rows(table, "leading", res.leading, a.n);
        if (res.correction) {
            add_form_rows(table, "correction", *res.correction, a.n);
        }
        write_output(table.render(a.common.format), a.common.out_path);
    } else if (name == "smallest-large-dev") {
        Table table = form_table();
        add_form_rows(table, "leading",
                      smallest_large_dev(a.alpha, a.theta, a.x, a.tol), a.n);
        write_output(table.render(a.common.format), a.common.out_path);
    } else if (name == "cond-smallest") {
        Table table = form_table();
        add_form_rows(table, "leading",
                      consistent_smallest_cond(a.alpha, a.x, a.k, a.tol), a.n);
        write_output(table.render(a.common.format), a.common.out_path);
    } else if (name == "largest-small-dev") {
        if (!a.n) throw ParamError("largest-small-dev requires --n");
        const DevForm form =
            a.form == "limit" ? DevForm::Limit : DevForm::ExactRoot;
        emit_value(largest_small_dev(a.alpha, a.theta,
                                     static_cast<int>(*a.n), a.r, form));
    } else if (name == "moment-smallest") {
        emit_value(moment_limit_smallest(a.alpha, a.m, a.i, a.tol));
    } else if (name == "moment-largest") {
        emit_value(moment_limit_largest(a.alpha, a.theta, a.i, a.tol));
    } else if (name == "rho-r-root") {
        const double rho = rho_r_root(a.alpha, a.r);
        Table table({"rho", "f_abs"});
        table.add_row({rho, std::abs(f_r_eval(a.alpha, a.r, rho))});
        write_output(table.render(a.common.format), a.common.out_path);
    } else if (name == "gnedin-smallest-tail") {
        emit_value(gnedin_smallest_tail_asymp(a.gamma, a.zeta, a.x));
    } else if (name == "gnedin-smallest-moment") {
        emit_value(gnedin_smallest_moment_asymp(a.gamma, a.zeta, a.i, a.tol));
    } else if (name == "gnedin-largest-cdf") {
        emit_value(gnedin_largest_cdf_asymp(a.gamma, a.zeta, a.x, a.tol));
    } else if (name == "gnedin-largest-moment") {
        emit_value(gnedin_largest_moment_asymp(a.gamma, a.zeta, a.i, a.tol));
    } else if (name == "gfc-fixed-k") {
        emit_special(gfc_fixed_k_asymp(a.alpha, a.k));
    } else if (name == "gfc-assoc") {
        emit_special(gfc_assoc_asymp(a.alpha, a.k, a.x, a.tol));
    } else if (name == "gfc-assoc-boundary") {
        emit_special(gfc_assoc_boundary_asymp(a.alpha, a.k));
    } else if (name == "stirling1-assoc") {
        emit_special(stirling1_assoc_asymp(a.k, a.x, a.tol));
    } else if (name == "stirling1-assoc-boundary") {
        emit_special(stirling1_assoc_boundary_asymp(a.k));
    } else if (name == "hwang") {
        if (!a.n) throw ParamError("hwang requires --n");
        emit_value(stirling1_hwang_ratio(static_cast<int>(*a.n), a.k));
    } else {
        throw ParamError("unknown asymptotic name: " + name);
    }
    return 0;
}

// ---------------------------------------------------------------- bell ----

struct BellArgs {
    CommonFlags common;
    std::string family = "plain";
    std::string weights; // consistent:A | factorial | falling:A
    int n = 1;
    std::optional<int> k;
    int k_max = -1;
    int r = 1;
    int i = 1;
    bool exact = false;
};

gibbspart::WeightFn resolve_weights(const BellArgs& a) {
    using namespace gibbspart;
    if (!a.weights.empty() && !a.common.model_json.empty()) {
        throw ParamError("give either --model or --weights, not both");
    }
    if (!a.weights.empty()) {
        if (a.weights == "factorial") return factorial_weights();
        const auto colon = a.weights.find(':');
        if (colon != std::string::npos) {
            const std::string kind = a.weights.substr(0, colon);
            const double v = std::stod(a.weights.substr(colon + 1));
            if (kind == "consistent") return consistent_weights(v);
            if (kind == "falling") return falling_factorial_weights(v);
        }
        throw ParamError("unknown --weights: " + a.weights +
                         " (use consistent:A, factorial, or falling:A)");
    }
    if (a.common.model_json.empty()) {
        throw ParamError("bell requires --model or --weights");
    }
    return load_model(a.common.model_json).weights();
}

int run_bell(const BellArgs& a) {
    using namespace gibbspart;
    const WeightFn w = resolve_weights(a);
    const Mode mode = a.exact ? Mode::Exact : Mode::Float;

    std::vector<std::string> cols{"n", "k", "value"};
    if (a.exact) cols.push_back("exact");
    auto add_entry = [&](Table& table, int n, int k, const ExtVal& v) {
        std::vector<json> row{n, k, v.to_double()};
        if (a.exact) row.push_back(rational_str(v.exact()));
        table.add_row(std::move(row));
    };

    if (a.family == "ith") {
        if (!a.k) throw ParamError("bell --family ith requires --k");
        std::vector<std::string> icols{"n", "k", "r", "i", "value"};
        if (a.exact) icols.push_back("exact");
        Table table(icols);
        const ExtVal v = bell_ith_at_most(w, a.r, a.i, a.n, *a.k, mode);
        std::vector<json> row{a.n, *a.k, a.r, a.i, v.to_double()};
        if (a.exact) row.push_back(rational_str(v.exact()));
        table.add_row(std::move(row));
        write_output(table.render(a.common.format), a.common.out_path);
        return 0;
    }

    BellTablePtr tab;
    if (a.family == "plain") {
        tab = bell_table(w, a.n, mode, a.k_max);
    } else if (a.family == "min-size") {
        tab = bell_table_min_size(w, a.r, a.n, mode, a.k_max);
    } else if (a.family == "max-size") {
        tab = bell_table_max_size(w, a.r, a.n, mode, a.k_max);
    } else {
        throw ParamError("unknown --family: " + a.family);
    }
    Table table(cols);
    if (a.k) {
        add_entry(table, a.n, *a.k, tab->at(a.n, *a.k));
    } else {
        for (int n = 0; n <= a.n; ++n) {
            const int kcap = a.k_max < 0 ? n : std::min(n, a.k_max);
            for (int k = 0; k <= kcap; ++k) {
                add_entry(table, n, k, tab->at(n, k));
            }
        }
    }
    write_output(table.render(a.common.format), a.common.out_path);
    return 0;
}

// -------------------------------------------------------------- verify ----

struct VerifyArgs {
    CommonFlags common;
    std::string suite = "core";
    std::string cell;
    long long trials = 10000;
    uint64_t seed = 1;
    int threads = 1;
    double z_max = 4.0;
    int cases = 20;
    int oracle_n_max = 8;
    int identity_n_max = 12;
};

// Table-of-checks emission shared by all verify suites.
int emit_checks(const std::vector<gibbspart::CheckResult>& checks,
                const CommonFlags& cf) {
    Table table({"name", "pass", "observed", "threshold", "detail"});
    int fails = 0;
    for (const auto& c : checks) {
        if (!c.pass) ++fails;
        table.add_row({c.name, c.pass ? 1 : 0, c.observed, c.threshold,
                       c.detail});
    }
    std::string text = table.render(cf.format);
    if (cf.format == "csv") {
        text += "total," + std::to_string(checks.size()) + ",failures," +
                std::to_string(fails) + ",\n";
    }
    write_output(text, cf.out_path);
    return fails == 0 ? 0 : 3;
}

// The simulation-table grid: rows theta, columns alpha; invalid parameter
// combinations are skipped.
std::vector<std::pair<double, double>> table1_cells() {
    const double thetas[] = {-0.01, 0.0, 0.01, 0.1, 0.5, 1.0, 5.0};
    const double alphas[] = {0.9, 0.5, 0.1, 0.0, -0.1, -0.5, -1.0};
    std::vector<std::pair<double, double>> cells;
    for (double theta : thetas) {
        for (double alpha : alphas) {
            if (alpha >= 0.0) {
                if (theta <= -alpha) continue;
                if (alpha == 0.0 && theta <= 0.0) continue;
            } else {
                const double m = theta / -alpha;
                if (std::abs(m - std::round(m)) > 1e-9 || m < 0.5) continue;
            }
            cells.emplace_back(alpha, theta);
        }
    }
    return cells;
}

int run_verify(const VerifyArgs& a) {
    using namespace gibbspart;
    if (a.suite == "core" || a.suite == "all") {
        auto checks = oracle_equivalence_suite(a.oracle_n_max);
        auto ids = identity_suite(a.identity_n_max);
        checks.insert(checks.end(), ids.begin(), ids.end());
        if (a.suite == "core") return emit_checks(checks, a.common);
        auto quad = quadrature_suite(a.cases, 1234, a.z_max);
        checks.insert(checks.end(), quad.begin(), quad.end());
        for (const auto& [alpha, theta] : table1_cells()) {
            checks.push_back(simulation_cell(
                GibbsModel::ewens_pitman(alpha, theta), 100, a.trials, a.seed,
                a.z_max, a.threads));
        }
        return emit_checks(checks, a.common);
    }
    if (a.suite == "table1") {
        std::vector<std::pair<double, double>> cells;
        if (!a.cell.empty()) {
            // --cell alpha=A,theta=T
            double alpha = 0.0, theta = 0.0;
            bool saw_alpha = false, saw_theta = false;
            std::stringstream ss(a.cell);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) {
                    throw ParamError("bad --cell entry: " + item);
                }
                const std::string key = item.substr(0, eq);
                const double val = std::stod(item.substr(eq + 1));
                if (key == "alpha") {
                    alpha = val;
                    saw_alpha = true;
                } else if (key == "theta") {
                    theta = val;
                    saw_theta = true;
                } else {
                    throw ParamError("bad --cell key: " + key);
                }
            }
            if (!saw_alpha || !saw_theta) {
                throw ParamError("--cell needs alpha=A,theta=T");
            }
            cells.emplace_back(alpha, theta);
        } else {
            cells = table1_cells();
        }
        Table table({"alpha", "theta", "p", "count", "expected", "z", "pass"});
        int fails = 0;
        for (const auto& [alpha, theta] : cells) {
            const GibbsModel model = GibbsModel::ewens_pitman(alpha, theta);
            const CheckResult res =
                simulation_cell(model, 100, a.trials, a.seed, a.z_max,
                                a.threads);
            const double p = smallest_tail(model, 100, 2);
            const double expected = p * static_cast<double>(a.trials);
            const long long count = run_experiment(
                model, 100, a.trials, a.seed, smallest_exceeds_one, a.threads);
            if (!res.pass) ++fails;
            table.add_row({alpha, theta, p, count, expected,
                           res.threshold == 0.0 ? 0.0 : res.observed,
                           res.pass ? 1 : 0});
        }
        write_output(table.render(a.common.format), a.common.out_path);
        return fails == 0 ? 0 : 3;
    }
    if (a.suite == "quadrature") {
        return emit_checks(quadrature_suite(a.cases, a.seed, a.z_max),
                           a.common);
    }
    throw ParamError("unknown verify suite: " + a.suite);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extreme block sizes in Gibbs-type random partitions"};
    app.require_subcommand(1);

    DistArgs dist_args;
    auto* dist_cmd = app.add_subcommand(
        "dist", "exact distributions of block counts and extreme block sizes");
    add_common(dist_cmd, dist_args.common, /*model_required=*/true);
    dist_cmd->add_option("--n", dist_args.n, "sample size")->required();
    dist_cmd->add_option("--stat", dist_args.stat,
                         "blocks|cdf|smallest|cond-largest|cond-smallest|"
                         "cond-ith|moment-largest|moment-smallest")
        ->required();
    dist_cmd->add_option("--i", dist_args.i, "order index / moment order");
    dist_cmd->add_option("--r", dist_args.r, "size threshold");
    dist_cmd->add_option("--cond-k", dist_args.cond_k,
                         "condition on this block count");
    dist_cmd->add_flag("--exact", dist_args.exact,
                       "force exact rational computation");

    SampleArgs sample_args;
    auto* sample_cmd =
        app.add_subcommand("sample", "draw partitions / count sampled events");
    add_common(sample_cmd, sample_args.common, /*model_required=*/true);
    sample_cmd->add_option("--n", sample_args.n, "sample size")->required();
    sample_cmd->add_option("--trials", sample_args.trials, "number of samples")
        ->capture_default_str();
    sample_cmd->add_option("--seed", sample_args.seed, "master seed")
        ->capture_default_str();
    sample_cmd->add_option("--threads", sample_args.threads, "worker threads")
        ->capture_default_str();
    sample_cmd->add_option("--event", sample_args.event,
                           "count an event instead of emitting partitions "
                           "(smallest-gt-1)");

    AsympArgs asymp_args;
    auto* asymp_cmd =
        app.add_subcommand("asymp", "asymptotic approximations and limits");
    add_common(asymp_cmd, asymp_args.common, /*model_required=*/false);
    asymp_cmd->add_option("--name", asymp_args.name, "which asymptotic")
        ->required();
    asymp_cmd->add_option("--alpha", asymp_args.alpha, "alpha parameter");
    asymp_cmd->add_option("--theta", asymp_args.theta, "theta parameter");
    asymp_cmd->add_option("--gamma", asymp_args.gamma, "gamma parameter");
    asymp_cmd->add_option("--zeta", asymp_args.zeta, "zeta parameter");
    asymp_cmd->add_option("--x", asymp_args.x, "block-size fraction");
    asymp_cmd->add_option("--tol", asymp_args.tol, "quadrature tolerance")
        ->capture_default_str();
    asymp_cmd->add_option("--r", asymp_args.r, "size threshold");
    asymp_cmd->add_option("--i", asymp_args.i, "order / moment index");
    asymp_cmd->add_option("--k", asymp_args.k, "block count");
    asymp_cmd->add_option("--m", asymp_args.m, "block-count bound (alpha<0)");
    asymp_cmd->add_option("--n", asymp_args.n,
                          "evaluate forms at this sample size");
    asymp_cmd->add_flag("--large-r", asymp_args.large_r,
                        "use the r->infinity constant simplifications");
    asymp_cmd->add_option("--form", asymp_args.form, "exact-root|limit")
        ->check(CLI::IsMember({"exact-root", "limit"}))
        ->capture_default_str();

    BellArgs bell_args;
    auto* bell_cmd =
        app.add_subcommand("bell", "dump combinatorial table regions");
    add_common(bell_cmd, bell_args.common, /*model_required=*/false);
    bell_cmd->add_option("--family", bell_args.family,
                         "plain|min-size|max-size|ith")
        ->check(CLI::IsMember({"plain", "min-size", "max-size", "ith"}))
        ->capture_default_str();
    bell_cmd->add_option("--weights", bell_args.weights,
                         "consistent:A | factorial | falling:A "
                         "(alternative to --model)");
    bell_cmd->add_option("--n", bell_args.n, "maximum n")->required();
    bell_cmd->add_option("--k", bell_args.k, "single-column query");
    bell_cmd->add_option("--k-max", bell_args.k_max,
                         "limit stored columns (-1 = all)");
    bell_cmd->add_option("--r", bell_args.r, "size threshold");
    bell_cmd->add_option("--i", bell_args.i, "order index for family=ith");
    bell_cmd->add_flag("--exact", bell_args.exact, "exact rational values");

    VerifyArgs verify_args;
    auto* verify_cmd =
        app.add_subcommand("verify", "self-verification suites");
    add_common(verify_cmd, verify_args.common, /*model_required=*/false);
    verify_cmd
        ->add_option("suite", verify_args.suite,
                     "core|table1|quadrature|all")
        ->check(CLI::IsMember({"core", "table1", "quadrature", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--cell", verify_args.cell,
                           "single simulation cell, e.g. alpha=0,theta=1");
    verify_cmd->add_option("--trials", verify_args.trials, "trials per cell")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_args.seed, "master seed")
        ->capture_default_str();
    verify_cmd->add_option("--threads", verify_args.threads, "worker threads")
        ->capture_default_str();
    verify_cmd->add_option("--z", verify_args.z_max, "z-score acceptance bound")
        ->capture_default_str();
    verify_cmd->add_option("--cases", verify_args.cases,
                           "randomized quadrature cases")
        ->capture_default_str();
    verify_cmd->add_option("--oracle-n-max", verify_args.oracle_n_max,
                           "enumeration size for the equivalence suite")
        ->capture_default_str();
    verify_cmd->add_option("--identity-n-max", verify_args.identity_n_max,
                           "maximum n for the identity suite")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (dist_cmd->parsed()) return run_dist(dist_args);
        if (sample_cmd->parsed()) return run_sample(sample_args);
        if (asymp_cmd->parsed()) return run_asymp(asymp_args);
        if (bell_cmd->parsed()) return run_bell(bell_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
    } catch (const gibbspart::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gibbspart::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gibbspart::RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gibbspart::PoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gibbspart::EmptyDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gibbspart::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

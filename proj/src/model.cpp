#include "gibbspart/model.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "gibbspart/special.hpp"
#include "nlohmann/json.hpp"

namespace gibbspart {

namespace {

std::string fmt_param(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Validity of theta = -m*alpha for alpha < 0: m must be a positive integer
// within 1e-12.
int ep_negative_m(double alpha, double theta) {
    double m_real = -theta / alpha;
    double m_round = std::round(m_real);
    if (m_round < 1.0 || std::abs(m_real - m_round) > 1e-12) return 0;
    return static_cast<int>(m_round);
}

void validate_gnedin(double gamma, double zeta) {
    if (!(gamma >= 0.0))
        throw ParamError("gnedin: gamma must be >= 0");
    // j^2 - gamma*j + zeta > 0 for all integers j >= 1; the quadratic is
    // minimized near j = gamma/2, so checking the clamped neighbors suffices.
    auto quad = [&](double j) { return j * j - gamma * j + zeta; };
    double jm = std::max(1.0, std::floor(gamma / 2.0));
    for (double j : {1.0, jm, jm + 1.0})
        if (!(quad(j) > 0.0))
            throw ParamError("gnedin: requires j^2 - gamma*j + zeta > 0 for all j >= 1");
}

} // namespace

ExtVal WeightFn::operator()(int j, Mode mode) const {
    if (j < 1) throw ParamError("weights: block size must be >= 1");
    if (j > j_max) throw RangeError("weights: size beyond supplied custom weights");
    return eval(j, mode);
}

WeightFn consistent_weights(double alpha) {
    if (!(alpha < 1.0))
        throw ParamError("consistent_weights: requires alpha < 1");
    WeightFn w;
    w.id = "consistent:" + fmt_param(alpha);
    w.nonnegative = true;
    w.eval = [alpha](int j, Mode mode) {
        return factorial_poly(1.0 - alpha, j - 1, 1.0, FactKind::Rising, mode);
    };
    return w;
}

WeightFn factorial_weights() {
    WeightFn w = consistent_weights(0.0);
    w.id = "factorial";
    return w;
}

WeightFn falling_factorial_weights(double alpha) {
    if (alpha == 0.0)
        throw ParamError("falling_factorial_weights: alpha must be nonzero");
    WeightFn w;
    w.id = "falling:" + fmt_param(alpha);
    w.nonnegative = false;
    w.eval = [alpha](int j, Mode mode) {
        return factorial_poly(alpha, j, 1.0, FactKind::Falling, mode);
    };
    return w;
}

ExtVal ep_v(int n, int k, double alpha, double theta, Mode mode) {
    if (n < 1 || k < 1 || k > n) throw RangeError("ep_v: need 1 <= k <= n");
    mode = resolve_mode(mode, n);
    if (theta == 0.0) {
        // Both rising factorials start with the factor theta; cancel it
        // rather than forming 0/0 (theta = 0 is valid for alpha > 0):
        //   v = prod_{i=1}^{k-1}(i alpha) / (n-1)!.
        ExtVal num = factorial_poly(alpha, k - 1, alpha, FactKind::Rising, mode);
        ExtVal den = factorial_poly(1.0, n - 1, 1.0, FactKind::Rising, mode);
        return num / den;
    }
    ExtVal num = factorial_poly(theta, k, alpha, FactKind::Rising, mode);
    ExtVal den = factorial_poly(theta, n, 1.0, FactKind::Rising, mode);
    return num / den;
}

ExtVal gnedin_v(int n, int k, double gamma, double zeta, Mode mode) {
    if (n < 1 || k < 1 || k > n) throw RangeError("gnedin_v: need 1 <= k <= n");
    mode = resolve_mode(mode, n);
    if (mode == Mode::Exact) {
        Rational g(gamma), z(zeta);
        Rational num = 1;
        for (int i = 0; i < n - k; ++i) num *= g + i;          // (gamma)_{n-k}
        for (int j = 1; j <= k - 1; ++j) num *= Rational(j) * j - g * j + z;
        Rational den = 1;
        for (int j = 1; j <= n - 1; ++j) den *= Rational(j) * j + g * j + z;
        return ExtVal::from_rational(num / den);
    }
    ExtVal num = factorial_poly(gamma, n - k, 1.0, FactKind::Rising, Mode::Float);
    int sign = num.sign();
    if (sign == 0) return ExtVal::zero();
    double lg = num.log_mag();
    for (int j = 1; j <= k - 1; ++j) {
        double f = static_cast<double>(j) * j - gamma * j + zeta;
        lg += std::log(f); // positive by parameter validation
    }
    for (int j = 1; j <= n - 1; ++j) {
        double f = static_cast<double>(j) * j + gamma * j + zeta;
        lg -= std::log(f);
    }
    return ExtVal::from_sign_log(sign, lg);
}

double GnedinBlockPmf::prob(int m) const {
    if (m < 1) return 0.0;
    if (m <= static_cast<int>(probs.size())) return probs[m - 1];
    // Extend the term sequence on the fly: t_{m+1}/t_m = (m^2-gamma m+zeta)/(m(m+1)).
    double t = probs.back() * normalizer;
    for (int j = probs.size(); j < m; ++j)
        t *= (static_cast<double>(j) * j - gamma * j + zeta) / (static_cast<double>(j) * (j + 1));
    return t / normalizer;
}

double GnedinBlockPmf::tail_bound(int m_from) const {
    // See gnedin_block_pmf: the power-decay bound only holds once
    // m_from >= 2*zeta/gamma; below that report no information.
    if (!(gamma > 0.0) || m_from < 2.0 * zeta / gamma)
        return std::numeric_limits<double>::infinity();
    return prob(m_from) * 2.0 * (m_from + 1) / gamma;
}

GnedinBlockPmf gnedin_block_pmf(double gamma, double zeta, double tail_tol) {
    validate_gnedin(gamma, zeta);
    if (!(zeta > 0.0))
        throw ParamError("gnedin_block_pmf: mixture requires zeta > 0");
    if (!(tail_tol > 0.0))
        throw ParamError("gnedin_block_pmf: tail_tol must be positive");

    // t_m = prod_{j=0}^{m-1}(j^2 - gamma j + zeta) / (m!(m-1)!), all positive.
    // The term ratio r_m = (m^2-gamma m+zeta)/(m(m+1)) rises to 1, so a plain
    // geometric bound fails; instead, for m >= 2*zeta/gamma the log-ratio is
    // <= -(1+gamma/2)/(m+1), giving t_j <= t_m ((m+1)/(j+1))^{1+gamma/2} and
    //   sum_{j>m} t_j <= t_m * 2(m+1)/gamma.
    constexpr int kMaxTerms = 1000000;
    std::vector<double> t;
    t.reserve(256);
    double cur = zeta; // t_1 = zeta / (1! 0!)
    double total = cur;
    t.push_back(cur);
    bool converged = false;
    int m = 1;
    while (m < kMaxTerms) {
        double bound = gamma > 0.0 && m >= 2.0 * zeta / gamma
                           ? cur * 2.0 * (m + 1) / gamma
                           : std::numeric_limits<double>::infinity();
        if (bound <= tail_tol * total) {
            converged = true;
            break;
        }
        cur *= (static_cast<double>(m) * m - gamma * m + zeta) /
               (static_cast<double>(m) * (m + 1));
        total += cur;
        t.push_back(cur);
        ++m;
    }
    if (!converged)
        throw NonConvergenceError(
            "gnedin_block_pmf: tail bound not reached in 1e6 terms (gamma too small?)");

    GnedinBlockPmf pmf;
    pmf.normalizer = total;
    pmf.gamma = gamma;
    pmf.zeta = zeta;
    pmf.probs.resize(t.size());
    for (size_t i = 0; i < t.size(); ++i) pmf.probs[i] = t[i] / total;
    return pmf;
}

GibbsModel GibbsModel::ewens_pitman(double alpha, double theta) {
    bool ok = false;
    int m = 0;
    if (alpha >= 0.0 && alpha < 1.0) {
        ok = theta > -alpha;
    } else if (alpha < 0.0) {
        m = ep_negative_m(alpha, theta);
        ok = m >= 1;
    }
    if (!ok)
        throw ParamError("ewens_pitman: need (0 <= alpha < 1, theta > -alpha) "
                         "or (alpha < 0, theta = -m*alpha, m a positive integer)");
    GibbsModel g;
    g.kind_ = ModelKind::EwensPitman;
    g.alpha_ = alpha;
    g.theta_ = theta;
    g.m_ = m;
    g.weights_ = consistent_weights(alpha);
    g.nonneg_ = true;
    g.describe_ = "ewens_pitman(alpha=" + fmt_param(alpha) + ",theta=" + fmt_param(theta) + ")";
    return g;
}

GibbsModel GibbsModel::gnedin(double gamma, double zeta) {
    validate_gnedin(gamma, zeta);
    GibbsModel g;
    g.kind_ = ModelKind::Gnedin;
    g.gamma_ = gamma;
    g.zeta_ = zeta;
    g.weights_ = consistent_weights(-1.0); // w_j = j!
    g.nonneg_ = true;
    g.describe_ = "gnedin(gamma=" + fmt_param(gamma) + ",zeta=" + fmt_param(zeta) + ")";
    return g;
}

GibbsModel GibbsModel::consistent_custom_v(double alpha,
                                           std::vector<std::vector<double>> v,
                                           std::string id) {
    GibbsModel g;
    g.kind_ = ModelKind::ConsistentCustomV;
    g.alpha_ = alpha;
    g.weights_ = consistent_weights(alpha);
    g.v_table_ = std::move(v);
    for (const auto& row : g.v_table_)
        for (double x : row)
            if (x < 0.0) g.nonneg_ = false;
    g.describe_ = "consistent_custom_v(alpha=" + fmt_param(alpha) + ",v=" + id + ")";
    return g;
}

GibbsModel GibbsModel::custom(std::vector<double> w,
                              std::vector<std::vector<double>> v) {
    if (w.empty() || v.empty())
        throw ParamError("custom model: w and v must be non-empty");
    if (v.size() != w.size())
        throw ShapeError("custom model: v must have one row per supported n");
    for (size_t n = 0; n < v.size(); ++n)
        if (v[n].size() != n + 1)
            throw ShapeError("custom model: v row for n must have n entries (k=1..n)");
    GibbsModel g;
    g.kind_ = ModelKind::Custom;
    bool nonneg = true;
    for (double x : w)
        if (x < 0.0) nonneg = false;
    for (const auto& row : v)
        for (double x : row)
            if (x < 0.0) nonneg = false;
    auto wv = std::make_shared<std::vector<double>>(std::move(w));
    WeightFn wf;
    {
        // Key the cache by content so distinct custom models never collide.
        std::ostringstream os;
        os.precision(17);
        os << "custom";
        for (double x : *wv) os << ":" << x;
        wf.id = os.str();
    }
    wf.j_max = static_cast<int>(wv->size());
    wf.nonnegative = nonneg;
    wf.eval = [wv](int j, Mode mode) {
        double x = (*wv)[j - 1];
        return mode == Mode::Exact ? ExtVal::from_double_exact(x) : ExtVal::from_double(x);
    };
    g.weights_ = std::move(wf);
    g.v_table_ = std::move(v);
    g.nonneg_ = nonneg;
    g.describe_ = "custom(n_max=" + std::to_string(g.v_table_.size()) + ")";
    return g;
}

GibbsModel GibbsModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(std::string("model JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type"))
        throw ParamError("model JSON: expected an object with a \"type\" field");
    std::string type = j["type"].get<std::string>();
    try {
        if (type == "ewens_pitman")
            return ewens_pitman(j.at("alpha").get<double>(), j.at("theta").get<double>());
        if (type == "gnedin")
            return gnedin(j.at("gamma").get<double>(), j.at("zeta").get<double>());
        if (type == "custom")
            return custom(j.at("w").get<std::vector<double>>(),
                          j.at("v").get<std::vector<std::vector<double>>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(std::string("model JSON: ") + e.what());
    }
    throw ParamError("model JSON: unknown type \"" + type + "\"");
}

ExtVal GibbsModel::v(int n, int k, Mode mode) const {
    if (n < 1 || k < 1 || k > n) throw RangeError("model v: need 1 <= k <= n");
    mode = resolve_mode(mode, n);
    switch (kind_) {
    case ModelKind::EwensPitman:
        return ep_v(n, k, alpha_, theta_, mode);
    case ModelKind::Gnedin:
        return gnedin_v(n, k, gamma_, zeta_, mode);
    case ModelKind::ConsistentCustomV:
    case ModelKind::Custom: {
        if (n > static_cast<int>(v_table_.size()))
            throw RangeError("model v: n beyond supplied v table");
        double x = v_table_[n - 1][k - 1];
        return mode == Mode::Exact ? ExtVal::from_double_exact(x) : ExtVal::from_double(x);
    }
    }
    throw Error("model v: unreachable");
}

int GibbsModel::max_n() const {
    if (kind_ == ModelKind::Custom || kind_ == ModelKind::ConsistentCustomV)
        return static_cast<int>(v_table_.size());
    return std::numeric_limits<int>::max();
}

std::string GibbsModel::describe() const { return describe_; }

ExtVal GibbsModel::eppf_composition(std::span<const int> sizes, Mode mode) const {
    int n = 0;
    for (int s : sizes) {
        if (s < 1) throw ShapeError("eppf: block sizes must be >= 1");
        n += s;
    }
    if (sizes.empty()) throw ShapeError("eppf: empty composition");
    mode = resolve_mode(mode, n);
    ExtVal p = v(n, static_cast<int>(sizes.size()), mode);
    for (int s : sizes) p = p * w(s, mode);
    return p;
}

ExtVal GibbsModel::eppf_multiplicities(std::span<const int> mult, Mode mode) const {
    int n = static_cast<int>(mult.size());
    long long weighted = 0;
    int k = 0;
    for (int j = 1; j <= n; ++j) {
        if (mult[j - 1] < 0) throw ShapeError("eppf: negative multiplicity");
        weighted += static_cast<long long>(j) * mult[j - 1];
        k += mult[j - 1];
    }
    if (weighted != n)
        throw ShapeError("eppf: multiplicities must satisfy sum j*m_j = n");
    if (k == 0) throw ShapeError("eppf: empty partition");
    mode = resolve_mode(mode, n);

    if (mode == Mode::Exact) {
        BigInt nf = 1;
        for (int i = 2; i <= n; ++i) nf *= i;
        Rational p(nf);
        BigInt jf = 1; // j!
        for (int j = 1; j <= n; ++j) {
            jf *= j;
            int mj = mult[j - 1];
            if (mj == 0) continue;
            Rational wj = w(j, Mode::Exact).exact() / Rational(jf);
            Rational pw = 1;
            for (int t = 0; t < mj; ++t) pw *= wj;
            BigInt mjf = 1;
            for (int t = 2; t <= mj; ++t) mjf *= t;
            p *= pw / Rational(mjf);
        }
        return ExtVal::from_rational(p) * v(n, k, Mode::Exact);
    }

    int sign = 1;
    double lg = log_factorial(n);
    for (int j = 1; j <= n; ++j) {
        int mj = mult[j - 1];
        if (mj == 0) continue;
        ExtVal wj = w(j, Mode::Float);
        if (wj.is_zero()) return ExtVal::zero();
        if (wj.sign() < 0 && mj % 2 == 1) sign = -sign;
        lg += mj * (wj.log_mag() - log_factorial(j)) - log_factorial(mj);
    }
    return ExtVal::from_sign_log(sign, lg) * v(n, k, Mode::Float);
}

} // namespace gibbspart

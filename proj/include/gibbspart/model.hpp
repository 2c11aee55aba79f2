#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gibbspart/extval.hpp"

namespace gibbspart {

// Weight sequence w_1, w_2, ... with a stable id used as a table-cache key.
struct WeightFn {
    std::string id;
    std::function<ExtVal(int j, Mode mode)> eval; // j >= 1
    int j_max = std::numeric_limits<int>::max();
    bool nonnegative = true;

    ExtVal operator()(int j, Mode mode = Mode::Float) const;
};

// w_j = (1-alpha)_{j-1}, the unique consistent Gibbs weights (alpha < 1).
WeightFn consistent_weights(double alpha);

// w_j = (j-1)!  (cycle weights; equals consistent_weights(0)).
WeightFn factorial_weights();

// w_j = [alpha]_j = alpha(alpha-1)...(alpha-j+1); generalized-factorial
// weights with alternating signs.  alpha != 0.
WeightFn falling_factorial_weights(double alpha);

// v_{n,k} for the Ewens-Pitman family: (theta)_{k;alpha} / (theta)_n.
// Valid: (0 <= alpha < 1, theta > -alpha) or (alpha < 0, theta = -m*alpha).
ExtVal ep_v(int n, int k, double alpha, double theta, Mode mode = Mode::Float);

// v_{n,k} for the Gnedin family:
//   (gamma)_{n-k} prod_{j=1}^{k-1}(j^2 - gamma j + zeta)
//                 / prod_{j=1}^{n-1}(j^2 + gamma j + zeta).
ExtVal gnedin_v(int n, int k, double gamma, double zeta, Mode mode = Mode::Float);

// Distribution of the total number of blocks of the infinite Gnedin
// partition, P(M = m) proportional to
//   t_m = prod_{j=0}^{m-1}(j^2 - gamma j + zeta) / (m! (m-1)!),
// normalized by summing until a rigorous power-law tail bound drops below
// tail_tol.  Requires gamma > 0 (the mass escapes to infinity at gamma = 0;
// NonConvergence after 1e6 terms) and zeta > 0.  The tail decays like
// m^{-gamma}, so small gamma cannot reach tight tolerances: the default
// suits sampling and mixture sums that add their own decay-aware bounds.
struct GnedinBlockPmf {
    std::vector<double> probs; // probs[m-1] = P(M = m), m = 1..probs.size()
    double normalizer = 0.0;   // sum of t_m
    double gamma = 0.0, zeta = 0.0;
    // P(M = m) for any m (recomputes terms past the stored prefix).
    double prob(int m) const;
    // Upper bound on P(M > m_from).
    double tail_bound(int m_from) const;
};
GnedinBlockPmf gnedin_block_pmf(double gamma, double zeta, double tail_tol = 1e-5);

enum class ModelKind { EwensPitman, Gnedin, ConsistentCustomV, Custom };

// A Gibbs partition model: EPPF p_n(n_1..n_k) = v_{n,k} prod_j w_{n_j}.
class GibbsModel {
public:
    static GibbsModel ewens_pitman(double alpha, double theta);
    static GibbsModel gnedin(double gamma, double zeta);
    // Consistent weights for the given alpha with a caller-supplied v array
    // (v[n-1][k-1] = v_{n,k}); the id names the v choice for caching.
    static GibbsModel consistent_custom_v(double alpha,
                                          std::vector<std::vector<double>> v,
                                          std::string id);
    // Fully custom weights and v; no positivity requirement, but sign-unsafe
    // models restrict distribution ops to exact mode and cannot be sampled.
    static GibbsModel custom(std::vector<double> w,
                             std::vector<std::vector<double>> v);

    // Parse {"type":"ewens_pitman",...} / {"type":"gnedin",...} /
    // {"type":"custom","w":[...],"v":[[...]]} descriptors.
    static GibbsModel from_json(const std::string& text);

    ModelKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double theta() const { return theta_; }
    double gamma() const { return gamma_; }
    double zeta() const { return zeta_; }
    // For alpha < 0 Ewens-Pitman: the integer m with theta = -m*alpha
    // (upper bound on the number of blocks).  0 when not applicable.
    int m() const { return m_; }

    const WeightFn& weights() const { return weights_; }
    ExtVal w(int j, Mode mode = Mode::Float) const { return weights_(j, mode); }
    ExtVal v(int n, int k, Mode mode = Mode::Float) const;
    bool nonnegative() const { return nonneg_; }
    // Largest n supported (bounded for custom models by the data supplied).
    int max_n() const;
    std::string describe() const;

    // EPPF in composition form: p = v_{n,|sizes|} prod_j w_{sizes_j}.
    ExtVal eppf_composition(std::span<const int> sizes, Mode mode = Mode::Auto) const;
    // EPPF of a multiplicity vector (m_1..m_n, n = mult.size()):
    //   n! v_{n,k} prod_j (w_j / j!)^{m_j} / m_j!.
    // ShapeError when sum j*m_j != n.
    ExtVal eppf_multiplicities(std::span<const int> mult, Mode mode = Mode::Auto) const;

private:
    GibbsModel() = default;
    ModelKind kind_ = ModelKind::Custom;
    double alpha_ = 0, theta_ = 0, gamma_ = 0, zeta_ = 0;
    int m_ = 0;
    WeightFn weights_;
    std::vector<std::vector<double>> v_table_; // custom / consistent_custom_v
    bool nonneg_ = true;
    std::string describe_;
};

} // namespace gibbspart

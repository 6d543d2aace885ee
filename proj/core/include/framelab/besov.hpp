#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "framelab/errors.hpp"
#include "framelab/wavelet.hpp"

namespace framelab {

/// Quasi-norm parameters of a discrete Besov space b^s_{p,q}. p or q may be
/// infinity (sup modifications). All norms are driven by the level exponent
/// e(j) = j (s + d (1/2 - 1/p)).
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    int d = 1;

    double level_exponent() const {
        const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
        return s + d * (0.5 - inv_p);
    }
    void validate() const {
        if (!(p > 0.0)) throw config_error("besov parameter p must be positive");
        if (!(q > 0.0)) throw config_error("besov parameter q must be positive");
        if (d < 1) throw config_error("besov dimension must be >= 1");
    }
};

/// Per-level index sets nabla_j, j = -1..j_max, with the dyadic cardinality
/// bounds C1 <= 2^{-jd} |nabla_j| <= C2 for j >= onset.
class IndexFamily {
  public:
    IndexFamily() = default;
    IndexFamily(int dim, std::vector<std::vector<CoeffKey>> levels);

    /// Canonical family: |nabla_j| = (2^d - 1) 2^{jd} wavelet indices per
    /// level, one scaling index at level -1.
    static IndexFamily dyadic(int dim, int j_max);

    int dim() const { return dim_; }
    int max_level() const { return static_cast<int>(levels_.size()) - 2; }
    const std::vector<CoeffKey>& level(int j) const;
    std::size_t total_size() const;

    struct Cardinality {
        double c1 = 0.0, c2 = 0.0;
        int onset = 0;
        bool ok = false;
    };
    Cardinality cardinality_bounds(int onset) const;

  private:
    int dim_ = 1;
    std::vector<std::vector<CoeffKey>> levels_; // index 0 <-> level -1
};

/// Positive weight per index, either a closed-form level rule or a table.
class Weight {
  public:
    /// w_{j,lambda} = 2^{2 j s}
    static Weight level_exponent(double s);
    static Weight constant(double c);
    static Weight table(std::map<CoeffKey, double> w);

    double at(const CoeffKey& key) const;

  private:
    double level_s_ = 0.0;
    double constant_ = 1.0;
    bool tabular_ = false;
    std::map<CoeffKey, double> table_;
};

/// Quasi-norm of Eq.-style discrete Besov spaces: the weighted level-block
/// l_p sums combined in l_q over j >= -1, with sup modifications for
/// p or q = infinity.
double besov_seq_norm(const CoefficientArray& a, const BesovParams& params);

double weighted_l2_norm(const CoefficientArray& a, const Weight& w);

struct NTermResult {
    std::vector<CoeffKey> kept;
    double error = 0.0;
};

/// Keep the n largest sqrt(w)|a| entries (ties by index order); the error is
/// the weighted l2 norm of the complement. This greedy rule is exactly
/// optimal for the weighted-l2 tail.
NTermResult greedy_n_term(const CoefficientArray& a, std::size_t n, const Weight& w);

/// True minimum over all index subsets of size <= n; support must stay
/// <= 20. Independent brute-force oracle for greedy_n_term.
NTermResult exhaustive_n_term_oracle(const CoefficientArray& a, std::size_t n, const Weight& w);

enum class BallProfile { equal_block, lacunary };

/// Unit-ball element of the source space on the given index family:
/// equal_block spreads one value across each full wavelet level 0..J,
/// lacunary puts a single entry per level -1..J. Normalized to norm 1.
CoefficientArray extremal_ball_element(const BesovParams& source, const IndexFamily& family,
                                       BallProfile profile);
CoefficientArray extremal_ball_element(const BesovParams& source, int nlevels, BallProfile profile);

/// Seeded random element of the unit ball (normalized Gaussian entries with
/// random per-level amplitudes).
CoefficientArray random_ball_element(const BesovParams& source, const IndexFamily& family,
                                     std::uint64_t seed);

/// Experiment output record: (n, error) samples and the fitted log-log
/// slope over fit_range.
struct RateReport {
    std::vector<std::pair<std::size_t, double>> samples;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    std::pair<std::size_t, std::size_t> fit_range{16, 1024};
};

RateReport fit_rate(const std::vector<std::pair<std::size_t, double>>& samples,
                    std::pair<std::size_t, std::size_t> fit_range = {16, 1024});

} // namespace framelab

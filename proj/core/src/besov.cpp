#include "framelab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace framelab {

// ---------------------------------------------------------------------------
// IndexFamily

IndexFamily::IndexFamily(int dim, std::vector<std::vector<CoeffKey>> levels)
    : dim_(dim), levels_(std::move(levels)) {}

IndexFamily IndexFamily::dyadic(int dim, int j_max) {
    if (dim != 1 && dim != 2) throw config_error("index family dimension must be 1 or 2");
    std::vector<std::vector<CoeffKey>> levels;
    levels.emplace_back(); // level -1
    levels.back().push_back(CoeffKey{-1, 0, {0, 0}});
    const int types = (1 << dim) - 1;
    for (int j = 0; j <= j_max; ++j) {
        std::vector<CoeffKey> lvl;
        const int side = 1 << j;
        for (int t = 1; t <= types; ++t) {
            if (dim == 1) {
                for (int k = 0; k < side; ++k) lvl.push_back(CoeffKey{j, t, {k, 0}});
            } else {
                for (int k1 = 0; k1 < side; ++k1)
                    for (int k0 = 0; k0 < side; ++k0) lvl.push_back(CoeffKey{j, t, {k0, k1}});
            }
        }
        levels.push_back(std::move(lvl));
    }
    return IndexFamily(dim, std::move(levels));
}

const std::vector<CoeffKey>& IndexFamily::level(int j) const {
    const int i = j + 1;
    if (i < 0 || i >= static_cast<int>(levels_.size()))
        throw config_error("index family level out of range");
    return levels_[static_cast<std::size_t>(i)];
}

std::size_t IndexFamily::total_size() const {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
}

IndexFamily::Cardinality IndexFamily::cardinality_bounds(int onset) const {
    Cardinality c;
    c.onset = onset;
    c.c1 = std::numeric_limits<double>::infinity();
    c.c2 = 0.0;
    for (int j = std::max(onset, 0); j <= max_level(); ++j) {
        const double ratio = std::ldexp(static_cast<double>(level(j).size()), -j * dim_);
        c.c1 = std::min(c.c1, ratio);
        c.c2 = std::max(c.c2, ratio);
    }
    c.ok = c.c2 > 0.0 && std::isfinite(c.c1) && c.c1 > 0.0;
    return c;
}

// ---------------------------------------------------------------------------
// Weight

Weight Weight::level_exponent(double s) {
    Weight w;
    w.level_s_ = s;
    w.constant_ = 0.0;
    return w;
}

Weight Weight::constant(double c) {
    if (!(c > 0.0)) throw config_error("weight must be positive");
    Weight w;
    w.constant_ = c;
    return w;
}

Weight Weight::table(std::map<CoeffKey, double> tw) {
    for (const auto& [k, v] : tw)
        if (!(v > 0.0)) throw config_error("weight must be positive");
    Weight w;
    w.tabular_ = true;
    w.table_ = std::move(tw);
    return w;
}

double Weight::at(const CoeffKey& key) const {
    if (tabular_) {
        auto it = table_.find(key);
        if (it == table_.end()) throw config_error("weight not defined for a stored index");
        return it->second;
    }
    if (constant_ > 0.0) return constant_;
    return std::exp2(2.0 * level_s_ * key.level);
}

// ---------------------------------------------------------------------------
// Norms

double besov_seq_norm(const CoefficientArray& a, const BesovParams& params) {
    params.validate();
    const double e = params.level_exponent();
    const bool p_inf = std::isinf(params.p);
    const bool q_inf = std::isinf(params.q);

    // level blocks in ascending level order
    std::map<int, double> block; // level -> block l_p(-power) accumulator or sup
    for (const auto& [key, v] : a.entries()) {
        double& b = block[key.level];
        if (p_inf)
            b = std::max(b, std::abs(v));
        else
            b += std::pow(std::abs(v), params.p);
    }
    double out = 0.0;
    for (const auto& [j, acc] : block) {
        const double lp = p_inf ? acc : std::pow(acc, 1.0 / params.p);
        const double term = std::exp2(e * j) * lp;
        if (q_inf)
            out = std::max(out, term);
        else
            out += std::pow(term, params.q);
    }
    return q_inf ? out : std::pow(out, 1.0 / params.q);
}

double weighted_l2_norm(const CoefficientArray& a, const Weight& w) {
    double s = 0.0;
    for (const auto& [key, v] : a.entries()) s += w.at(key) * v * v;
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// n-term approximation

namespace {

struct Item {
    CoeffKey key;
    double weighted_sq; // w * a^2
    double score;       // sqrt(w)|a|
};

std::vector<Item> collect_items(const CoefficientArray& a, const Weight& w) {
    std::vector<Item> items;
    items.reserve(a.size());
    for (const auto& [key, v] : a.entries()) {
        const double wk = w.at(key);
        items.push_back(Item{key, wk * v * v, std::sqrt(wk) * std::abs(v)});
    }
    return items;
}

} // namespace

NTermResult greedy_n_term(const CoefficientArray& a, std::size_t n, const Weight& w) {
    auto items = collect_items(a, w);
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.key < y.key;
    });
    NTermResult res;
    const std::size_t keep = std::min(n, items.size());
    double tail = 0.0;
    for (std::size_t i = items.size(); i-- > keep;) tail += items[i].weighted_sq;
    for (std::size_t i = 0; i < keep; ++i) res.kept.push_back(items[i].key);
    res.error = std::sqrt(tail);
    return res;
}

NTermResult exhaustive_n_term_oracle(const CoefficientArray& a, std::size_t n, const Weight& w) {
    auto items = collect_items(a, w);
    const std::size_t m = items.size();
    if (m > 20) throw config_error("exhaustive oracle limited to support size <= 20");
    const std::size_t keep = std::min(n, m);
    double total = 0.0;
    for (const auto& it : items) total += it.weighted_sq;

    NTermResult best;
    best.error = std::sqrt(total);
    if (keep == 0) return best;

    // enumerate all subsets of size `keep`
    std::vector<std::size_t> idx(keep);
    for (std::size_t i = 0; i < keep; ++i) idx[i] = i;
    while (true) {
        double kept_mass = 0.0;
        for (std::size_t i : idx) kept_mass += items[i].weighted_sq;
        const double err = std::sqrt(std::max(total - kept_mass, 0.0));
        if (err < best.error) {
            best.error = err;
            best.kept.clear();
            for (std::size_t i : idx) best.kept.push_back(items[i].key);
        }
        // next combination
        std::size_t i = keep;
        while (i > 0) {
            --i;
            if (idx[i] != i + m - keep) {
                ++idx[i];
                for (std::size_t jj = i + 1; jj < keep; ++jj) idx[jj] = idx[jj - 1] + 1;
                break;
            }
            if (i == 0) return best;
        }
    }
}

// ---------------------------------------------------------------------------
// Ball elements

CoefficientArray extremal_ball_element(const BesovParams& source, const IndexFamily& family,
                                       BallProfile profile) {
    source.validate();
    CoefficientArray a(family.dim());
    const double e = source.level_exponent();
    const int J = family.max_level();
    if (profile == BallProfile::equal_block) {
        // one value per level across the full wavelet levels 0..J
        for (int j = 0; j <= J; ++j) {
            const auto& lvl = family.level(j);
            const double nj = static_cast<double>(lvl.size());
            const double inv_p = std::isinf(source.p) ? 0.0 : 1.0 / source.p;
            const double v = std::exp2(-e * j) * std::pow(nj, -inv_p);
            for (const auto& key : lvl) a.set(key, v);
        }
    } else {
        for (int j = -1; j <= J; ++j) {
            const auto& lvl = family.level(j);
            if (lvl.empty()) continue;
            a.set(lvl.front(), std::exp2(-e * j));
        }
    }
    const double norm = besov_seq_norm(a, source);
    if (!(norm > 0.0)) throw numeric_error("extremal ball element degenerated to zero");
    a.scale(1.0 / norm);
    return a;
}

CoefficientArray extremal_ball_element(const BesovParams& source, int nlevels, BallProfile profile) {
    return extremal_ball_element(source, IndexFamily::dyadic(source.d, nlevels), profile);
}

CoefficientArray random_ball_element(const BesovParams& source, const IndexFamily& family,
                                     std::uint64_t seed) {
    source.validate();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> amp(0.0, 1.0);
    CoefficientArray a(family.dim());
    for (int j = -1; j <= family.max_level(); ++j) {
        const double level_amp = amp(rng);
        for (const auto& key : family.level(j)) {
            const double v = level_amp * gauss(rng);
            if (v != 0.0) a.set(key, v);
        }
    }
    const double norm = besov_seq_norm(a, source);
    if (!(norm > 0.0)) throw numeric_error("random ball element degenerated to zero");
    a.scale(1.0 / norm);
    return a;
}

// ---------------------------------------------------------------------------
// Rate fitting

RateReport fit_rate(const std::vector<std::pair<std::size_t, double>>& samples,
                    std::pair<std::size_t, std::size_t> fit_range) {
    RateReport rep;
    rep.samples = samples;
    rep.fit_range = fit_range;

    std::vector<std::pair<double, double>> pts; // (log n, log e)
    for (const auto& [n, err] : samples) {
        if (n < fit_range.first || n > fit_range.second) continue;
        if (!(err > 0.0)) throw config_error("rate fit requires positive errors in the fit range");
        pts.emplace_back(std::log(static_cast<double>(n)), std::log(err));
    }
    if (pts.size() < 4) throw config_error("rate fit requires at least 4 samples in the fit range");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14) throw numeric_error("rate fit is degenerate");
    rep.slope = (n * sxy - sx * sy) / det;
    rep.intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (rep.slope * x + rep.intercept);
        ss += r * r;
    }
    rep.residual = std::sqrt(ss / n);
    return rep;
}

} // namespace framelab

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framelab/errors.hpp"
#include "framelab/filter.hpp"

namespace framelab {

enum class Side { primal, dual };

/// Compactly supported biorthogonal wavelet system on R^d, d in {1,2}.
/// 2D generators are tensor products; the wavelet type i in {1,..,2^d-1}
/// places the 1D wavelet on axis a iff bit a of i is set.
struct WaveletSystem {
    std::pair<int, int> family{0, 0}; // (primal spline order, dual order)
    int dimension = 1;

    Filter primal_lowpass;
    Filter primal_highpass;
    Filter dual_lowpass;
    Filter dual_highpass;

    int support_radius = 0;   // N: all generator supports inside [-N,N]^d
    double smoothness = 0.0;  // r: Sobolev-scale regularity estimate
    int vanishing_moments = 0; // max order alpha with int x^a psi = 0, per side

    int wavelet_types() const { return (1 << dimension) - 1; }
    const Filter& lowpass(Side s) const { return s == Side::primal ? primal_lowpass : dual_lowpass; }
    const Filter& highpass(Side s) const { return s == Side::primal ? primal_highpass : dual_highpass; }
    std::string family_name() const;
};

/// Build one of the supported CDF biorthogonal spline families:
/// (1,1) Haar, (2,2), (2,4).
WaveletSystem build_system(std::pair<int, int> family, int dimension);

/// Assemble a system from explicit lowpass filters (highpasses derived),
/// e.g. loaded from a filter file. Metadata must be supplied by the caller.
WaveletSystem build_system_from_filters(const Filter& primal_lowpass, const Filter& dual_lowpass,
                                        int dimension, double smoothness, int vanishing_moments);

/// Worst residual over the perfect-reconstruction filter identities
/// (lowpass/highpass shifted products, filter sums, alternating sums).
double perfect_reconstruction_residual(const WaveletSystem& sys);

/// Samples of a function on the dyadic grid of step 2^-level over an
/// axis-aligned box. Box endpoints must be multiples of the step.
/// values are row-major with axis 0 fastest.
struct DyadicGrid {
    int level = 0;
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::vector<double> values;

    DyadicGrid() = default;
    DyadicGrid(int level_, std::array<double, 2> lo_, std::array<double, 2> hi_); // 2D, zero-filled
    DyadicGrid(int level_, double lo_, double hi_);                               // 1D, zero-filled

    double spacing() const { return std::ldexp(1.0, -level); }
    int points(int axis) const;
    std::size_t size() const { return values.size(); }
    std::size_t index(int i0, int i1 = 0) const;
    double coordinate(int axis, int i) const { return lo[static_cast<std::size_t>(axis)] + i * spacing(); }
    /// first integer sample index of axis at this level (lo * 2^level)
    long first_index(int axis) const;

    double& at(int i0, int i1 = 0) { return values[index(i0, i1)]; }
    double at(int i0, int i1 = 0) const { return values[index(i0, i1)]; }

    /// Grid L2 norm: sqrt(h^d * sum over left-closed cells).
    double l2_norm() const;
    double max_abs() const;
};

/// Index of one coefficient: level j >= -1, wavelet type (0 on the scaling
/// level), and integer shift. Ordering is the total order used for greedy
/// tie-breaking: level, then type, then shift lexicographically.
struct CoeffKey {
    int level = -1;
    int type = 0;
    std::array<int, 2> shift{0, 0};

    auto operator<=>(const CoeffKey&) const = default;
};

/// Sparse map (j, lambda) -> value. Level -1 entries are scaling-function
/// coefficients, levels j >= 0 wavelet coefficients. Exact zeros are never
/// stored.
class CoefficientArray {
  public:
    explicit CoefficientArray(int dim = 1) : dim_(dim) {}

    int dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    void set(const CoeffKey& key, double value);
    void add(const CoeffKey& key, double value);
    double at(const CoeffKey& key) const;

    const std::map<CoeffKey, double>& entries() const { return entries_; }

    int max_level() const;
    CoefficientArray& scale(double c);
    CoefficientArray restricted(const std::vector<CoeffKey>& keys) const;
    /// this minus the entries at `keys` (tail after an n-term selection)
    CoefficientArray without(const std::vector<CoeffKey>& keys) const;

    friend CoefficientArray operator+(const CoefficientArray& a, const CoefficientArray& b);

  private:
    int dim_;
    std::map<CoeffKey, double> entries_;
};

enum class GenKind { scaling, wavelet };

/// Sample a generator on the requested grid via the cascade algorithm.
/// type selects the wavelet (1..2^d-1) and is ignored for scaling kind.
/// Values outside [-N,N]^d are exactly zero.
DyadicGrid evaluate_generator(const WaveletSystem& sys, Side side, GenKind kind, int type,
                              const DyadicGrid& grid_spec);

/// Fast filter-bank analysis of grid samples against the dual system:
/// coefficients <f, psi~_{i,j,k}> for levels -1..max_level. Exact for f in
/// the primal multiresolution space at the sampling level; samples outside
/// the grid box are treated as zero.
CoefficientArray analyze(const WaveletSystem& sys, const DyadicGrid& f, int max_level);

/// Inverse transform: sum of scaling and wavelet terms sampled on out_spec.
DyadicGrid synthesize(const WaveletSystem& sys, const CoefficientArray& coeffs,
                      const DyadicGrid& out_spec);

/// |int x^alpha psi_i| per wavelet type and moment order alpha <= order.
/// Primal residuals come from quadrature of cascade samples, dual residuals
/// from the exact two-scale moment recursion.
struct MomentReport {
    // residuals[i-1][alpha] for wavelet type i
    std::vector<std::vector<double>> primal;
    std::vector<std::vector<double>> dual;
    double worst(int max_alpha) const;
};
MomentReport vanishing_moments_check(const WaveletSystem& sys, int order);

/// Worst deviation of <psi_{i,j,k}, psi~_{u,v,l}> from delta over levels
/// 0..jmax and shifts |k|,|l| <= kmax (plus the scaling level), computed by
/// the exact refinable-product calculus, independent of the transforms.
double biorthogonality_residual(const WaveletSystem& sys, int jmax, int kmax);

} // namespace framelab

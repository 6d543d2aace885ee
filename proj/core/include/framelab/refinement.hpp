#pragma once

#include <map>
#include <vector>

#include "framelab/filter.hpp"
#include "framelab/wavelet.hpp"

// Exact calculus for refinable functions: everything here is derived from
// the two-scale relation by linear algebra, with no pointwise evaluation.
// It backs the verification suite and the test oracles.

namespace framelab::refinement {

/// Integer-indexed coefficient vector (offset, values).
struct Seq {
    int offset = 0;
    std::vector<double> values;

    int lo() const { return offset; }
    int hi() const { return offset + static_cast<int>(values.size()) - 1; }
    double at(int k) const {
        int i = k - offset;
        return (i >= 0 && i < static_cast<int>(values.size())) ? values[static_cast<std::size_t>(i)] : 0.0;
    }
};

/// out[2k+m] += v[k] * f[m]: one synthesis (upsample-convolve) step.
Seq upsample_convolve(const Seq& v, const Filter& f);

/// Expansion of the level-j, shift-k generator in the level-L scaling basis
/// of the same side: psi_{j,k} = sum_m p_m phi_{L,m}. `first` is the
/// generator's own filter (highpass for wavelets, lowpass for scalings).
Seq expand_to_fine_scale(const Filter& first, const Filter& lowpass, int levels_below, int shift);

/// Values of the refinable function at the integers, when the eigenproblem
/// at eigenvalue 1 is simple. Returns empty when it is degenerate (rough
/// generators such as some spline duals).
struct IntegerValues {
    int lo = 0;
    std::vector<double> values;
    bool simple = false;
};
IntegerValues integer_values(const Filter& lowpass);

/// c_k = <phi, phi~(.-k)>: cross-correlation of the primal/dual scaling
/// functions, from the eigenvalue-1 eigenvector of the joint transfer
/// operator, normalized by the partition of unity. Biorthogonal filters
/// give c = delta_0 up to rounding.
std::map<int, double> cross_correlation(const Filter& h, const Filter& h_dual);

/// Exact inner product <gen_{j,k}, gen~_{v,l}> of a primal and a dual
/// generator in 1D, assembled from cross_correlation and the fine-scale
/// expansions. kind selects scaling (false) or wavelet (true) per side.
double pair_inner_product(const WaveletSystem& sys, bool primal_is_wavelet, int j, int k,
                          bool dual_is_wavelet, int v, int l);
double pair_inner_product(const WaveletSystem& sys, const std::map<int, double>& cross_corr,
                          bool primal_is_wavelet, int j, int k, bool dual_is_wavelet, int v, int l);

/// T_a^(b) = int_a^{a+1} (x-a)^b g(x) dx for the refinable g with the given
/// lowpass; cells cover the support. Solved exactly from the two-scale
/// relation; beta <= bmax.
struct CellMoments {
    int first_cell = 0;
    // moments[b][cell]
    std::vector<std::vector<double>> moments;
    double at(int b, int cell) const;
    int last_cell() const { return first_cell + static_cast<int>(moments.empty() ? 0 : moments[0].size()) - 1; }
};
CellMoments cell_moments(const Filter& lowpass, int bmax);

/// int x^alpha g(x) dx over the whole line via the moment recursion.
std::vector<double> whole_line_moments(const Filter& lowpass, int amax);
std::vector<double> wavelet_moments(const Filter& lowpass, const Filter& highpass, int amax);

} // namespace framelab::refinement

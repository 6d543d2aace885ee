#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace framelab {

/// Finite real filter on the integers: tap m lives at index offset + m.
struct Filter {
    int offset = 0;
    std::vector<double> taps;

    int lo() const { return offset; }
    int hi() const { return offset + static_cast<int>(taps.size()) - 1; }

    double at(int k) const {
        int i = k - offset;
        return (i >= 0 && i < static_cast<int>(taps.size())) ? taps[static_cast<std::size_t>(i)] : 0.0;
    }

    double sum() const {
        double s = 0;
        for (double t : taps) s += t;
        return s;
    }

    double alternating_sum() const {
        double s = 0;
        for (int k = lo(); k <= hi(); ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * at(k);
        return s;
    }
};

/// Highpass companion of a biorthogonal lowpass: q[k] = (-1)^k lp[1-k].
Filter quadrature_mirror(const Filter& lowpass);

/// sum_k a[k] b[k + 2m] for a range of shifts m; used by the
/// perfect-reconstruction identities.
double shifted_product(const Filter& a, const Filter& b, int m);

/// Parse one filter from tokens "offset t0 t1 ...", taps as decimals or
/// rationals like "-3/64".
Filter parse_filter_tokens(const std::vector<std::string>& tokens);

} // namespace framelab

#include "framelab/refinement.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "framelab/errors.hpp"

namespace framelab::refinement {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

} // namespace

Seq upsample_convolve(const Seq& v, const Filter& f) {
    Seq out;
    out.offset = 2 * v.offset + f.offset;
    out.values.assign(2 * (v.values.size() - 1) + f.taps.size(), 0.0);
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double vi = v.values[i];
        if (vi == 0.0) continue;
        for (std::size_t m = 0; m < f.taps.size(); ++m) out.values[2 * i + m] += vi * f.taps[m];
    }
    return out;
}

Seq expand_to_fine_scale(const Filter& first, const Filter& lowpass, int levels_below, int shift) {
    Seq v{shift, {1.0}};
    if (levels_below <= 0) return v;
    v = upsample_convolve(v, first);
    for (int i = 1; i < levels_below; ++i) v = upsample_convolve(v, lowpass);
    return v;
}

IntegerValues integer_values(const Filter& lowpass) {
    const int lo = lowpass.lo();
    const int hi = lowpass.hi();
    const int n = hi - lo + 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) M(a, b) = kSqrt2 * lowpass.at(2 * (lo + a) - (lo + b));

    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    int unit = -1;
    int multiplicity = 0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0)) < 1e-7) {
            ++multiplicity;
            unit = i;
        }
    }
    IntegerValues out;
    out.lo = lo;
    if (multiplicity != 1) {
        out.simple = false;
        return out; // degenerate at the integers (e.g. generators with jumps)
    }
    Eigen::VectorXd v = es.eigenvectors().col(unit).real();
    const double s = v.sum();
    if (std::abs(s) < 1e-12) {
        out.simple = false;
        return out;
    }
    v /= s;
    out.values.assign(v.data(), v.data() + n);
    out.simple = true;
    return out;
}

std::map<int, double> cross_correlation(const Filter& h, const Filter& h_dual) {
    const int klo = h.lo() - h_dual.hi();
    const int khi = h.hi() - h_dual.lo();
    const int n = khi - klo + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const int k = klo + i;
        for (int m = h.lo(); m <= h.hi(); ++m) {
            const double hm = h.at(m);
            if (hm == 0.0) continue;
            for (int nn = h_dual.lo(); nn <= h_dual.hi(); ++nn) {
                const int k2 = 2 * k + nn - m;
                if (k2 >= klo && k2 <= khi) A(i, k2 - klo) += hm * h_dual.at(nn);
            }
        }
    }
    // (A - I) c = 0 with sum(c) = 1, least squares on the stacked system
    Eigen::MatrixXd M(n + 1, n);
    M.topRows(n) = A - Eigen::MatrixXd::Identity(n, n);
    M.bottomRows(1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs[n] = 1.0;
    Eigen::VectorXd c = M.colPivHouseholderQr().solve(rhs);
    if ((M * c - rhs).norm() > 1e-8)
        throw numeric_error("cross_correlation: transfer operator has no normalized fixed point");
    std::map<int, double> out;
    for (int i = 0; i < n; ++i) out[klo + i] = c[i];
    return out;
}

double pair_inner_product(const WaveletSystem& sys, const std::map<int, double>& cc,
                          bool primal_is_wavelet, int j, int k, bool dual_is_wavelet, int v, int l) {
    const int L = std::max(j, v) + 1;
    const Seq p = expand_to_fine_scale(primal_is_wavelet ? sys.primal_highpass : sys.primal_lowpass,
                                       sys.primal_lowpass, L - j, k);
    const Seq q = expand_to_fine_scale(dual_is_wavelet ? sys.dual_highpass : sys.dual_lowpass,
                                       sys.dual_lowpass, L - v, l);
    double s = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const int m = p.lo() + static_cast<int>(i);
        if (p.values[i] == 0.0) continue;
        for (std::size_t jj = 0; jj < q.values.size(); ++jj) {
            const int n = q.lo() + static_cast<int>(jj);
            auto it = cc.find(n - m);
            if (it != cc.end()) s += p.values[i] * q.values[jj] * it->second;
        }
    }
    return s;
}

double pair_inner_product(const WaveletSystem& sys, bool primal_is_wavelet, int j, int k,
                          bool dual_is_wavelet, int v, int l) {
    const auto cc = cross_correlation(sys.primal_lowpass, sys.dual_lowpass);
    return pair_inner_product(sys, cc, primal_is_wavelet, j, k, dual_is_wavelet, v, l);
}

double CellMoments::at(int b, int cell) const {
    const int i = cell - first_cell;
    if (b < 0 || b >= static_cast<int>(moments.size())) return 0.0;
    if (i < 0 || i >= static_cast<int>(moments[static_cast<std::size_t>(b)].size())) return 0.0;
    return moments[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)];
}

CellMoments cell_moments(const Filter& lowpass, int bmax) {
    const int lo = lowpass.lo();
    const int hi = lowpass.hi();
    const int n = hi - lo; // cells lo .. hi-1
    CellMoments out;
    out.first_cell = lo;
    out.moments.resize(static_cast<std::size_t>(bmax) + 1);

    for (int b = 0; b <= bmax; ++b) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) {
            const int a = lo + i;
            for (int m = lowpass.lo(); m <= lowpass.hi(); ++m) {
                const double w = kSqrt2 * std::ldexp(lowpass.at(m), -(b + 1));
                if (w == 0.0) continue;
                const int a1 = 2 * a - m;
                if (a1 >= lo && a1 < hi) A(i, a1 - lo) += w;
                const int a2 = 2 * a + 1 - m;
                if (a2 >= lo && a2 < hi) {
                    A(i, a2 - lo) += w; // gamma = b term of the binomial expansion
                    for (int g = 0; g < b; ++g)
                        rhs[i] += w * binom(b, g) * out.moments[static_cast<std::size_t>(g)][static_cast<std::size_t>(a2 - lo)];
                }
            }
        }
        Eigen::VectorXd T;
        if (b == 0) {
            Eigen::MatrixXd M(n + 1, n);
            M.topRows(n) = A - Eigen::MatrixXd::Identity(n, n);
            M.bottomRows(1).setOnes();
            Eigen::VectorXd r = Eigen::VectorXd::Zero(n + 1);
            r[n] = 1.0;
            T = M.colPivHouseholderQr().solve(r);
            if ((M * T - r).norm() > 1e-8)
                throw numeric_error("cell_moments: degenerate refinement system");
        } else {
            T = (Eigen::MatrixXd::Identity(n, n) - A).partialPivLu().solve(rhs);
        }
        out.moments[static_cast<std::size_t>(b)].assign(T.data(), T.data() + n);
    }
    return out;
}

std::vector<double> whole_line_moments(const Filter& lowpass, int amax) {
    std::vector<double> m(static_cast<std::size_t>(amax) + 1, 0.0);
    m[0] = 1.0;
    for (int a = 1; a <= amax; ++a) {
        double s = 0.0;
        for (int mm = lowpass.lo(); mm <= lowpass.hi(); ++mm) {
            const double hv = lowpass.at(mm);
            if (hv == 0.0) continue;
            for (int b = 0; b < a; ++b) s += hv * binom(a, b) * ipow(mm, a - b) * m[static_cast<std::size_t>(b)];
        }
        m[static_cast<std::size_t>(a)] = kSqrt2 * std::ldexp(s, -(a + 1)) / (1.0 - std::ldexp(1.0, -a));
    }
    return m;
}

std::vector<double> wavelet_moments(const Filter& lowpass, const Filter& highpass, int amax) {
    const auto m = whole_line_moments(lowpass, amax);
    std::vector<double> w(static_cast<std::size_t>(amax) + 1, 0.0);
    for (int a = 0; a <= amax; ++a) {
        double s = 0.0;
        for (int mm = highpass.lo(); mm <= highpass.hi(); ++mm) {
            const double gv = highpass.at(mm);
            if (gv == 0.0) continue;
            for (int b = 0; b <= a; ++b) s += gv * binom(a, b) * ipow(mm, a - b) * m[static_cast<std::size_t>(b)];
        }
        w[static_cast<std::size_t>(a)] = kSqrt2 * std::ldexp(s, -(a + 1));
    }
    return w;
}

} // namespace framelab::refinement

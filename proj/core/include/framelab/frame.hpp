#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/besov.hpp"
#include "framelab/errors.hpp"
#include "framelab/wavelet.hpp"

namespace framelab {

/// Frame pair over a finite section of a Hilbert space, in coordinates where
/// the ambient inner product is Euclidean. Column k of `atoms` is the
/// synthesis atom g_k; column k of `analysis` is the Riesz representer of
/// the analysis functional h_k, so coefficients are analysis^T f.
struct FramePair {
    Eigen::MatrixXd atoms;
    Eigen::MatrixXd analysis;
    Eigen::VectorXd weight;

    double A = 0.0;      // lower norm-equivalence constant
    double B = 0.0;      // upper norm-equivalence / synthesis constant
    double Aprime = 0.0; // stability constant on the declared stable set
    double admissibility_C = 0.0;

    std::vector<CoeffKey> labels;     // optional per-column index labels
    std::vector<int> stable_indices;  // columns spanning the stability domain K

    int dim() const { return static_cast<int>(atoms.rows()); }
    int size() const { return static_cast<int>(atoms.cols()); }
    double stability_constant() const { return Aprime > 0.0 ? Aprime : A; }
};

FramePair orthonormal_frame(int dim);
/// Remark-style tight frame {e1, e2/sqrt2, e2/sqrt2, e3, ...}.
FramePair tight_duplicate_frame(int dim);
/// Tight frame with growing multiplicity {e1; e2/sqrt2 x2; e3/sqrt3 x3; ...};
/// `levels` groups, dimension = levels.
FramePair tight_growing_frame(int levels);

/// Record of the one-term approximation demonstration for the pathological
/// frame construction.
struct PathologicalRecord {
    struct Row {
        int probe = 0;
        int atom = 0;
        double coefficient = 0.0;
        double error = 0.0;
    };
    std::vector<Row> rows;
    double measured_lower = 0.0; // frame constants of the classical frame
    double measured_upper = 0.0;
    double ratio = 0.0; // B/A
};

/// Orthonormal basis united with {delta^i k_i} for the sampled compact set;
/// every sample admits a one-term approximation with arbitrarily small
/// error while the frame bounds stay within the requested C.
std::pair<FramePair, PathologicalRecord> pathological_frame(const Eigen::MatrixXd& k_samples,
                                                            double delta, double C);

Eigen::VectorXd frame_analysis(const FramePair& frame, const Eigen::VectorXd& f);
Eigen::VectorXd frame_synthesis(const FramePair& frame, const Eigen::VectorXd& coeffs,
                                const std::vector<int>& subset);

struct ReconstructResult {
    Eigen::VectorXd approx;
    double residual = 0.0;
};
/// Partial sum of canonical terms <f,h_k> g_k over the max_terms largest
/// weighted coefficients.
ReconstructResult reconstruct(const FramePair& frame, const Eigen::VectorXd& f,
                              std::size_t max_terms);

/// Finite truncation used for spectral estимation of the frame constants.
struct FiniteSection {
    std::vector<int> indices;
    Eigen::MatrixXd weighted_analysis; // sqrt(w)-scaled analysis functionals, |indices| x r
    Eigen::MatrixXd atom_gram;
};
FiniteSection make_section(const FramePair& frame, const std::vector<int>& indices);
FiniteSection make_section(const FramePair& frame);

struct FrameBounds {
    double lower = 0.0; // estimated A
    double upper = 0.0; // estimated B
};
/// A-hat, B-hat as reciprocal extreme singular values of the weighted
/// analysis matrix restricted to the section's span.
FrameBounds estimate_frame_bounds(const FiniteSection& section);

/// min over (subset, probe) of ||sum_Lambda <f,h_k> g_k|| / ||coeffs|_Lambda||_{2,w};
/// probes with vanishing restricted coefficients are skipped.
double check_stability(const FramePair& frame, const std::vector<std::vector<int>>& subsets,
                       const std::vector<Eigen::VectorXd>& probes);

/// Transport through an isomorphism S: atoms S g_k, functionals S^{-*} h_k,
/// constants A/||S^{-1}|| and B ||S||.
FramePair map_frame_pair(const FramePair& frame, const Eigen::MatrixXd& S, double norm_S,
                         double norm_S_inv);

/// Continuous dead-zone shrinkage: identity above 2 beta, zero below beta,
/// linear ramp 2 sgn(a)(|a| - beta) in between.
double soft_threshold_value(double a, double beta);
CoefficientArray soft_threshold_map(const CoefficientArray& a, double beta);
Eigen::VectorXd soft_threshold_map(const Eigen::VectorXd& a, double beta);

struct ContinuousNTermResult {
    Eigen::VectorXd approx;
    std::size_t kept_count = 0;
    double error = 0.0;        // ||approx - f||
    double error_bound = 0.0;  // (2B/A)(e + 4 eps)
    double beta = 0.0;
    bool target_not_certified = false; // e below the measured greedy sigma_n
};

/// Soft-thresholded full expansion with beta = (e + 4 eps) / (A sqrt(n));
/// keeps at most 2n terms and meets the (2B/A)(e + 4 eps) error bound
/// whenever e dominates the true n-term error on the stability domain.
ContinuousNTermResult continuous_n_term(const FramePair& frame, const Eigen::VectorXd& f,
                                        std::size_t n, double error_target, double eps = 0.0);

/// Greedy canonical n-term error in the ambient norm (used as the e-oracle
/// in the thresholding demonstrations).
double greedy_sigma_n(const FramePair& frame, const Eigen::VectorXd& f, std::size_t n);

} // namespace framelab

#pragma once

#include "chern/grassmann.hpp"

namespace chern {

/// Residuals of the critical-point identities at an S_k-extremal subspace,
/// and the margin of the positivity chain built on it.
struct ExtremalReport {
    Subspace sigma_star;
    int k = 1;
    bool min_mode = true;
    double s_k_value = 0.0;
    double nz1_residual = 0.0;  // max |oint R(X,Xbar,Y,Zbar)| over trial pairs
    double nz2_margin = 0.0;    // min (LHS - RHS) of the perpendicular estimate
    bool nz_vacuous = false;    // k == n: no perpendicular directions
    double chain_margin = 0.0;  // min rc_form(Sigma*, X) - kD/(k+1) over unit X
    double D = 0.0;             // certified lower bound surrogate for min Ric_k
    bool converged = false;
};

/// Optimizes the k-scalar curvature over Gr_k; requires the CKL flag.
OptimizeResult find_extremal_sk(const CurvatureTensor& t, int k, bool minimize,
                                const OptimizeOptions& options);

struct NzReport {
    double nz1_residual = 0.0;
    double nz2_margin = 0.0;
    bool vacuous = false;
};

/// Checks the two critical-point identities at `sigma_star` on random pairs
/// (unit Y in Sigma*, unit Z perpendicular): the mixed sphere integral must
/// vanish and the perpendicular integral must dominate (be dominated by, in
/// max mode) S_k/(k(k+1)) * V. Integrals are exact via the moment reduction.
NzReport verify_nz_identities(const CurvatureTensor& t, const Subspace& sigma_star, int trials,
                              std::uint64_t seed, bool min_mode = true);

/// Full positivity chain: certifies D = min Ric_k > 0 (optimized + sampled
/// surrogate, sharpened at the extremal subspace), finds the S_k-minimizing
/// subspace and checks rc_form(Sigma*, X) >= kD/(k+1) |X|^2 on random unit
/// directions. Throws HypothesisError when D <= 0.
ExtremalReport verify_uniform_from_rick(const CurvatureTensor& t, int k,
                                        const OptimizeOptions& options, int trials = 1000);

}  // namespace chern

#pragma once

#include <optional>
#include <vector>

#include "chern/grassmann.hpp"

namespace chern {

/// Quantitative constants behind the vanishing region q > C1 p + C2 m:
/// C is the certified uniform-RC(k,1) optimum (minimum over points), the
/// lambda/mu quantities are direction-matrix eigenvalue extrema over unit
/// base directions, and C1, C2 are the derived slopes.
struct VanishingConstants {
    double C = 0.0;
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    std::optional<double> mu_max;  // present only when an auxiliary bundle is supplied
    std::optional<double> mu_min;
    double C1 = 0.0;
    double C2 = 1.0;
    int k = 1;
};

/// Certifies uniform RC k-positivity across the point list, then optimizes
/// (plus a seeded random-sample floor) the extreme direction eigenvalues.
/// Throws HypothesisError when the certificate is not positive.
VanishingConstants compute_constants(const std::vector<CurvatureTensor>& e_points,
                                     const std::vector<CurvatureTensor>* f_points, int k,
                                     const OptimizeOptions& options,
                                     long sample_floor = 1000);

/// Region predicate of the vanishing statement: q > C1 p + C2 m.
bool vanishing_region(const VanishingConstants& consts, long p, long q, long m);

/// Eigenvalues of the induced curvature action on a (p,q,m)-type tensor
/// product: every sum_i lambda_{a_i} - sum_j lambda_{b_j} + sum_l mu_{c_l}
/// over multi-indices, in lexicographic enumeration order.
std::vector<double> induced_action_spectrum(const std::vector<double>& lambdas,
                                            const std::vector<double>& mus, int p, int q, int m);

struct EstimateBoundReport {
    double lhs = 0.0;       // sphere integral of the induced curvature pairing
    double rhs = 0.0;       // [lambda_max p - (C/k) q + mu_max m] V |T|^2
    bool holds = false;     // lhs <= rhs + 1e-9 |rhs|
    double tensor_norm2 = 0.0;
    int p = 0, q = 0, m = 0;
};

/// Verifies the averaged curvature estimate on a concrete (p,q,m)-type
/// coefficient array over the witness subspace. The left side is exact: the
/// sphere integral of the induced action reduces to the subspace-summed
/// direction forms of both bundles, whose eigenvalue combinations weight the
/// rotated coefficients. `sigma` must be a witness of the uniform-RC(k,1)
/// certificate that produced `consts`.
EstimateBoundReport verify_estimate_bound(const CurvatureTensor& e_bundle,
                                          const CurvatureTensor& f_bundle, const Subspace& sigma,
                                          const std::vector<Complex>& coeffs, int p, int q, int m,
                                          const VanishingConstants& consts);

}  // namespace chern

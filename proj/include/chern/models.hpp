#pragma once

#include <cstdint>
#include <string>

#include "chern/tensor.hpp"

namespace chern {

/// Constant-holomorphic-sectional-curvature model on C^n:
/// R(i,j,k,l) = (c/2) (delta_ij delta_kl + delta_il delta_kj). CKL; H == c.
CurvatureTensor fubini_study(int n, double c);

/// Zero curvature.
CurvatureTensor flat(int n, int r);

/// Block-diagonal curvature of a metric product; all cross terms vanish.
/// Preserves the CKL flag when both factors carry it.
CurvatureTensor product(const CurvatureTensor& a, const CurvatureTensor& b);

/// Seeded i.i.d. complex-normal draw projected onto the Hermitian subspace.
CurvatureTensor random_hermitian(int n, int r, std::uint64_t seed);

/// Seeded draw projected onto the fully Kahler-symmetric subspace.
CurvatureTensor random_ckl(int n, std::uint64_t seed);

/// random_ckl(n, seed) + s * fubini_study(n, 2): random CKL tensor with a
/// positivity shift.
CurvatureTensor shifted_positive(int n, std::uint64_t seed, double s);

/// Parses a model spec string: "fs:n=2,c=2", "flat:n=2,r=2",
/// "product:fs(1,2)xfs(1,2)", "random-ckl:n=3,seed=7",
/// "random-hermitian:n=3,r=2,seed=1", "shifted-positive:n=3,seed=1,s=4".
CurvatureTensor parse_model(const std::string& spec);

}  // namespace chern

#pragma once

#include <cstdint>
#include <functional>

#include "chern/functionals.hpp"

namespace chern {

/// Surface measure of the unit sphere in C^k ~ R^{2k}: 2 pi^k / (k-1)!.
double sphere_volume(int k);

struct SphericalEstimate {
    Complex value;
    double stderr_value = 0.0;  // Monte Carlo standard error
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Unbiased Monte Carlo estimate of the integral of f over the unit sphere of
/// a subspace (uniform sampling via normalized complex normals). The integrand
/// receives the ambient-coordinate vector frame * y.
SphericalEstimate mc_sphere_average(const std::function<Complex(const Vector&)>& f,
                                    const Subspace& sigma, long samples, std::uint64_t seed);

/// Exact sphere integral of f(Y,Y) for f linear in the first argument and
/// conjugate-linear in the second, with coefficients F(i,j) = f(E_i, E_j):
/// (V / k) * trace(F).
Complex closed_form_average_quadratic(const Matrix& coeffs);

/// Exact sphere integral of g(Y,Y,Y,Y) for g linear in arguments 1,3 and
/// conjugate-linear in 2,4, with coefficients G[i,j,r,s] = g(E_i,E_j,E_r,E_s)
/// flattened as ((i*k + j)*k + r)*k + s:
/// V / (k(k+1)) * sum_{i,j} [G(i,i,j,j) + G(i,j,j,i)].
Complex closed_form_average_quartic(int k, const std::vector<Complex>& coeffs);

/// Integral forms of the curvature functionals; algebraically identical to
/// the direct sums, routed through the exact moment formulas.
double integral_rc_form(const CurvatureTensor& t, const Subspace& sigma, const Vector& u);
double integral_ricci_k(const CurvatureTensor& t, const Subspace& sigma, const Vector& x);

/// k(k+1)/(2V) * integral of H over the unit sphere of sigma; valid only for
/// tensors carrying the CKL flag.
double integral_scalar_k(const CurvatureTensor& t, const Subspace& sigma);

}  // namespace chern

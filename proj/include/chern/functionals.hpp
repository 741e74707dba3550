#pragma once

#include "chern/rng.hpp"
#include "chern/tensor.hpp"

namespace chern {

/// Point of a complex Grassmannian: a k-dimensional subspace of C^ambient
/// represented by an orthonormal column frame.
struct Subspace {
    int ambient = 0;
    int k = 0;
    Matrix frame;  // ambient x k, frame^H frame == I_k

    /// Validates orthonormality to 1e-10.
    static Subspace from_frame(const Matrix& frame);
    static Subspace full(int n);
    static Subspace line(const Vector& x);
    static Subspace haar(int n, int k, Rng& rng);

    Matrix projector() const { return frame * frame.adjoint(); }

    /// Residual membership test: ||x - frame frame^H x|| <= rel_tol ||x||.
    bool contains(const Vector& x, double rel_tol = 1e-8) const;
};

/// Hermitian form matrix of the map u -> R(X, Xbar, u, ubar) for a single
/// direction X, or its sum over an orthonormal frame of a subspace.
/// Stored so that the value at u is u^H * matrix * u; entry (a, b) equals
/// evaluate(X, X, e_b, e_a).
struct DirectionMatrix {
    Matrix matrix;  // r x r Hermitian
    bool summed = false;
};

/// Full contraction R(X, Ybar, u, vbar).
Complex evaluate(const CurvatureTensor& t, const Vector& x, const Vector& y, const Vector& u,
                 const Vector& v);

/// Fiber form of a base-side Hermitian matrix P (n x n):
///   M(a,b) = sum_{i,j} R(i,j,b,a) P(i,j).
/// For P = X X^H this is the direction form of X; for a frame projector it is
/// the summed direction form. Hermitian whenever P is.
Matrix fiber_form(const CurvatureTensor& t, const Matrix& base_p);

/// Base form of a fiber-side Hermitian matrix Q (r x r):
///   N(i,j) = sum_{a,b} R(j,i,a,b) Q(a,b);  value at X is X^H N X.
Matrix base_form(const CurvatureTensor& t, const Matrix& fiber_q);

DirectionMatrix direction_matrix(const CurvatureTensor& t, const Vector& x);
DirectionMatrix direction_matrix_sum(const CurvatureTensor& t, const Subspace& sigma);

/// Holomorphic sectional curvature R(X,Xbar,X,Xbar)/|X|^4; requires r == n.
double holo_sectional(const CurvatureTensor& t, const Vector& x);

/// Chern-Ricci curvature: trace over the fiber of the direction form.
double chern_ricci(const CurvatureTensor& t, const Vector& x);

/// Chern scalar curvature: double trace; requires r == n.
double chern_scalar(const CurvatureTensor& t);

/// k-Ricci curvature sum_{i<=k} R(X,Xbar,E_i,Ebar_i) for X in the span of
/// sigma; requires r == n. Coincides with |X|^2 H(X) at k = 1 and with the
/// Chern-Ricci curvature at k = n.
double ricci_k(const CurvatureTensor& t, const Subspace& sigma, const Vector& x);

/// k-scalar curvature sum_{i,j<=k} R(E_i,Ebar_i,E_j,Ebar_j); requires r == n.
double scalar_k(const CurvatureTensor& t, const Subspace& sigma);

/// u^H (summed direction form) u.
double rc_form(const CurvatureTensor& t, const Subspace& sigma, const Vector& u);

/// R(Sigma; sigma): trace of the fiber-subspace compression of the summed
/// direction form.
double averaged_form(const CurvatureTensor& t, const Subspace& sigma_base,
                     const Subspace& sigma_fiber);

}  // namespace chern

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "chern/errors.hpp"

namespace chern {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Pointwise Chern curvature tensor of a Hermitian holomorphic vector bundle,
/// stored as the full dense 4-index array R_{i jbar alpha betabar} in unitary
/// frames of base (dimension n) and fiber (rank r). Indices are 0-based.
///
/// Immutable after construction. The Hermitian symmetry
///   R(i,j,a,b) == conj(R(j,i,b,a))
/// is expected of every tensor produced by this library; `check_hermitian`
/// measures it, `project_to_hermitian` enforces it.
class CurvatureTensor {
public:
    CurvatureTensor(int n, int r, std::vector<Complex> entries, bool ckl = false);

    static CurvatureTensor zeros(int n, int r, bool ckl = false);

    int n() const { return n_; }
    int r() const { return r_; }
    bool ckl() const { return ckl_; }

    Complex operator()(int i, int j, int a, int b) const {
        return entries_[index(i, j, a, b)];
    }

    const std::vector<Complex>& entries() const { return entries_; }

    /// Largest entry magnitude.
    double max_abs() const;

    /// Same entries, different CKL flag (flag requires r == n).
    CurvatureTensor with_ckl_flag(bool flag) const;

    std::size_t index(int i, int j, int a, int b) const {
        return ((static_cast<std::size_t>(i) * n_ + j) * r_ + a) * r_ + b;
    }

private:
    int n_ = 0;
    int r_ = 0;
    bool ckl_ = false;
    std::vector<Complex> entries_;
};

/// Base metric, fiber metric and raw curvature components in an arbitrary
/// (non-unitary) frame pair.
struct FrameData {
    Matrix gram_base;             // n x n Hermitian positive definite
    Matrix gram_fiber;            // r x r Hermitian positive definite
    std::vector<Complex> raw;     // n*n*r*r entries, same layout as CurvatureTensor
};

struct SymmetryCheck {
    bool ok = false;
    double max_violation = 0.0;
};

/// Default symmetry tolerance: 1e-9 relative to the max-magnitude entry.
double default_symmetry_tol(const CurvatureTensor& t);

/// max |R(i,j,a,b) - conj(R(j,i,b,a))| <= tol?
SymmetryCheck check_hermitian(const CurvatureTensor& t, double tol);

/// Kahler-type symmetry R(i,j,k,l) == R(k,j,i,l), plus the consequence
/// R(i,j,k,l) == R(i,l,k,j); requires r == n.
SymmetryCheck check_ckl(const CurvatureTensor& t, double tol);

/// Orthogonal projection of a raw 4-index array onto the Hermitian-symmetric
/// subspace.
CurvatureTensor project_to_hermitian(int n, int r, const std::vector<Complex>& raw);

/// Orthogonal projection onto the subspace with all Kahler-type symmetries
/// (group average over Hermitian + index-swap relations); requires r == n.
/// Idempotent; fixes tensors that already have the symmetries.
CurvatureTensor project_to_ckl(int n, const std::vector<Complex>& raw);
CurvatureTensor project_to_ckl(const CurvatureTensor& t);

/// Curvature of the dual bundle: R*(i,j,a,b) = -R(i,j,b,a). Involution; the
/// direction-matrix spectrum at any X is the negated spectrum of the input.
CurvatureTensor dual_tensor(const CurvatureTensor& t);

/// Entrywise scaling by a real factor.
CurvatureTensor scaled(const CurvatureTensor& t, double factor);

/// Components after a unitary change of frames: base columns of `base_u`,
/// fiber columns of `fiber_u` become the new frame vectors.
CurvatureTensor conjugate_frames(const CurvatureTensor& t, const Matrix& base_u,
                                 const Matrix& fiber_u);

/// Converts frame data with arbitrary positive-definite Gram matrices to the
/// canonical unitary frame (both Grams identity) via the Hermitian square
/// roots. Identity Grams leave the entries untouched.
CurvatureTensor normalize_to_unitary(const FrameData& data);

}  // namespace chern

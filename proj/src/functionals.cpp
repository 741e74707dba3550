#include "chern/functionals.hpp"

#include <cmath>

namespace chern {

Subspace Subspace::from_frame(const Matrix& frame) {
    const int n = static_cast<int>(frame.rows());
    const int k = static_cast<int>(frame.cols());
    if (k < 1 || k > n) throw ShapeError("subspace dimension out of range");
    const double defect = (frame.adjoint() * frame - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) throw ShapeError("subspace frame is not orthonormal");
    return Subspace{n, k, frame};
}

Subspace Subspace::full(int n) { return Subspace{n, n, Matrix::Identity(n, n)}; }

Subspace Subspace::line(const Vector& x) {
    const double norm = x.norm();
    if (norm < 1e-14) throw ShapeError("cannot span a line on the zero vector");
    Matrix frame(x.size(), 1);
    frame.col(0) = x / norm;
    return Subspace{static_cast<int>(x.size()), 1, frame};
}

Subspace Subspace::haar(int n, int k, Rng& rng) {
    if (k < 1 || k > n) throw ShapeError("subspace dimension out of range");
    return Subspace{n, k, rng.haar_frame(n, k)};
}

bool Subspace::contains(const Vector& x, double rel_tol) const {
    const double norm = x.norm();
    if (norm == 0.0) return true;
    return (x - frame * (frame.adjoint() * x)).norm() <= rel_tol * norm;
}

Complex evaluate(const CurvatureTensor& t, const Vector& x, const Vector& y, const Vector& u,
                 const Vector& v) {
    if (x.size() != t.n() || y.size() != t.n() || u.size() != t.r() || v.size() != t.r())
        throw ShapeError("evaluate: vector dimensions do not match tensor");
    Complex acc(0, 0);
    for (int i = 0; i < t.n(); ++i) {
        if (x(i) == Complex(0, 0)) continue;
        for (int j = 0; j < t.n(); ++j) {
            const Complex xy = x(i) * std::conj(y(j));
            if (xy == Complex(0, 0)) continue;
            Complex inner(0, 0);
            for (int a = 0; a < t.r(); ++a)
                for (int b = 0; b < t.r(); ++b) inner += t(i, j, a, b) * u(a) * std::conj(v(b));
            acc += xy * inner;
        }
    }
    return acc;
}

Matrix fiber_form(const CurvatureTensor& t, const Matrix& base_p) {
    if (base_p.rows() != t.n() || base_p.cols() != t.n())
        throw ShapeError("fiber_form: matrix must be n x n");
    Matrix m = Matrix::Zero(t.r(), t.r());
    for (int a = 0; a < t.r(); ++a)
        for (int b = 0; b < t.r(); ++b) {
            Complex acc(0, 0);
            for (int i = 0; i < t.n(); ++i)
                for (int j = 0; j < t.n(); ++j) acc += t(i, j, b, a) * base_p(i, j);
            m(a, b) = acc;
        }
    return m;
}

Matrix base_form(const CurvatureTensor& t, const Matrix& fiber_q) {
    if (fiber_q.rows() != t.r() || fiber_q.cols() != t.r())
        throw ShapeError("base_form: matrix must be r x r");
    Matrix m = Matrix::Zero(t.n(), t.n());
    for (int i = 0; i < t.n(); ++i)
        for (int j = 0; j < t.n(); ++j) {
            Complex acc(0, 0);
            for (int a = 0; a < t.r(); ++a)
                for (int b = 0; b < t.r(); ++b) acc += t(j, i, a, b) * fiber_q(a, b);
            m(i, j) = acc;
        }
    return m;
}

DirectionMatrix direction_matrix(const CurvatureTensor& t, const Vector& x) {
    if (x.size() != t.n()) throw ShapeError("direction_matrix: dimension mismatch");
    if (x.norm() == 0.0) throw ShapeError("direction_matrix: zero direction");
    return DirectionMatrix{fiber_form(t, x * x.adjoint()), false};
}

DirectionMatrix direction_matrix_sum(const CurvatureTensor& t, const Subspace& sigma) {
    if (sigma.ambient != t.n()) throw ShapeError("direction_matrix_sum: dimension mismatch");
    return DirectionMatrix{fiber_form(t, sigma.projector()), true};
}

double holo_sectional(const CurvatureTensor& t, const Vector& x) {
    if (t.r() != t.n()) throw ShapeError("holo_sectional requires fiber rank == base dimension");
    const double norm2 = x.squaredNorm();
    if (norm2 == 0.0) throw ShapeError("holo_sectional: zero direction");
    return evaluate(t, x, x, x, x).real() / (norm2 * norm2);
}

double chern_ricci(const CurvatureTensor& t, const Vector& x) {
    if (x.size() != t.n()) throw ShapeError("chern_ricci: dimension mismatch");
    if (x.norm() == 0.0) throw ShapeError("chern_ricci: zero direction");
    return fiber_form(t, x * x.adjoint()).trace().real();
}

double chern_scalar(const CurvatureTensor& t) {
    if (t.r() != t.n()) throw ShapeError("chern_scalar requires fiber rank == base dimension");
    double acc = 0.0;
    for (int i = 0; i < t.n(); ++i)
        for (int j = 0; j < t.n(); ++j) acc += t(i, i, j, j).real();
    return acc;
}

double ricci_k(const CurvatureTensor& t, const Subspace& sigma, const Vector& x) {
    if (t.r() != t.n()) throw ShapeError("ricci_k requires fiber rank == base dimension");
    if (sigma.ambient != t.n() || x.size() != t.n()) throw ShapeError("ricci_k: dimension mismatch");
    if (x.norm() == 0.0) throw ShapeError("ricci_k: zero direction");
    if (!sigma.contains(x)) throw ShapeError("ricci_k: direction not in the subspace");
    double acc = 0.0;
    for (int c = 0; c < sigma.k; ++c) {
        const Vector e = sigma.frame.col(c);
        acc += evaluate(t, x, x, e, e).real();
    }
    return acc;
}

double scalar_k(const CurvatureTensor& t, const Subspace& sigma) {
    if (t.r() != t.n()) throw ShapeError("scalar_k requires fiber rank == base dimension");
    if (sigma.ambient != t.n()) throw ShapeError("scalar_k: dimension mismatch");
    const Matrix p = sigma.projector();
    return (sigma.frame.adjoint() * fiber_form(t, p) * sigma.frame).trace().real();
}

double rc_form(const CurvatureTensor& t, const Subspace& sigma, const Vector& u) {
    if (u.size() != t.r()) throw ShapeError("rc_form: fiber vector dimension mismatch");
    const Matrix m = direction_matrix_sum(t, sigma).matrix;
    return (u.adjoint() * m * u)(0, 0).real();
}

double averaged_form(const CurvatureTensor& t, const Subspace& sigma_base,
                     const Subspace& sigma_fiber) {
    if (sigma_fiber.ambient != t.r()) throw ShapeError("averaged_form: fiber subspace mismatch");
    const Matrix m = direction_matrix_sum(t, sigma_base).matrix;
    return (sigma_fiber.frame.adjoint() * m * sigma_fiber.frame).trace().real();
}

}  // namespace chern

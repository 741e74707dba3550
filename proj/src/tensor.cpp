#include "chern/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace chern {

namespace {

std::size_t expected_size(int n, int r) {
    return static_cast<std::size_t>(n) * n * r * r;
}

/// Rewrites each Hermitian pair from its canonical half so the symmetry holds
/// bit-exactly: the mirror of (i,j,a,b) is (j,i,b,a).
void canonicalize_hermitian(int n, int r, std::vector<Complex>& e) {
    auto idx = [n, r](int i, int j, int a, int b) {
        return ((static_cast<std::size_t>(i) * n + j) * r + a) * r + b;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    const std::array<int, 4> self{i, j, a, b};
                    const std::array<int, 4> mirror{j, i, b, a};
                    if (self < mirror) {
                        e[idx(j, i, b, a)] = std::conj(e[idx(i, j, a, b)]);
                    } else if (self == mirror) {
                        e[idx(i, j, a, b)] = Complex(e[idx(i, j, a, b)].real(), 0.0);
                    }
                }
}

/// New components after the frame substitution X^i = sum_a S(i,a) Xtilde^a on
/// the base and u^alpha = sum_c U(alpha,c) utilde^c on the fiber; four
/// successive single-mode contractions.
std::vector<Complex> transform_entries(int n, int r, const std::vector<Complex>& e,
                                       const Matrix& s, const Matrix& u) {
    auto idx = [n, r](int i, int j, int a, int b) {
        return ((static_cast<std::size_t>(i) * n + j) * r + a) * r + b;
    };
    std::vector<Complex> t1(expected_size(n, r), Complex(0, 0));
    for (int a2 = 0; a2 < n; ++a2)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    Complex acc(0, 0);
                    for (int i = 0; i < n; ++i) acc += e[idx(i, j, a, b)] * s(i, a2);
                    t1[idx(a2, j, a, b)] = acc;
                }
    std::vector<Complex> t2(expected_size(n, r), Complex(0, 0));
    for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < n; ++b2)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    Complex acc(0, 0);
                    for (int j = 0; j < n; ++j) acc += t1[idx(a2, j, a, b)] * std::conj(s(j, b2));
                    t2[idx(a2, b2, a, b)] = acc;
                }
    std::vector<Complex> t3(expected_size(n, r), Complex(0, 0));
    for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < n; ++b2)
            for (int c = 0; c < r; ++c)
                for (int b = 0; b < r; ++b) {
                    Complex acc(0, 0);
                    for (int a = 0; a < r; ++a) acc += t2[idx(a2, b2, a, b)] * u(a, c);
                    t3[idx(a2, b2, c, b)] = acc;
                }
    std::vector<Complex> t4(expected_size(n, r), Complex(0, 0));
    for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < n; ++b2)
            for (int c = 0; c < r; ++c)
                for (int d = 0; d < r; ++d) {
                    Complex acc(0, 0);
                    for (int b = 0; b < r; ++b) acc += t3[idx(a2, b2, c, b)] * std::conj(u(b, d));
                    t4[idx(a2, b2, c, d)] = acc;
                }
    return t4;
}

/// Hermitian inverse square root; throws MetricError unless positive definite.
Matrix inverse_sqrt(const Matrix& gram, const char* which) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const auto& vals = es.eigenvalues();
    if (vals.minCoeff() <= 0.0)
        throw MetricError(std::string("metric not positive definite: ") + which);
    Eigen::VectorXd inv = vals.array().rsqrt();
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CurvatureTensor::CurvatureTensor(int n, int r, std::vector<Complex> entries, bool ckl)
    : n_(n), r_(r), ckl_(ckl), entries_(std::move(entries)) {
    if (n < 1 || r < 1) throw ShapeError("tensor dimensions must be positive");
    if (entries_.size() != expected_size(n, r))
        throw ShapeError("entry count does not match n^2 * r^2");
    if (ckl && r != n) throw ShapeError("ckl flag requires fiber rank == base dimension");
    for (const Complex& z : entries_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ShapeError("tensor entries must be finite");
}

CurvatureTensor CurvatureTensor::zeros(int n, int r, bool ckl) {
    return CurvatureTensor(n, r, std::vector<Complex>(expected_size(n, r), Complex(0, 0)), ckl);
}

double CurvatureTensor::max_abs() const {
    double m = 0.0;
    for (const Complex& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

CurvatureTensor CurvatureTensor::with_ckl_flag(bool flag) const {
    return CurvatureTensor(n_, r_, entries_, flag);
}

double default_symmetry_tol(const CurvatureTensor& t) {
    return 1e-9 * t.max_abs();
}

SymmetryCheck check_hermitian(const CurvatureTensor& t, double tol) {
    double worst = 0.0;
    for (int i = 0; i < t.n(); ++i)
        for (int j = 0; j < t.n(); ++j)
            for (int a = 0; a < t.r(); ++a)
                for (int b = 0; b < t.r(); ++b)
                    worst = std::max(worst, std::abs(t(i, j, a, b) - std::conj(t(j, i, b, a))));
    return {worst <= tol, worst};
}

SymmetryCheck check_ckl(const CurvatureTensor& t, double tol) {
    if (t.r() != t.n()) throw ShapeError("check_ckl requires fiber rank == base dimension");
    const int n = t.n();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    worst = std::max(worst, std::abs(t(i, j, k, l) - t(k, j, i, l)));
                    // follows from the first relation plus Hermitian symmetry
                    worst = std::max(worst, std::abs(t(i, j, k, l) - t(i, l, k, j)));
                }
    return {worst <= tol, worst};
}

CurvatureTensor project_to_hermitian(int n, int r, const std::vector<Complex>& raw) {
    if (raw.size() != expected_size(n, r)) throw ShapeError("raw entry count mismatch");
    auto idx = [n, r](int i, int j, int a, int b) {
        return ((static_cast<std::size_t>(i) * n + j) * r + a) * r + b;
    };
    std::vector<Complex> out(raw.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    out[idx(i, j, a, b)] =
                        0.5 * (raw[idx(i, j, a, b)] + std::conj(raw[idx(j, i, b, a)]));
    canonicalize_hermitian(n, r, out);
    return CurvatureTensor(n, r, std::move(out));
}

CurvatureTensor project_to_ckl(int n, const std::vector<Complex>& raw) {
    if (raw.size() != expected_size(n, n)) throw ShapeError("raw entry count mismatch");
    auto idx = [n](int i, int j, int a, int b) {
        return ((static_cast<std::size_t>(i) * n + j) * n + a) * n + b;
    };
    // Average over the order-8 group generated by the 1<->3 index swap, the
    // 2<->4 index swap, and the antilinear Hermitian flip.
    std::vector<Complex> out(raw.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Complex acc = raw[idx(i, j, a, b)] + raw[idx(a, j, i, b)] +
                                  raw[idx(i, b, a, j)] + raw[idx(a, b, i, j)];
                    acc += std::conj(raw[idx(j, i, b, a)] + raw[idx(b, i, j, a)] +
                                     raw[idx(j, a, b, i)] + raw[idx(b, a, j, i)]);
                    out[idx(i, j, a, b)] = acc / 8.0;
                }
    canonicalize_hermitian(n, n, out);
    return CurvatureTensor(n, n, std::move(out), /*ckl=*/true);
}

CurvatureTensor project_to_ckl(const CurvatureTensor& t) {
    if (t.r() != t.n()) throw ShapeError("project_to_ckl requires fiber rank == base dimension");
    return project_to_ckl(t.n(), t.entries());
}

CurvatureTensor dual_tensor(const CurvatureTensor& t) {
    const int n = t.n(), r = t.r();
    std::vector<Complex> out(expected_size(n, r));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    out[t.index(i, j, a, b)] = -t(i, j, b, a);
    return CurvatureTensor(n, r, std::move(out), t.ckl());
}

CurvatureTensor scaled(const CurvatureTensor& t, double factor) {
    std::vector<Complex> out = t.entries();
    for (Complex& z : out) z *= factor;
    return CurvatureTensor(t.n(), t.r(), std::move(out), t.ckl());
}

CurvatureTensor conjugate_frames(const CurvatureTensor& t, const Matrix& base_u,
                                 const Matrix& fiber_u) {
    if (base_u.rows() != t.n() || base_u.cols() != t.n() || fiber_u.rows() != t.r() ||
        fiber_u.cols() != t.r())
        throw ShapeError("frame change matrices must be n x n and r x r");
    std::vector<Complex> out = transform_entries(t.n(), t.r(), t.entries(), base_u, fiber_u);
    canonicalize_hermitian(t.n(), t.r(), out);
    return CurvatureTensor(t.n(), t.r(), std::move(out), t.ckl());
}

CurvatureTensor normalize_to_unitary(const FrameData& data) {
    const int n = static_cast<int>(data.gram_base.rows());
    const int r = static_cast<int>(data.gram_fiber.rows());
    if (data.gram_base.cols() != n || data.gram_fiber.cols() != r)
        throw ShapeError("gram matrices must be square");
    if (data.raw.size() != expected_size(n, r)) throw ShapeError("raw entry count mismatch");

    if (data.gram_base.isIdentity(0.0) && data.gram_fiber.isIdentity(0.0))
        return CurvatureTensor(n, r, data.raw);

    // New frame vectors f_a = sum_i S(i,a) e_i with S = conj(G^{-1/2}) turn
    // the Gram matrix G into the identity; same on the fiber.
    const Matrix s = inverse_sqrt(data.gram_base, "base").conjugate();
    const Matrix u = inverse_sqrt(data.gram_fiber, "fiber").conjugate();
    return CurvatureTensor(n, r, transform_entries(n, r, data.raw, s, u));
}

}  // namespace chern

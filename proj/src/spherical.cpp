#include "chern/spherical.hpp"

#include <cmath>

namespace chern {

double sphere_volume(int k) {
    if (k < 1) throw ShapeError("sphere_volume: k must be positive");
    double v = 2.0 * std::pow(M_PI, k);
    for (int i = 2; i < k; ++i) v /= static_cast<double>(i);
    return v;
}

SphericalEstimate mc_sphere_average(const std::function<Complex(const Vector&)>& f,
                                    const Subspace& sigma, long samples, std::uint64_t seed) {
    if (samples < 1) throw ShapeError("mc_sphere_average: samples must be >= 1");
    const double volume = sphere_volume(sigma.k);
    Rng rng(seed);
    Complex sum(0, 0);
    std::vector<Complex> values;
    values.reserve(static_cast<std::size_t>(samples));
    for (long s = 0; s < samples; ++s) {
        const Vector y = rng.unit_vector(sigma.k);
        const Complex fy = f(sigma.frame * y);
        values.push_back(fy);
        sum += fy;
    }
    const Complex mean = sum / static_cast<double>(samples);
    double var = 0.0;
    if (samples > 1) {
        for (const Complex& v : values) var += std::norm(v - mean);
        var /= static_cast<double>(samples - 1);
    }
    SphericalEstimate est;
    est.value = volume * mean;
    est.stderr_value = volume * std::sqrt(var / static_cast<double>(samples));
    est.samples = samples;
    est.seed = seed;
    return est;
}

Complex closed_form_average_quadratic(const Matrix& coeffs) {
    if (coeffs.rows() != coeffs.cols() || coeffs.rows() < 1)
        throw ShapeError("closed_form_average_quadratic: coefficients must be square");
    const int k = static_cast<int>(coeffs.rows());
    return sphere_volume(k) / static_cast<double>(k) * coeffs.trace();
}

Complex closed_form_average_quartic(int k, const std::vector<Complex>& coeffs) {
    if (k < 1) throw ShapeError("closed_form_average_quartic: k must be positive");
    if (coeffs.size() != static_cast<std::size_t>(k) * k * k * k)
        throw ShapeError("closed_form_average_quartic: coefficient count mismatch");
    auto idx = [k](int i, int j, int r, int s) {
        return ((static_cast<std::size_t>(i) * k + j) * k + r) * k + s;
    };
    Complex acc(0, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) acc += coeffs[idx(i, i, j, j)] + coeffs[idx(i, j, j, i)];
    return sphere_volume(k) / (static_cast<double>(k) * (k + 1)) * acc;
}

double integral_rc_form(const CurvatureTensor& t, const Subspace& sigma, const Vector& u) {
    if (u.size() != t.r()) throw ShapeError("integral_rc_form: fiber vector mismatch");
    if (sigma.ambient != t.n()) throw ShapeError("integral_rc_form: subspace mismatch");
    const int k = sigma.k;
    Matrix coeffs(k, k);
    for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d)
            coeffs(c, d) = evaluate(t, sigma.frame.col(c), sigma.frame.col(d), u, u);
    const Complex integral = closed_form_average_quadratic(coeffs);
    return (static_cast<double>(k) / sphere_volume(k)) * integral.real();
}

double integral_ricci_k(const CurvatureTensor& t, const Subspace& sigma, const Vector& x) {
    if (t.r() != t.n()) throw ShapeError("integral_ricci_k requires fiber rank == base dimension");
    if (x.norm() == 0.0) throw ShapeError("integral_ricci_k: zero direction");
    if (!sigma.contains(x)) throw ShapeError("integral_ricci_k: direction not in the subspace");
    const int k = sigma.k;
    Matrix coeffs(k, k);
    for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d)
            coeffs(c, d) = evaluate(t, x, x, sigma.frame.col(c), sigma.frame.col(d));
    const Complex integral = closed_form_average_quadratic(coeffs);
    return (static_cast<double>(k) / sphere_volume(k)) * integral.real();
}

double integral_scalar_k(const CurvatureTensor& t, const Subspace& sigma) {
    if (t.r() != t.n()) throw ShapeError("integral_scalar_k requires fiber rank == base dimension");
    if (!t.ckl()) throw HypothesisError("integral_scalar_k is only valid for CKL tensors");
    if (sigma.ambient != t.n()) throw ShapeError("integral_scalar_k: subspace mismatch");
    const int k = sigma.k;
    std::vector<Complex> coeffs(static_cast<std::size_t>(k) * k * k * k);
    auto idx = [k](int i, int j, int r, int s) {
        return ((static_cast<std::size_t>(i) * k + j) * k + r) * k + s;
    };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int r = 0; r < k; ++r)
                for (int s = 0; s < k; ++s)
                    coeffs[idx(i, j, r, s)] = evaluate(t, sigma.frame.col(i), sigma.frame.col(j),
                                                       sigma.frame.col(r), sigma.frame.col(s));
    const Complex integral = closed_form_average_quartic(k, coeffs);
    const double factor = static_cast<double>(k) * (k + 1) / (2.0 * sphere_volume(k));
    return factor * integral.real();
}

}  // namespace chern

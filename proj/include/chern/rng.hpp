#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace chern {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Seeded random source with a fixed, platform-independent output sequence.
///
/// std::mt19937_64 is bit-reproducible by the standard; the distributions are
/// not, so normal variates are produced here via Box-Muller on raw uniforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Complex normal with unit variance (re, im ~ N(0, 1/2)).
    Complex complex_normal() {
        const double scale = M_SQRT1_2;
        const double re = normal();
        const double im = normal();
        return {scale * re, scale * im};
    }

    /// Uniform point on the unit sphere of C^n.
    Vector unit_vector(int n) {
        Vector v(n);
        double norm = 0.0;
        do {
            for (int i = 0; i < n; ++i) v(i) = complex_normal();
            norm = v.norm();
        } while (norm < 1e-12);
        return v / norm;
    }

    /// Haar-uniform n x k orthonormal frame (QR of a Gaussian matrix with the
    /// R-diagonal phase fixed, which makes the draw unique and unbiased).
    Matrix haar_frame(int n, int k) {
        Matrix g(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) g(i, j) = complex_normal();
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ() * Matrix::Identity(n, k);
        const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        for (int j = 0; j < k; ++j) {
            const Complex d = r(j, j);
            const double m = std::abs(d);
            if (m > 0.0) q.col(j) *= d / m;
        }
        return q;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Independent substream: mixes (seed, index) through splitmix64.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace chern

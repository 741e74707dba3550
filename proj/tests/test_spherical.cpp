#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chern/models.hpp"
#include "chern/spherical.hpp"
#include "test_support.hpp"

using namespace chern;
using test_support::close;

TEST_CASE("sphere_volume closed form") {
    CHECK(sphere_volume(1) == doctest::Approx(2.0 * M_PI));
    CHECK(sphere_volume(2) == doctest::Approx(2.0 * M_PI * M_PI));
    CHECK(sphere_volume(3) == doctest::Approx(std::pow(M_PI, 3)));
    CHECK_THROWS_AS(sphere_volume(0), ShapeError);
}

TEST_CASE("mc_sphere_average basics") {
    const Subspace sigma = Subspace::full(2);
    const auto constant =
        mc_sphere_average([](const Vector&) { return Complex(1, 0); }, sigma, 1000, 3);
    CHECK(close(constant.value, Complex(sphere_volume(2), 0), 1e-10));
    CHECK(constant.stderr_value <= 1e-12);

    // deterministic in the seed
    const auto f = [](const Vector& y) { return y(0) * std::conj(y(1)); };
    const auto a = mc_sphere_average(f, sigma, 5000, 7);
    const auto b = mc_sphere_average(f, sigma, 5000, 7);
    CHECK(a.value == b.value);
    CHECK(a.stderr_value == b.stderr_value);

    CHECK_THROWS_AS(mc_sphere_average(f, sigma, 0, 1), ShapeError);
}

TEST_CASE("quadratic moments match the closed form within 4 standard errors") {
    for (int k = 1; k <= 4; ++k) {
        const Subspace sigma = Subspace::full(k);
        const double volume = sphere_volume(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const auto est = mc_sphere_average(
                    [i, j](const Vector& y) { return y(i) * std::conj(y(j)); }, sigma, 20000,
                    derive_seed(100, 100 * k + 10 * i + j));
                const Complex exact = i == j ? Complex(volume / k, 0) : Complex(0, 0);
                CHECK(std::abs(est.value - exact) <= 4.0 * est.stderr_value + 1e-12);
            }
    }
}

TEST_CASE("quartic moments match the closed form within 4 standard errors") {
    for (int k = 1; k <= 4; ++k) {
        const Subspace sigma = Subspace::full(k);
        const double volume = sphere_volume(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                for (int r = 0; r < k; ++r)
                    for (int s = 0; s < k; ++s) {
                        const auto est = mc_sphere_average(
                            [i, j, r, s](const Vector& y) {
                                return y(i) * std::conj(y(j)) * y(r) * std::conj(y(s));
                            },
                            sigma, 20000,
                            derive_seed(200, 1000 * k + 100 * i + 10 * j + 3 * r + s));
                        const double kron =
                            (i == j && r == s ? 1.0 : 0.0) + (i == s && r == j ? 1.0 : 0.0);
                        const Complex exact(kron * volume / (static_cast<double>(k) * (k + 1)), 0);
                        CHECK(std::abs(est.value - exact) <= 4.0 * est.stderr_value + 1e-12);
                    }
    }
}

TEST_CASE("specific moment golden values") {
    const Subspace sigma = Subspace::full(2);
    const double volume = sphere_volume(2);

    const auto mixed = mc_sphere_average(
        [](const Vector& y) { return y(0) * std::conj(y(1)); }, sigma, 100000, 11);
    CHECK(std::abs(mixed.value) <= 4.0 * mixed.stderr_value);

    const auto quartic = mc_sphere_average(
        [](const Vector& y) { return Complex(std::norm(y(0)) * std::norm(y(0)), 0); }, sigma,
        100000, 12);
    CHECK(std::abs(quartic.value - Complex(volume / 3.0, 0)) <= 4.0 * quartic.stderr_value);
}

TEST_CASE("closed-form quadratic average") {
    CHECK(close(closed_form_average_quadratic(Matrix::Identity(3, 3)),
                Complex(sphere_volume(3), 0), 1e-12));

    Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const int k = 2 + trial % 3;
        Matrix coeffs(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) coeffs(i, j) = rng.complex_normal();
        const Complex exact = closed_form_average_quadratic(coeffs);
        const auto est = mc_sphere_average(
            [&coeffs](const Vector& y) {
                Complex acc(0, 0);
                for (int i = 0; i < coeffs.rows(); ++i)
                    for (int j = 0; j < coeffs.cols(); ++j)
                        acc += coeffs(i, j) * y(i) * std::conj(y(j));
                return acc;
            },
            Subspace::full(k), 40000, derive_seed(300, trial));
        CHECK(std::abs(est.value - exact) <= 4.0 * est.stderr_value + 1e-12);
    }
}

TEST_CASE("closed-form quartic average") {
    {  // G(1,1,1,1) = 1 alone at k = 2 integrates to V/3
        std::vector<Complex> coeffs(16, Complex(0, 0));
        coeffs[0] = Complex(1, 0);
        CHECK(close(closed_form_average_quartic(2, coeffs),
                    Complex(sphere_volume(2) / 3.0, 0), 1e-12));
    }

    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const int k = 2 + trial % 2;
        std::vector<Complex> coeffs(static_cast<std::size_t>(k) * k * k * k);
        for (Complex& z : coeffs) z = rng.complex_normal();
        const Complex exact = closed_form_average_quartic(k, coeffs);
        auto idx = [k](int i, int j, int r, int s) {
            return ((static_cast<std::size_t>(i) * k + j) * k + r) * k + s;
        };
        const auto est = mc_sphere_average(
            [&](const Vector& y) {
                Complex acc(0, 0);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        for (int r = 0; r < k; ++r)
                            for (int s = 0; s < k; ++s)
                                acc += coeffs[idx(i, j, r, s)] * y(i) * std::conj(y(j)) * y(r) *
                                       std::conj(y(s));
                return acc;
            },
            Subspace::full(k), 60000, derive_seed(400, trial));
        CHECK(std::abs(est.value - exact) <= 4.0 * est.stderr_value + 1e-12);
    }

    CHECK_THROWS_AS(closed_form_average_quartic(2, std::vector<Complex>(7)), ShapeError);
}

TEST_CASE("integral forms agree with the direct functionals") {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        const CurvatureTensor t = random_hermitian(n, n, derive_seed(500, trial));
        const int k = 1 + trial % n;
        const Subspace sigma = Subspace::haar(n, k, rng);
        const Vector u = rng.unit_vector(n);
        CHECK(close(integral_rc_form(t, sigma, u), rc_form(t, sigma, u), 1e-10));

        const Vector x = sigma.frame * rng.unit_vector(k);
        CHECK(close(integral_ricci_k(t, sigma, x), ricci_k(t, sigma, x), 1e-10));

        const CurvatureTensor ckl = random_ckl(n, derive_seed(600, trial));
        CHECK(close(integral_scalar_k(ckl, sigma), scalar_k(ckl, sigma), 1e-10));
    }
}

TEST_CASE("integral_scalar_k golden value and CKL precondition") {
    const CurvatureTensor fs = fubini_study(4, 2.0);
    Rng rng(51);
    for (int k = 1; k <= 4; ++k) {
        const Subspace sigma = Subspace::haar(4, k, rng);
        CHECK(close(integral_scalar_k(fs, sigma), k * (k + 1.0), 1e-10));
    }

    const CurvatureTensor zero = CurvatureTensor::zeros(3, 3).with_ckl_flag(true);
    CHECK(integral_scalar_k(zero, Subspace::full(3)) == 0.0);

    const CurvatureTensor plain = random_hermitian(3, 3, 52);
    CHECK_THROWS_AS(integral_scalar_k(plain, Subspace::full(3)), HypothesisError);
}

TEST_CASE("sampled positive S_k propagates to S_{k+1} on CKL tensors") {
    // small empirical version of the monotonicity consequence
    Rng rng(61);
    int found = 0;
    for (std::uint64_t seed = 0; seed < 40 && found < 5; ++seed) {
        const CurvatureTensor t = shifted_positive(3, derive_seed(700, seed), 2.0);
        double min_s1 = 1e300;
        for (int s = 0; s < 200; ++s)
            min_s1 = std::min(min_s1, scalar_k(t, Subspace::haar(3, 1, rng)));
        if (min_s1 <= 0.1) continue;
        ++found;
        double min_s2 = 1e300;
        for (int s = 0; s < 200; ++s)
            min_s2 = std::min(min_s2, scalar_k(t, Subspace::haar(3, 2, rng)));
        CHECK(min_s2 > 0.0);
    }
    CHECK(found > 0);
}

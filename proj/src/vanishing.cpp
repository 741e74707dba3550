#include "chern/vanishing.hpp"

#include <cmath>

#include "chern/spherical.hpp"

namespace chern {

namespace {

/// Extreme eigenvalue of the single-direction form over unit X: Riemannian
/// optimization on the sphere (Gr_1) with a seeded random-sample floor.
double direction_eigen_extremum(const CurvatureTensor& t, bool largest,
                                const OptimizeOptions& options, long sample_floor) {
    EigenSumObjective objective(t, EigenSumObjective::Side::base, 1, !largest);
    OptimizeOptions opts = options;
    opts.maximize = largest;
    const OptimizeResult res = optimize_subspace(objective, t.n(), 1, opts);
    double best = res.value;
    Rng rng(derive_seed(options.seed, largest ? 0x6D6178ULL : 0x6D696EULL));
    for (long s = 0; s < sample_floor; ++s) {
        Matrix frame(t.n(), 1);
        frame.col(0) = rng.unit_vector(t.n());
        const double v = objective.value(frame);
        if (largest ? v > best : v < best) best = v;
    }
    return best;
}

}  // namespace

VanishingConstants compute_constants(const std::vector<CurvatureTensor>& e_points,
                                     const std::vector<CurvatureTensor>* f_points, int k,
                                     const OptimizeOptions& options, long sample_floor) {
    if (e_points.empty()) throw ShapeError("compute_constants: need at least one point");
    if (f_points && f_points->size() != e_points.size())
        throw ShapeError("compute_constants: E and F point lists must be aligned");

    const PositivityCertificate cert =
        certify(e_points, PositivityKind::uniform_rc, k, 1, options);
    if (!cert.positive)
        throw HypothesisError("compute_constants: bundle is not uniformly RC k-positive "
                              "at the supplied points");

    VanishingConstants consts;
    consts.k = k;
    consts.C = cert.value;
    for (std::size_t p = 0; p < e_points.size(); ++p) {
        OptimizeOptions opts = options;
        opts.seed = derive_seed(options.seed, 0x6C616DULL + p);
        const double lmax = direction_eigen_extremum(e_points[p], true, opts, sample_floor);
        const double lmin = direction_eigen_extremum(e_points[p], false, opts, sample_floor);
        if (p == 0 || lmax > consts.lambda_max) consts.lambda_max = lmax;
        if (p == 0 || lmin < consts.lambda_min) consts.lambda_min = lmin;
    }
    if (f_points) {
        for (std::size_t p = 0; p < f_points->size(); ++p) {
            OptimizeOptions opts = options;
            opts.seed = derive_seed(options.seed, 0x6D75ULL + p);
            const double mmax = direction_eigen_extremum((*f_points)[p], true, opts, sample_floor);
            const double mmin = direction_eigen_extremum((*f_points)[p], false, opts, sample_floor);
            if (!consts.mu_max || mmax > *consts.mu_max) consts.mu_max = mmax;
            if (!consts.mu_min || mmin < *consts.mu_min) consts.mu_min = mmin;
        }
    }
    consts.C1 = static_cast<double>(k) * consts.lambda_max / consts.C;
    const double mu_max = consts.mu_max.value_or(0.0);
    consts.C2 = mu_max > 0.0 ? static_cast<double>(k) * mu_max / consts.C : 1.0;
    return consts;
}

bool vanishing_region(const VanishingConstants& consts, long p, long q, long m) {
    return static_cast<double>(q) >
           consts.C1 * static_cast<double>(p) + consts.C2 * static_cast<double>(m);
}

std::vector<double> induced_action_spectrum(const std::vector<double>& lambdas,
                                            const std::vector<double>& mus, int p, int q, int m) {
    if (p < 0 || q < 0 || m < 0) throw ShapeError("induced_action_spectrum: negative power");
    const std::size_t r1 = lambdas.size();
    const std::size_t r2 = mus.size();
    if (p + q > 0 && r1 == 0)
        throw ShapeError("induced_action_spectrum: empty lambda list with p + q > 0");
    if (m > 0 && r2 == 0) throw ShapeError("induced_action_spectrum: empty mu list with m > 0");

    double total_d = 1.0;
    for (int s = 0; s < p + q; ++s) total_d *= static_cast<double>(r1);
    for (int s = 0; s < m; ++s) total_d *= static_cast<double>(r2);
    if (total_d > 1e5) throw ShapeError("induced_action_spectrum: tensor power too large");
    const std::size_t total = static_cast<std::size_t>(total_d);

    const int slots = p + q + m;
    std::vector<double> out;
    out.reserve(total);
    std::vector<std::size_t> odo(static_cast<std::size_t>(slots), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        double acc = 0.0;
        for (int s = 0; s < slots; ++s) {
            if (s < p)
                acc += lambdas[odo[s]];
            else if (s < p + q)
                acc -= lambdas[odo[s]];
            else
                acc += mus[odo[s]];
        }
        out.push_back(acc);
        for (int s = slots - 1; s >= 0; --s) {  // first slot slowest
            const std::size_t radix = s < p + q ? r1 : r2;
            if (++odo[s] < radix) break;
            odo[s] = 0;
        }
    }
    return out;
}

namespace {

/// Applies an r x r matrix to one tensor slot of a flat coefficient vector
/// laid out with the first slot slowest.
std::vector<Complex> apply_to_slot(const std::vector<Complex>& coeffs, const Matrix& a, int slot,
                                   const std::vector<int>& radices) {
    std::size_t stride = 1;
    for (std::size_t s = slot + 1; s < radices.size(); ++s) stride *= radices[s];
    const std::size_t radix = radices[slot];
    const std::size_t block = stride * radix;
    std::vector<Complex> out(coeffs.size(), Complex(0, 0));
    for (std::size_t base = 0; base < coeffs.size(); base += block)
        for (std::size_t inner = 0; inner < stride; ++inner)
            for (std::size_t mo = 0; mo < radix; ++mo) {
                Complex acc(0, 0);
                for (std::size_t old = 0; old < radix; ++old)
                    acc += a(static_cast<int>(mo), static_cast<int>(old)) *
                           coeffs[base + old * stride + inner];
                out[base + mo * stride + inner] = acc;
            }
    return out;
}

}  // namespace

EstimateBoundReport verify_estimate_bound(const CurvatureTensor& e_bundle,
                                          const CurvatureTensor& f_bundle, const Subspace& sigma,
                                          const std::vector<Complex>& coeffs, int p, int q, int m,
                                          const VanishingConstants& consts) {
    if (e_bundle.n() != f_bundle.n())
        throw ShapeError("verify_estimate_bound: bundles live over different base dimensions");
    if (sigma.ambient != e_bundle.n())
        throw ShapeError("verify_estimate_bound: witness subspace dimension mismatch");
    if (p < 0 || q < 0 || m < 0) throw ShapeError("verify_estimate_bound: negative power");
    if (m > 0 && !consts.mu_max)
        throw ShapeError("verify_estimate_bound: constants lack mu_max but m > 0");

    const int r1 = e_bundle.r();
    const int r2 = f_bundle.r();
    std::vector<int> radices;
    for (int s = 0; s < p + q; ++s) radices.push_back(r1);
    for (int s = 0; s < m; ++s) radices.push_back(r2);
    std::size_t expected = 1;
    for (int rad : radices) expected *= static_cast<std::size_t>(rad);
    if (coeffs.size() != expected)
        throw ShapeError("verify_estimate_bound: coefficient count mismatch");

    const int k = sigma.k;
    const double volume = sphere_volume(k);

    const Matrix form_e = fiber_form(e_bundle, sigma.projector());
    Eigen::SelfAdjointEigenSolver<Matrix> es_e(form_e);
    if (es_e.eigenvalues()(0) < consts.C - 1e-9)
        throw HypothesisError("verify_estimate_bound: sigma is not a certificate witness");
    const Matrix form_f = fiber_form(f_bundle, sigma.projector());
    Eigen::SelfAdjointEigenSolver<Matrix> es_f(form_f);

    // rotate the coefficients into the eigenbases: vector slots with W^H,
    // dual slots with W^T
    std::vector<Complex> rotated = coeffs;
    const Matrix we_h = es_e.eigenvectors().adjoint();
    const Matrix we_t = es_e.eigenvectors().transpose();
    const Matrix wf_h = es_f.eigenvectors().adjoint();
    for (int s = 0; s < p; ++s) rotated = apply_to_slot(rotated, we_h, s, radices);
    for (int s = p; s < p + q; ++s) rotated = apply_to_slot(rotated, we_t, s, radices);
    for (int s = p + q; s < p + q + m; ++s) rotated = apply_to_slot(rotated, wf_h, s, radices);

    const std::vector<double> nu(es_e.eigenvalues().data(), es_e.eigenvalues().data() + r1);
    const std::vector<double> eta(es_f.eigenvalues().data(), es_f.eigenvalues().data() + r2);
    const std::vector<double> weights = induced_action_spectrum(nu, eta, p, q, m);

    double lhs_sum = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < rotated.size(); ++i) {
        const double w2 = std::norm(rotated[i]);
        lhs_sum += w2 * weights[i];
        norm2 += w2;
    }

    EstimateBoundReport report;
    report.p = p;
    report.q = q;
    report.m = m;
    report.tensor_norm2 = norm2;
    report.lhs = volume / static_cast<double>(k) * lhs_sum;
    const double mu_max = consts.mu_max.value_or(0.0);
    report.rhs = (consts.lambda_max * p - consts.C / static_cast<double>(k) * q + mu_max * m) *
                 volume * norm2;
    report.holds = report.lhs <= report.rhs + 1e-9 * std::abs(report.rhs);
    return report;
}

}  // namespace chern

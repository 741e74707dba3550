#include "chern/grassmann.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace chern {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eigen_of(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    return es;
}

InnerOptimum eigen_tail_sum(const DirectionMatrix& a, int l, bool smallest) {
    const int r = static_cast<int>(a.matrix.rows());
    if (l < 1 || l > r) throw ShapeError("inner optimum: subspace dimension out of range");
    const auto es = eigen_of(a.matrix);
    double value = 0.0;
    Matrix frame(r, l);
    for (int m = 0; m < l; ++m) {
        const int pick = smallest ? m : r - l + m;
        value += es.eigenvalues()(pick);
        frame.col(m) = es.eigenvectors().col(pick);
    }
    return InnerOptimum{value, Subspace{r, l, frame}};
}

/// QR with column phases fixed so the retraction is continuous in the input.
Matrix orthonormalize(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    const int k = static_cast<int>(m.cols());
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ() * Matrix::Identity(n, k);
    const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

Matrix tangent_project(const Matrix& frame, const Matrix& g) {
    return g - frame * (frame.adjoint() * g);
}

}  // namespace

InnerOptimum inner_min_over_fibers(const DirectionMatrix& a, int l) {
    return eigen_tail_sum(a, l, /*smallest=*/true);
}

InnerOptimum inner_max_over_fibers(const DirectionMatrix& a, int l) {
    return eigen_tail_sum(a, l, /*smallest=*/false);
}

EigenSumObjective::EigenSumObjective(const CurvatureTensor& t, Side side, int count, bool smallest,
                                     double gap_tol)
    : tensor_(t), side_(side), count_(count), smallest_(smallest), gap_tol_(gap_tol) {
    const int inner_dim = side == Side::base ? t.r() : t.n();
    if (count < 1 || count > inner_dim) throw ShapeError("eigenvalue sum count out of range");
}

Matrix EigenSumObjective::form_for(const Matrix& projector) const {
    return side_ == Side::base ? fiber_form(tensor_, projector) : base_form(tensor_, projector);
}

Matrix EigenSumObjective::adjoint_form_for(const Matrix& w) const {
    return side_ == Side::base ? base_form(tensor_, w) : fiber_form(tensor_, w);
}

double EigenSumObjective::value(const Matrix& frame) const {
    const Matrix form = form_for(frame * frame.adjoint());
    const auto es = eigen_of(form);
    const int dim = static_cast<int>(form.rows());
    double acc = 0.0;
    for (int m = 0; m < count_; ++m) acc += es.eigenvalues()(smallest_ ? m : dim - count_ + m);
    return acc;
}

std::optional<Matrix> EigenSumObjective::euclidean_gradient(const Matrix& frame) const {
    const Matrix form = form_for(frame * frame.adjoint());
    const auto es = eigen_of(form);
    const int dim = static_cast<int>(form.rows());
    if (count_ < dim) {
        // gap at the boundary of the selected eigenvalue block
        const int lo = smallest_ ? count_ - 1 : dim - count_ - 1;
        if (es.eigenvalues()(lo + 1) - es.eigenvalues()(lo) <= gap_tol_) return std::nullopt;
    }
    Matrix w = Matrix::Zero(dim, dim);
    for (int m = 0; m < count_; ++m) {
        const int pick = smallest_ ? m : dim - count_ + m;
        w += es.eigenvectors().col(pick) * es.eigenvectors().col(pick).adjoint();
    }
    return 2.0 * adjoint_form_for(w) * frame;
}

namespace {

/// Real coordinates of the traceless part of a Hermitian c x c block:
/// first c-1 diagonal deviations from the mean, then re/im of the upper
/// triangle. Zero exactly when the block is a multiple of the identity.
Eigen::VectorXd deviatoric_coords(const Matrix& block) {
    const int c = static_cast<int>(block.rows());
    Eigen::VectorXd v(c * c - 1);
    double mean = 0.0;
    for (int i = 0; i < c; ++i) mean += block(i, i).real();
    mean /= c;
    int at = 0;
    for (int i = 0; i + 1 < c; ++i) v(at++) = block(i, i).real() - mean;
    for (int i = 0; i < c; ++i)
        for (int j = i + 1; j < c; ++j) {
            v(at++) = block(i, j).real();
            v(at++) = block(i, j).imag();
        }
    return v;
}

}  // namespace

std::optional<SubspaceObjective::Polished> EigenSumObjective::polish(const Matrix& frame0,
                                                                     double value0,
                                                                     bool maximize) const {
    if (count_ != 1) return std::nullopt;
    // only the directions that push toward an eigenvalue crossing need this:
    // maximizing the smallest eigenvalue or minimizing the largest
    if (maximize != smallest_) return std::nullopt;
    const int n = static_cast<int>(frame0.rows());
    const int k = static_cast<int>(frame0.cols());
    if (n == k) return std::nullopt;
    const double sign = maximize ? 1.0 : -1.0;

    Matrix frame = frame0;
    double best = value0;
    bool any = false;

    for (int round = 0; round < 100; ++round) {
        // work on the matrix whose smallest eigenvalue we are maximizing
        Matrix ms = form_for(frame * frame.adjoint());
        if (!smallest_) ms = -ms;
        const auto es = eigen_of(ms);
        const int dim = static_cast<int>(ms.rows());
        const double scale = std::max(std::abs(es.eigenvalues()(0)),
                                      std::abs(es.eigenvalues()(dim - 1)));
        // generous detection: equalization steps are only ever accepted when
        // they improve the true objective, so overshooting costs nothing
        int cluster = 1;
        while (cluster < dim &&
               es.eigenvalues()(cluster) - es.eigenvalues()(0) <= 1e-3 * std::max(1.0, scale))
            ++cluster;
        if (cluster < 2) break;  // smooth point, gradient ascent handles it
        const Matrix w = es.eigenvectors().leftCols(cluster);

        // tangent basis of the Grassmannian at the current frame
        Eigen::HouseholderQR<Matrix> qr(frame);
        const Matrix comp = Matrix(qr.householderQ()).rightCols(n - k);
        const int dirs = 2 * k * (n - k);
        std::vector<Matrix> xi;
        xi.reserve(dirs);
        for (int b = 0; b < n - k; ++b)
            for (int c = 0; c < k; ++c)
                for (int part = 0; part < 2; ++part) {
                    Matrix d = Matrix::Zero(n, k);
                    d.col(c) = (part == 0 ? Complex(1, 0) : Complex(0, 1)) * comp.col(b);
                    xi.push_back(std::move(d));
                }

        // exact first-order block data: B(delta) = W^H ms(P(delta)) W
        const int vdim = cluster * cluster - 1;
        Eigen::VectorXd v0 = deviatoric_coords(w.adjoint() * ms * w);
        Eigen::MatrixXd jac(vdim, dirs);
        Eigen::VectorXd trace_grad(dirs);
        for (int t = 0; t < dirs; ++t) {
            const Matrix dp = xi[t] * frame.adjoint() + frame * xi[t].adjoint();
            Matrix dm = form_for(dp);
            if (!smallest_) dm = -dm;
            const Matrix db = w.adjoint() * dm * w;
            jac.col(t) = deviatoric_coords(db);
            trace_grad(t) = db.trace().real() / cluster;
        }

        // Gauss-Newton feasibility step onto the crossing manifold plus an
        // ascent step along its null space
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);
        const Eigen::VectorXd feas = cod.solve(-v0);
        Eigen::VectorXd tan = trace_grad - cod.solve(jac * trace_grad);
        const double tnorm = tan.norm();
        if (tnorm > 0.0) tan /= tnorm;

        const auto try_coeffs = [&](const Eigen::VectorXd& coeffs) {
            Matrix direction = Matrix::Zero(n, k);
            for (int t = 0; t < dirs; ++t) direction += coeffs(t) * xi[t];
            const Matrix candidate = orthonormalize(frame + direction);
            const double candidate_value = value(candidate);
            if (sign * (candidate_value - best) > 0.0) {
                frame = candidate;
                best = candidate_value;
                return true;
            }
            return false;
        };

        bool improved = false;
        for (double s = 1.0; s >= 1e-12 && !improved; s *= 0.5)
            improved = try_coeffs(feas + s * tan);
        for (double s = 1.0; s >= 1e-12 && !improved; s *= 0.5)
            improved = try_coeffs(s * feas);
        if (!improved) break;
        any = true;
    }

    if (!any) return std::nullopt;
    return Polished{frame, best};
}

ScalarKObjective::ScalarKObjective(const CurvatureTensor& t) : tensor_(t) {
    if (t.r() != t.n()) throw ShapeError("scalar_k objective requires fiber rank == base dimension");
}

double ScalarKObjective::value(const Matrix& frame) const {
    const Matrix p = frame * frame.adjoint();
    return (frame.adjoint() * fiber_form(tensor_, p) * frame).trace().real();
}

std::optional<Matrix> ScalarKObjective::euclidean_gradient(const Matrix& frame) const {
    const Matrix p = frame * frame.adjoint();
    return 2.0 * (base_form(tensor_, p) + fiber_form(tensor_, p)) * frame;
}

RicciKMinObjective::RicciKMinObjective(const CurvatureTensor& t, double gap_tol)
    : tensor_(t), gap_tol_(gap_tol) {
    if (t.r() != t.n())
        throw ShapeError("ricci_k objective requires fiber rank == base dimension");
}

double RicciKMinObjective::value(const Matrix& frame) const {
    const Matrix n = base_form(tensor_, frame * frame.adjoint());
    const Matrix compressed = frame.adjoint() * n * frame;
    return eigen_of(compressed).eigenvalues()(0);
}

std::optional<Matrix> RicciKMinObjective::euclidean_gradient(const Matrix& frame) const {
    const Matrix n = base_form(tensor_, frame * frame.adjoint());
    const Matrix compressed = frame.adjoint() * n * frame;
    const auto es = eigen_of(compressed);
    const int k = static_cast<int>(frame.cols());
    if (k > 1 && es.eigenvalues()(1) - es.eigenvalues()(0) <= gap_tol_) return std::nullopt;
    const Vector y = es.eigenvectors().col(0);
    const Vector x = frame * y;
    const Matrix m_x = fiber_form(tensor_, x * x.adjoint());
    return 2.0 * (n * x * y.adjoint() + m_x * frame);
}

Matrix riemannian_fd_gradient(const SubspaceObjective& objective, const Matrix& frame, double h) {
    const int n = static_cast<int>(frame.rows());
    const int k = static_cast<int>(frame.cols());
    Matrix grad = Matrix::Zero(n, k);
    if (n == k) return grad;  // Grassmannian is a point

    // orthonormal basis of the column-space complement
    Eigen::HouseholderQR<Matrix> qr(frame);
    const Matrix comp = Matrix(qr.householderQ()).rightCols(n - k);

    for (int b = 0; b < n - k; ++b)
        for (int c = 0; c < k; ++c)
            for (int part = 0; part < 2; ++part) {
                Matrix dir = Matrix::Zero(n, k);
                dir.col(c) = (part == 0 ? Complex(1, 0) : Complex(0, 1)) * comp.col(b);
                const double fp = objective.value(orthonormalize(frame + h * dir));
                const double fm = objective.value(orthonormalize(frame - h * dir));
                grad += ((fp - fm) / (2.0 * h)) * dir;
            }
    return grad;
}

double riemannian_gradient_norm(const SubspaceObjective& objective, const Matrix& frame, double h) {
    return riemannian_fd_gradient(objective, frame, h).norm();
}

namespace {

struct SingleRun {
    Matrix frame;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

constexpr double kMinStep = 1e-14;

struct LineSearchResult {
    bool improved = false;
    Matrix frame;
    double value = 0.0;
    double step = 0.0;
};

LineSearchResult backtrack(const SubspaceObjective& objective, const Matrix& frame, double value,
                           double sign, const Matrix& direction, double step) {
    LineSearchResult result;
    double s = step;
    while (s >= kMinStep) {
        Matrix candidate = orthonormalize(frame + s * direction);
        const double candidate_value = objective.value(candidate);
        if (sign * (candidate_value - value) > 0.0) {
            result.improved = true;
            result.frame = std::move(candidate);
            result.value = candidate_value;
            result.step = s;
            return result;
        }
        s *= 0.5;
    }
    return result;
}

SingleRun ascend(const SubspaceObjective& objective, Matrix frame, const OptimizeOptions& options) {
    const double sign = options.maximize ? 1.0 : -1.0;
    const int n = static_cast<int>(frame.rows());
    const int k = static_cast<int>(frame.cols());
    SingleRun run;
    run.frame = frame;
    run.value = objective.value(frame);

    double step = 0.5;

    for (int iter = 1; iter <= options.max_iters; ++iter) {
        run.iterations = iter;
        LineSearchResult accepted;

        // gradient direction, then finite-difference fallbacks: a centered
        // difference straddling an eigenvalue crossing recovers the balanced
        // subgradient, which points along the kink where the analytic branch
        // gradient stalls
        const auto analytic = objective.euclidean_gradient(run.frame);
        const std::array<double, 2> fd_steps{options.fd_step, 1e-8};
        for (int attempt = 0; attempt < 3 && !accepted.improved; ++attempt) {
            Matrix g;
            if (attempt == 0) {
                if (analytic.has_value())
                    g = *analytic;
                else
                    continue;  // straight to the finite-difference attempt
            } else {
                g = riemannian_fd_gradient(objective, run.frame, fd_steps[attempt - 1]);
            }
            Matrix direction = tangent_project(run.frame, sign * g);
            const double gnorm = direction.norm();
            if (gnorm == 0.0) continue;
            accepted = backtrack(objective, run.frame, run.value, sign, direction / gnorm, step);
        }

        if (!accepted.improved && n > k) {
            // compass rescue over the tangent basis at shrinking radii
            Eigen::HouseholderQR<Matrix> qr(run.frame);
            const Matrix comp = Matrix(qr.householderQ()).rightCols(n - k);
            for (double radius = step; radius >= kMinStep && !accepted.improved; radius *= 0.25)
                for (int b = 0; b < n - k && !accepted.improved; ++b)
                    for (int c = 0; c < k && !accepted.improved; ++c)
                        for (int part = 0; part < 4 && !accepted.improved; ++part) {
                            Matrix direction = Matrix::Zero(n, k);
                            const Complex phase = part == 0   ? Complex(1, 0)
                                                  : part == 1 ? Complex(-1, 0)
                                                  : part == 2 ? Complex(0, 1)
                                                              : Complex(0, -1);
                            direction.col(c) = phase * comp.col(b);
                            Matrix candidate = orthonormalize(run.frame + radius * direction);
                            const double value = objective.value(candidate);
                            if (sign * (value - run.value) > 0.0) {
                                accepted.improved = true;
                                accepted.frame = std::move(candidate);
                                accepted.value = value;
                                accepted.step = radius;
                            }
                        }
        }

        if (!accepted.improved) {
            run.converged = true;  // no ascent direction at floating precision
            return run;
        }

        const double change = std::abs(accepted.value - run.value);
        run.frame = accepted.frame;
        run.value = accepted.value;
        step = std::min(1.0, accepted.step * 2.0);
        if (change <= options.tol * std::max(1.0, std::abs(run.value))) {
            run.converged = true;
            return run;
        }
    }
    run.converged = false;
    return run;
}

}  // namespace

OptimizeResult optimize_subspace(const SubspaceObjective& objective, int ambient, int k,
                                 const OptimizeOptions& options) {
    if (k < 1 || k > ambient) throw ShapeError("optimize_subspace: k out of range");

    OptimizeResult result;
    if (k == ambient) {
        const Matrix id = Matrix::Identity(ambient, ambient);
        result.subspace = Subspace{ambient, k, id};
        result.value = objective.value(id);
        result.converged = true;
        result.restart_values.push_back(result.value);
        return result;
    }

    const double sign = options.maximize ? 1.0 : -1.0;
    bool first = true;
    for (int r = 0; r < std::max(1, options.restarts); ++r) {
        Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
        SingleRun run = ascend(objective, rng.haar_frame(ambient, k), options);
        // a nonsmooth optimum stalls plain ascent; alternate the objective's
        // polish with re-ascent until neither moves the value
        for (int round = 0; round < 4; ++round) {
            const auto polished = objective.polish(run.frame, run.value, options.maximize);
            if (!polished.has_value()) break;
            run.frame = polished->frame;
            run.value = polished->value;
            const SingleRun resumed = ascend(objective, run.frame, options);
            if (sign * (resumed.value - run.value) <= 0.0) break;
            run = resumed;
        }
        result.restart_values.push_back(run.value);
        if (first || sign * (run.value - result.value) > 0.0) {
            first = false;
            result.subspace = Subspace{ambient, k, run.frame};
            result.value = run.value;
            result.converged = run.converged;
            result.iterations = run.iterations;
        }
    }
    return result;
}

std::string kind_name(PositivityKind kind) {
    switch (kind) {
        case PositivityKind::griffiths: return "griffiths";
        case PositivityKind::rc: return "rc";
        case PositivityKind::bc: return "bc";
        case PositivityKind::uniform_rc: return "uniform-rc";
        case PositivityKind::uniform_bc: return "uniform-bc";
    }
    throw ShapeError("unknown positivity kind");
}

PositivityKind parse_kind(const std::string& name) {
    if (name == "griffiths") return PositivityKind::griffiths;
    if (name == "rc") return PositivityKind::rc;
    if (name == "bc") return PositivityKind::bc;
    if (name == "uniform-rc") return PositivityKind::uniform_rc;
    if (name == "uniform-bc") return PositivityKind::uniform_bc;
    throw ShapeError("unknown positivity kind: " + name);
}

namespace {

struct KindPlan {
    EigenSumObjective::Side outer_side;  // which Grassmannian the outer extremum runs over
    bool outer_maximize;
    int inner_count;       // how many eigenvalues the inner extremum sums
    bool inner_smallest;
};

// min-max structure of each notion:
//   uniform-rc: max_Sigma min_sigma   bc: min_Sigma max_sigma
//   griffiths:  min_Sigma min_sigma   rc: min_sigma max_Sigma
//   uniform-bc: max_sigma min_Sigma
KindPlan plan_for(PositivityKind kind, int k, int l) {
    switch (kind) {
        case PositivityKind::uniform_rc:
            return {EigenSumObjective::Side::base, true, l, true};
        case PositivityKind::griffiths:
            return {EigenSumObjective::Side::base, false, l, true};
        case PositivityKind::bc:
            return {EigenSumObjective::Side::base, false, l, false};
        case PositivityKind::rc:
            return {EigenSumObjective::Side::fiber, false, k, false};
        case PositivityKind::uniform_bc:
            return {EigenSumObjective::Side::fiber, true, k, true};
    }
    throw ShapeError("unknown positivity kind");
}

void check_kl(const CurvatureTensor& t, int k, int l) {
    if (k < 1 || k > t.n()) throw ShapeError("certify: k out of range");
    if (l < 1 || l > t.r()) throw ShapeError("certify: l out of range");
}

}  // namespace

PositivityCertificate certify(const std::vector<CurvatureTensor>& points, PositivityKind kind,
                              int k, int l, const OptimizeOptions& options) {
    if (points.empty()) throw ShapeError("certify: need at least one point");
    PositivityCertificate cert;
    cert.kind = kind;
    cert.k = k;
    cert.l = l;
    cert.restarts = options.restarts;
    cert.seed = options.seed;
    cert.converged = true;

    const KindPlan plan = plan_for(kind, k, l);
    bool first = true;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const CurvatureTensor& t = points[p];
        check_kl(t, k, l);
        EigenSumObjective objective(t, plan.outer_side, plan.inner_count, plan.inner_smallest);
        OptimizeOptions opts = options;
        opts.maximize = plan.outer_maximize;
        opts.seed = derive_seed(options.seed, 0x706F696E74ULL + p);
        const int outer_ambient = plan.outer_side == EigenSumObjective::Side::base ? t.n() : t.r();
        const int outer_dim = plan.outer_side == EigenSumObjective::Side::base ? k : l;
        const OptimizeResult res = optimize_subspace(objective, outer_ambient, outer_dim, opts);
        cert.point_values.push_back(res.value);
        cert.witnesses.push_back(res.subspace);
        cert.converged = cert.converged && res.converged;
        if (first || res.value < cert.value) {
            cert.value = res.value;  // min over points
            first = false;
        }
    }
    cert.positive = cert.value > 0.0;
    return cert;
}

double brute_force_certify(const CurvatureTensor& t, PositivityKind kind, int k, int l,
                           long resolution, std::uint64_t seed) {
    check_kl(t, k, l);
    const KindPlan plan = plan_for(kind, k, l);
    EigenSumObjective objective(t, plan.outer_side, plan.inner_count, plan.inner_smallest);
    const int outer_ambient = plan.outer_side == EigenSumObjective::Side::base ? t.n() : t.r();
    const int outer_dim = plan.outer_side == EigenSumObjective::Side::base ? k : l;

    Rng rng(seed);
    double best = 0.0;
    for (long s = 0; s < std::max<long>(1, resolution); ++s) {
        const double v = objective.value(rng.haar_frame(outer_ambient, outer_dim));
        if (s == 0 || (plan.outer_maximize ? v > best : v < best)) best = v;
    }
    return best;
}

}  // namespace chern

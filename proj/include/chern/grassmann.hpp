#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chern/functionals.hpp"

namespace chern {

/// Sum of the l smallest eigenvalues of a Hermitian form with a witness
/// subspace spanned by the matching eigenvectors; equals the minimum of the
/// subspace-compressed trace over all l-dimensional fiber subspaces.
struct InnerOptimum {
    double value = 0.0;
    Subspace witness;
};

InnerOptimum inner_min_over_fibers(const DirectionMatrix& a, int l);
InnerOptimum inner_max_over_fibers(const DirectionMatrix& a, int l);

/// Objective over orthonormal frames (points of a Grassmannian). Implementors
/// may supply an analytic Riemannian-compatible Euclidean gradient; when they
/// return nullopt the optimizer falls back to central finite differences on
/// the tangent space.
class SubspaceObjective {
public:
    virtual ~SubspaceObjective() = default;
    virtual double value(const Matrix& frame) const = 0;
    virtual std::optional<Matrix> euclidean_gradient(const Matrix& /*frame*/) const {
        return std::nullopt;
    }

    struct Polished {
        Matrix frame;
        double value = 0.0;
    };
    /// High-accuracy local refinement for objectives that are nonsmooth at
    /// the optimum (eigenvalue crossings); nullopt when not applicable or no
    /// improvement was found.
    virtual std::optional<Polished> polish(const Matrix& frame, double value,
                                           bool maximize) const {
        (void)frame;
        (void)value;
        (void)maximize;
        return std::nullopt;
    }
};

/// phi(F) = sum of the `count` smallest (or largest) eigenvalues of the form
/// matrix induced on the opposite side by the frame projector. Analytic
/// gradient via eigenvector perturbation when the boundary eigenvalue gap
/// exceeds `gap_tol`.
class EigenSumObjective : public SubspaceObjective {
public:
    enum class Side { base, fiber };  // which side the frame lives on

    EigenSumObjective(const CurvatureTensor& t, Side side, int count, bool smallest,
                      double gap_tol = 1e-8);

    double value(const Matrix& frame) const override;
    std::optional<Matrix> euclidean_gradient(const Matrix& frame) const override;

    /// Extreme-eigenvalue objectives pushed toward a crossing stall for plain
    /// ascent; this restores the crossing cluster to exact degeneracy
    /// (Gauss-Newton on the deviatoric block, analytic Jacobian) and climbs
    /// along the crossing manifold.
    std::optional<Polished> polish(const Matrix& frame, double value,
                                   bool maximize) const override;

private:
    Matrix form_for(const Matrix& projector) const;
    Matrix adjoint_form_for(const Matrix& w) const;

    CurvatureTensor tensor_;  // by value: objectives stay valid past their inputs
    Side side_;
    int count_;
    bool smallest_;
    double gap_tol_;
};

/// phi(F) = k-scalar curvature of the spanned subspace (r == n).
class ScalarKObjective : public SubspaceObjective {
public:
    explicit ScalarKObjective(const CurvatureTensor& t);
    double value(const Matrix& frame) const override;
    std::optional<Matrix> euclidean_gradient(const Matrix& frame) const override;

private:
    CurvatureTensor tensor_;
};

/// phi(F) = min over unit X in span(F) of Ric_k(span(F))(X, Xbar); at k = 1
/// this is the holomorphic sectional curvature of the spanned line (r == n).
class RicciKMinObjective : public SubspaceObjective {
public:
    explicit RicciKMinObjective(const CurvatureTensor& t, double gap_tol = 1e-8);
    double value(const Matrix& frame) const override;
    std::optional<Matrix> euclidean_gradient(const Matrix& frame) const override;

private:
    CurvatureTensor tensor_;
    double gap_tol_;
};

struct OptimizeOptions {
    int restarts = 16;
    std::uint64_t seed = 0;
    double tol = 1e-10;   // relative objective-change stopping threshold
    int max_iters = 500;
    bool maximize = true;
    double fd_step = 1e-5;
};

struct OptimizeResult {
    Subspace subspace;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> restart_values;  // best value of every restart
};

/// Projected Riemannian ascent/descent over Gr_k(C^ambient) with QR
/// retraction, normalized gradient steps, backtracking line search and
/// independently seeded random restarts. Deterministic given the seed.
OptimizeResult optimize_subspace(const SubspaceObjective& objective, int ambient, int k,
                                 const OptimizeOptions& options);

/// Central-difference Riemannian gradient on the horizontal space at `frame`.
Matrix riemannian_fd_gradient(const SubspaceObjective& objective, const Matrix& frame, double h);

/// Norm of the tangent-projected gradient (finite differences).
double riemannian_gradient_norm(const SubspaceObjective& objective, const Matrix& frame, double h);

enum class PositivityKind { griffiths, rc, bc, uniform_rc, uniform_bc };

std::string kind_name(PositivityKind kind);
PositivityKind parse_kind(const std::string& name);

struct PositivityCertificate {
    PositivityKind kind = PositivityKind::uniform_rc;
    int k = 1;
    int l = 1;
    double value = 0.0;       // extremum across all supplied points
    bool positive = false;    // value > 0
    std::vector<double> point_values;
    std::vector<Subspace> witnesses;  // per-point optimal outer subspace
    int restarts = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

/// Certifies a positivity notion by optimizing the averaged curvature form
/// over the outer Grassmannian, with the inner extremum always computed
/// spectrally. `points` is the finite stand-in for a minimum over the points
/// of a manifold; a single tensor means a single-point check.
PositivityCertificate certify(const std::vector<CurvatureTensor>& points, PositivityKind kind,
                              int k, int l, const OptimizeOptions& options);

/// Independent oracle: replaces the outer optimization by dense random
/// sampling of the outer Grassmannian (inner extrema stay exact). Sampled
/// maxima under-estimate and sampled minima over-estimate the true value.
double brute_force_certify(const CurvatureTensor& t, PositivityKind kind, int k, int l,
                           long resolution = 20000, std::uint64_t seed = 0);

}  // namespace chern

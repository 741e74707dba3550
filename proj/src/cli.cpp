#include "chern/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "chern/extremal.hpp"
#include "chern/io.hpp"
#include "chern/models.hpp"
#include "chern/spherical.hpp"
#include "chern/vanishing.hpp"

namespace chern {

namespace {

CurvatureTensor resolve_tensor(const std::string& model, const std::string& input) {
    if (!model.empty() && !input.empty())
        throw ShapeError("give either a model spec or an input file, not both");
    if (!model.empty()) return parse_model(model);
    if (!input.empty()) return load_tensor(input);
    throw ShapeError("no tensor given: use --model or --input");
}

std::vector<CurvatureTensor> resolve_points(const RunConfig& config) {
    std::vector<CurvatureTensor> points;
    points.push_back(resolve_tensor(config.model, config.input));
    for (const std::string& path : config.points) points.push_back(load_tensor(path));
    return points;
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (config.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.output);
    if (!file) throw ShapeError("cannot open for writing: " + config.output);
    file << text;
}

OptimizeOptions options_from(const RunConfig& config) {
    OptimizeOptions opts;
    opts.restarts = config.restarts;
    opts.seed = config.seed;
    opts.tol = config.tol;
    return opts;
}

int cmd_gen(const RunConfig& config, std::ostream& out) {
    const CurvatureTensor t = resolve_tensor(config.model, config.input);
    emit(config, tensor_to_json(t), out);
    return 0;
}

int cmd_analyze(const RunConfig& config, std::ostream& out) {
    const CurvatureTensor t = resolve_tensor(config.model, config.input);
    const long samples = std::max<long>(1, std::min<long>(config.samples, 20000));
    Rng rng(config.seed);

    Json doc;
    doc["n"] = t.n();
    doc["r"] = t.r();
    doc["ckl"] = t.ckl();
    doc["hermitian_violation"] = check_hermitian(t, default_symmetry_tol(t)).max_violation;
    doc["samples"] = samples;
    doc["seed"] = config.seed;

    {  // direction-eigenvalue range over sampled unit X
        double lo = 0.0, hi = 0.0;
        for (long s = 0; s < samples; ++s) {
            const Vector x = rng.unit_vector(t.n());
            Eigen::SelfAdjointEigenSolver<Matrix> es(direction_matrix(t, x).matrix);
            const double mn = es.eigenvalues()(0);
            const double mx = es.eigenvalues()(t.r() - 1);
            if (s == 0 || mn < lo) lo = mn;
            if (s == 0 || mx > hi) hi = mx;
        }
        doc["direction_eigenvalues"] = Json{{"sampled_min", lo}, {"sampled_max", hi}};
    }

    if (t.r() == t.n()) {
        double hlo = 0.0, hhi = 0.0, riclo = 0.0, richi = 0.0;
        for (long s = 0; s < samples; ++s) {
            const Vector x = rng.unit_vector(t.n());
            const double h = holo_sectional(t, x);
            const double ric = chern_ricci(t, x);
            if (s == 0 || h < hlo) hlo = h;
            if (s == 0 || h > hhi) hhi = h;
            if (s == 0 || ric < riclo) riclo = ric;
            if (s == 0 || ric > richi) richi = ric;
        }
        doc["H"] = Json{{"sampled_min", hlo}, {"sampled_max", hhi}};
        doc["Ric"] = Json{{"sampled_min", riclo}, {"sampled_max", richi}};
        doc["S"] = chern_scalar(t);

        Json per_k = Json::array();
        const long sub_samples = std::max<long>(1, samples / 10);
        for (int k = 1; k <= t.n(); ++k) {
            double rlo = 0.0, rhi = 0.0, slo = 0.0, shi = 0.0;
            for (long s = 0; s < sub_samples; ++s) {
                const Subspace sigma = Subspace::haar(t.n(), k, rng);
                const Vector x = sigma.frame * rng.unit_vector(k);
                const double rick = ricci_k(t, sigma, x);
                const double sk = scalar_k(t, sigma);
                if (s == 0 || rick < rlo) rlo = rick;
                if (s == 0 || rick > rhi) rhi = rick;
                if (s == 0 || sk < slo) slo = sk;
                if (s == 0 || sk > shi) shi = sk;
            }
            per_k.push_back(Json{{"k", k},
                                 {"ricci_k", Json{{"sampled_min", rlo}, {"sampled_max", rhi}}},
                                 {"scalar_k", Json{{"sampled_min", slo}, {"sampled_max", shi}}}});
        }
        doc["per_k"] = std::move(per_k);
    }

    emit(config, doc.dump(2) + "\n", out);
    return 0;
}

int cmd_certify(const RunConfig& config, std::ostream& out) {
    const std::vector<CurvatureTensor> points = resolve_points(config);
    const PositivityCertificate cert =
        certify(points, parse_kind(config.kind), config.k, config.l, options_from(config));
    emit(config, certificate_to_json(cert).dump(2) + "\n", out);
    return 0;
}

int cmd_vanishing(const RunConfig& config, std::ostream& out) {
    const std::vector<CurvatureTensor> e_points = resolve_points(config);
    std::vector<CurvatureTensor> f_points;
    const bool has_f = !config.model_f.empty() || !config.input_f.empty();
    if (has_f) {
        const CurvatureTensor f = resolve_tensor(config.model_f, config.input_f);
        f_points.assign(e_points.size(), f);
    }
    const VanishingConstants consts = compute_constants(
        e_points, has_f ? &f_points : nullptr, config.k, options_from(config));

    Json doc = constants_to_json(consts);
    Json table = Json::array();
    for (long p = 0; p <= 3; ++p)
        for (long m = 0; m <= 2; ++m)
            for (long q = 0; q <= 8; ++q)
                if (vanishing_region(consts, p, q, m)) {
                    table.push_back(Json{{"p", p}, {"q", q}, {"m", m}});
                    break;  // region is upward closed in q: record the threshold
                }
    doc["region_thresholds"] = std::move(table);
    emit(config, doc.dump(2) + "\n", out);
    return 0;
}

int cmd_extremal(const RunConfig& config, std::ostream& out) {
    CurvatureTensor t = resolve_tensor(config.model, config.input);
    const bool max_mode = config.mode == "max";
    if (max_mode) t = scaled(t, -1.0);  // the maximizing case is the mirror image
    const ExtremalReport report =
        verify_uniform_from_rick(t, config.k, options_from(config), config.trials);
    Json doc = extremal_to_json(report);
    doc["negated_input"] = max_mode;
    emit(config, doc.dump(2) + "\n", out);
    return 0;
}

int cmd_verify_identities(const RunConfig& config, std::ostream& out) {
    std::ostringstream report;
    bool all_ok = true;
    const long samples = std::max<long>(2, config.samples);

    for (int k = 1; k <= 4; ++k) {
        const Subspace sigma = Subspace::full(k);
        const double volume = sphere_volume(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const auto est = mc_sphere_average(
                    [i, j](const Vector& y) { return y(i) * std::conj(y(j)); }, sigma, samples,
                    derive_seed(config.seed, 1000 * k + 10 * i + j));
                const Complex exact =
                    i == j ? Complex(volume / k, 0.0) : Complex(0, 0);
                const double band = 4.0 * est.stderr_value;
                const bool ok = std::abs(est.value - exact) <= band + 1e-12;
                all_ok = all_ok && ok;
                report << (ok ? "PASS" : "FAIL") << " quadratic k=" << k << " (" << i + 1 << ","
                       << j + 1 << "): estimate " << est.value.real() << "+"
                       << est.value.imag() << "i, exact " << exact.real()
                       << ", band " << band << "\n";
            }
        bool quartic_ok = true;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                for (int r = 0; r < k; ++r)
                    for (int s = 0; s < k; ++s) {
                        const auto est = mc_sphere_average(
                            [i, j, r, s](const Vector& y) {
                                return y(i) * std::conj(y(j)) * y(r) * std::conj(y(s));
                            },
                            sigma, samples,
                            derive_seed(config.seed, 100000 * k + 1000 * i + 100 * j + 10 * r + s));
                        const double kron =
                            (i == j && r == s ? 1.0 : 0.0) + (i == s && r == j ? 1.0 : 0.0);
                        const Complex exact(kron * volume / (static_cast<double>(k) * (k + 1)),
                                            0.0);
                        const double band = 4.0 * est.stderr_value;
                        const bool ok = std::abs(est.value - exact) <= band + 1e-12;
                        quartic_ok = quartic_ok && ok;
                        if (!ok)
                            report << "FAIL quartic k=" << k << " (" << i + 1 << "," << j + 1
                                   << "," << r + 1 << "," << s + 1 << "): estimate "
                                   << est.value.real() << ", exact " << exact.real() << ", band "
                                   << band << "\n";
                    }
        all_ok = all_ok && quartic_ok;
        report << (quartic_ok ? "PASS" : "FAIL") << " quartic moment sweep k=" << k << "\n";
    }
    report << (all_ok ? "PASS" : "FAIL") << " spherical moment suite\n";
    emit(config, report.str(), out);
    return all_ok ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "gen") return cmd_gen(config, out);
        if (config.command == "analyze") return cmd_analyze(config, out);
        if (config.command == "certify") return cmd_certify(config, out);
        if (config.command == "vanishing") return cmd_vanishing(config, out);
        if (config.command == "extremal") return cmd_extremal(config, out);
        if (config.command == "verify-identities") return cmd_verify_identities(config, out);
        err << "unknown command: " << config.command << "\n";
        return 2;
    } catch (const HypothesisError& e) {
        err << "hypothesis violated: " << e.what() << "\n";
        return 1;
    } catch (const ShapeError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MetricError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace chern

#include "chern/io.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace chern {

std::string tensor_to_json(const CurvatureTensor& t) {
    Json doc;
    doc["n"] = t.n();
    doc["r"] = t.r();
    doc["ckl"] = t.ckl();
    Json entries = Json::array();
    for (int i = 0; i < t.n(); ++i)
        for (int j = 0; j < t.n(); ++j)
            for (int a = 0; a < t.r(); ++a)
                for (int b = 0; b < t.r(); ++b) {
                    const std::array<int, 4> self{i, j, a, b};
                    const std::array<int, 4> mirror{j, i, b, a};
                    if (mirror < self) continue;  // canonical half only
                    const Complex z = t(i, j, a, b);
                    if (z == Complex(0, 0)) continue;
                    entries.push_back(Json::array({i + 1, j + 1, a + 1, b + 1, z.real(), z.imag()}));
                }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

CurvatureTensor tensor_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ShapeError(std::string("tensor file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("n") || !doc.contains("r"))
        throw ShapeError("tensor file missing field 'n' or 'r'");
    const int n = doc["n"].get<int>();
    const int r = doc["r"].get<int>();
    const bool ckl = doc.value("ckl", false);
    if (n < 1 || r < 1) throw ShapeError("tensor file: dimensions must be positive");

    std::vector<Complex> data(static_cast<std::size_t>(n) * n * r * r, Complex(0, 0));
    std::vector<bool> listed(data.size(), false);
    auto idx = [n, r](int i, int j, int a, int b) {
        return ((static_cast<std::size_t>(i) * n + j) * r + a) * r + b;
    };

    std::size_t line = 0;
    for (const Json& rec : doc.value("entries", Json::array())) {
        ++line;
        if (!rec.is_array() || rec.size() != 6) {
            std::ostringstream msg;
            msg << "tensor file entry " << line << ": expected [i, j, alpha, beta, re, im]";
            throw ShapeError(msg.str());
        }
        const int i = rec[0].get<int>() - 1;
        const int j = rec[1].get<int>() - 1;
        const int a = rec[2].get<int>() - 1;
        const int b = rec[3].get<int>() - 1;
        if (i < 0 || i >= n || j < 0 || j >= n || a < 0 || a >= r || b < 0 || b >= r) {
            std::ostringstream msg;
            msg << "tensor file entry " << line << ": index out of range";
            throw ShapeError(msg.str());
        }
        data[idx(i, j, a, b)] = Complex(rec[4].get<double>(), rec[5].get<double>());
        listed[idx(i, j, a, b)] = true;
    }

    // Hermitian completion of unlisted mirrors
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    if (listed[idx(i, j, a, b)] && !listed[idx(j, i, b, a)])
                        data[idx(j, i, b, a)] = std::conj(data[idx(i, j, a, b)]);

    CurvatureTensor t(n, r, std::move(data), ckl);
    const double tol = default_symmetry_tol(t);
    const SymmetryCheck herm = check_hermitian(t, tol);
    if (!herm.ok) {
        std::ostringstream msg;
        msg << "tensor file violates Hermitian symmetry by " << herm.max_violation;
        throw ShapeError(msg.str());
    }
    if (ckl) {
        const SymmetryCheck sym = check_ckl(t, tol);
        if (!sym.ok) {
            std::ostringstream msg;
            msg << "tensor file carries the ckl flag but violates the symmetry by "
                << sym.max_violation;
            throw ShapeError(msg.str());
        }
    }
    return t;
}

void save_tensor(const CurvatureTensor& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ShapeError("cannot open for writing: " + path);
    out << tensor_to_json(t);
}

CurvatureTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ShapeError("cannot open tensor file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return tensor_from_json(buf.str());
}

Json subspace_to_json(const Subspace& s) {
    Json rows = Json::array();
    for (int i = 0; i < s.ambient; ++i) {
        Json row = Json::array();
        for (int c = 0; c < s.k; ++c)
            row.push_back(Json::array({s.frame(i, c).real(), s.frame(i, c).imag()}));
        rows.push_back(std::move(row));
    }
    return Json{{"ambient", s.ambient}, {"k", s.k}, {"frame", std::move(rows)}};
}

Json certificate_to_json(const PositivityCertificate& cert) {
    Json doc;
    doc["kind"] = kind_name(cert.kind);
    doc["k"] = cert.k;
    doc["l"] = cert.l;
    doc["value"] = cert.value;
    doc["positive"] = cert.positive;
    Json points = Json::array();
    for (std::size_t p = 0; p < cert.point_values.size(); ++p)
        points.push_back(Json{{"point", p},
                              {"value", cert.point_values[p]},
                              {"witness", subspace_to_json(cert.witnesses[p])}});
    doc["points"] = std::move(points);
    doc["restarts"] = cert.restarts;
    doc["converged"] = cert.converged;
    doc["seed"] = cert.seed;
    return doc;
}

Json constants_to_json(const VanishingConstants& consts) {
    Json doc;
    doc["k"] = consts.k;
    doc["C"] = consts.C;
    doc["lambda_max"] = consts.lambda_max;
    doc["lambda_min"] = consts.lambda_min;
    if (consts.mu_max) doc["mu_max"] = *consts.mu_max;
    if (consts.mu_min) doc["mu_min"] = *consts.mu_min;
    doc["C1"] = consts.C1;
    doc["C2"] = consts.C2;
    return doc;
}

Json extremal_to_json(const ExtremalReport& report) {
    Json doc;
    doc["k"] = report.k;
    doc["mode"] = report.min_mode ? "min" : "max";
    doc["s_k_value"] = report.s_k_value;
    doc["sigma_star"] = subspace_to_json(report.sigma_star);
    doc["nz1_residual"] = report.nz1_residual;
    doc["nz2_margin"] = report.nz2_margin;
    doc["nz_vacuous"] = report.nz_vacuous;
    doc["chain_margin"] = report.chain_margin;
    doc["D"] = report.D;
    doc["converged"] = report.converged;
    return doc;
}

}  // namespace chern

#include "chern/models.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "chern/rng.hpp"

namespace chern {

CurvatureTensor fubini_study(int n, double c) {
    if (n < 1) throw ShapeError("fubini_study: n must be positive");
    std::vector<Complex> e(static_cast<std::size_t>(n) * n * n * n, Complex(0, 0));
    auto idx = [n](int i, int j, int k, int l) {
        return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    if (i == j && k == l) v += 0.5 * c;
                    if (i == l && k == j) v += 0.5 * c;
                    if (v != 0.0) e[idx(i, j, k, l)] = Complex(v, 0.0);
                }
    return CurvatureTensor(n, n, std::move(e), /*ckl=*/true);
}

CurvatureTensor flat(int n, int r) { return CurvatureTensor::zeros(n, r); }

CurvatureTensor product(const CurvatureTensor& a, const CurvatureTensor& b) {
    const int n = a.n() + b.n();
    const int r = a.r() + b.r();
    std::vector<Complex> e(static_cast<std::size_t>(n) * n * r * r, Complex(0, 0));
    auto idx = [n, r](int i, int j, int k, int l) {
        return ((static_cast<std::size_t>(i) * n + j) * r + k) * r + l;
    };
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            for (int k = 0; k < a.r(); ++k)
                for (int l = 0; l < a.r(); ++l) e[idx(i, j, k, l)] = a(i, j, k, l);
    for (int i = 0; i < b.n(); ++i)
        for (int j = 0; j < b.n(); ++j)
            for (int k = 0; k < b.r(); ++k)
                for (int l = 0; l < b.r(); ++l)
                    e[idx(a.n() + i, a.n() + j, a.r() + k, a.r() + l)] = b(i, j, k, l);
    const bool ckl = a.ckl() && b.ckl() && r == n;
    return CurvatureTensor(n, r, std::move(e), ckl);
}

namespace {

std::vector<Complex> gaussian_entries(int n, int r, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Complex> e(static_cast<std::size_t>(n) * n * r * r);
    for (Complex& z : e) z = rng.complex_normal();
    return e;
}

}  // namespace

CurvatureTensor random_hermitian(int n, int r, std::uint64_t seed) {
    return project_to_hermitian(n, r, gaussian_entries(n, r, seed));
}

CurvatureTensor random_ckl(int n, std::uint64_t seed) {
    return project_to_ckl(n, gaussian_entries(n, n, seed));
}

CurvatureTensor shifted_positive(int n, std::uint64_t seed, double s) {
    const CurvatureTensor base = random_ckl(n, seed);
    const CurvatureTensor fs = fubini_study(n, 2.0);
    std::vector<Complex> e = base.entries();
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += s * fs.entries()[i];
    return CurvatureTensor(n, n, std::move(e), /*ckl=*/true);
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& args) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ShapeError("model argument missing '=': " + item);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

int get_int(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ShapeError("model spec missing parameter: " + key);
    return std::stoi(it->second);
}

double get_double(const std::map<std::string, std::string>& kv, const std::string& key,
                  double fallback, bool required) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (required) throw ShapeError("model spec missing parameter: " + key);
        return fallback;
    }
    return std::stod(it->second);
}

std::uint64_t get_seed(const std::map<std::string, std::string>& kv) {
    auto it = kv.find("seed");
    if (it == kv.end()) return 0;
    return std::stoull(it->second);
}

CurvatureTensor parse_fs_factor(const std::string& factor) {
    // expects "fs(n,c)"
    if (factor.rfind("fs(", 0) != 0 || factor.back() != ')')
        throw ShapeError("product factors must look like fs(n,c): " + factor);
    const std::string inner = factor.substr(3, factor.size() - 4);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) throw ShapeError("fs factor needs two arguments: " + factor);
    return fubini_study(std::stoi(inner.substr(0, comma)), std::stod(inner.substr(comma + 1)));
}

}  // namespace

CurvatureTensor parse_model(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = colon == std::string::npos ? spec : spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (name == "fs") {
        const auto kv = parse_kv(args);
        return fubini_study(get_int(kv, "n"), get_double(kv, "c", 2.0, false));
    }
    if (name == "flat") {
        const auto kv = parse_kv(args);
        return flat(get_int(kv, "n"), get_int(kv, "r"));
    }
    if (name == "product") {
        const auto x = args.find('x');
        if (x == std::string::npos) throw ShapeError("product spec needs two factors: " + spec);
        return product(parse_fs_factor(args.substr(0, x)), parse_fs_factor(args.substr(x + 1)));
    }
    if (name == "random-ckl") {
        const auto kv = parse_kv(args);
        return random_ckl(get_int(kv, "n"), get_seed(kv));
    }
    if (name == "random-hermitian") {
        const auto kv = parse_kv(args);
        return random_hermitian(get_int(kv, "n"), get_int(kv, "r"), get_seed(kv));
    }
    if (name == "shifted-positive") {
        const auto kv = parse_kv(args);
        return shifted_positive(get_int(kv, "n"), get_seed(kv), get_double(kv, "s", 4.0, false));
    }
    throw ShapeError("unknown model: " + name);
}

}  // namespace chern

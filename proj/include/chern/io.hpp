#pragma once

#include <string>

#include "json.hpp"

#include "chern/extremal.hpp"
#include "chern/grassmann.hpp"
#include "chern/vanishing.hpp"

namespace chern {

using Json = nlohmann::ordered_json;

/// Tensor file format: {"n": .., "r": .., "ckl": .., "entries": [[i, j,
/// alpha, beta, re, im], ...]} with 1-based indices. Unlisted entries are
/// zero. The writer emits only the lexicographically-canonical half of each
/// Hermitian pair; the loader completes the other half and validates.
std::string tensor_to_json(const CurvatureTensor& t);
CurvatureTensor tensor_from_json(const std::string& text);

void save_tensor(const CurvatureTensor& t, const std::string& path);
CurvatureTensor load_tensor(const std::string& path);

Json subspace_to_json(const Subspace& s);
Json certificate_to_json(const PositivityCertificate& cert);
Json constants_to_json(const VanishingConstants& consts);
Json extremal_to_json(const ExtremalReport& report);

}  // namespace chern

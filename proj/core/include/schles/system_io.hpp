#pragma once

#include <string>

#include "json.hpp"
#include "schles/fuchsian.hpp"

namespace schles {

using Json = nlohmann::ordered_json;

/// [re, im]; negative zeros are written as 0 so output diffs cleanly.
Json complex_to_json(cplx z);
/// "inf" or [re, im].
Json point_to_json(const SpherePoint& p);
Json matrix_to_json(const Mat2& m);

/// Canonical form: gauge, poles, residues, marking, in that order.
Json system_to_json(const FuchsianSystem& S);
std::string format_system(const FuchsianSystem& S);

/// Parses a system description. Throws ParseError carrying "line N: ..." for
/// syntax errors, malformed fields, duplicate poles, trace violations and
/// markings that are not eigenvalues. A missing "marking" means the default
/// marking.
FuchsianSystem parse_system(const std::string& text);
FuchsianSystem load_system(const std::string& path);

}  // namespace schles

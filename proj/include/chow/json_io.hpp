#pragma once

#include "chow/charpoly.hpp"
#include "chow/matroid.hpp"
#include "chow/oracle.hpp"
#include "chow/volume.hpp"

#include <json.hpp>

#include <string>
#include <utility>

namespace chow {

// Insertion-ordered documents keep command output byte-stable.
using json = nlohmann::ordered_json;

// Big integers and rationals serialize as decimal strings ("coef": "-240",
// "value": "1/2") so that consumers never round. Readers accept plain JSON
// numbers as well.
std::string int_to_string(const Int& v);
std::string rat_to_string(const Rat& v);
Int int_from_json(const json& v);
Rat rat_from_json(const json& v);

// {"ground_set": n or [labels], "flats": [[element indices], ...]},
// flats emitted in canonical order, so output can be fed back in.
json matroid_to_json(const Matroid& m);
Matroid matroid_from_json(const json& j);

// {"n_vertices": 4, "edges": [[0,1], [0,2], ...]}
Matroid graph_from_json(const json& j);

// {"rows": 3, "cols": 7, "entries": [[row], ...], "modulus": 2 or "rational"}
Matroid matrix_from_json(const json& j);

Matroid matroid_from_file(const std::string& path);
Matroid graph_from_file(const std::string& path);
Matroid matrix_from_file(const std::string& path);

// {"n": 3, "x": {"0": 1, "0,1": 2, ...}} with comma-separated element keys.
std::pair<int, SupportVector> support_from_json(const json& j);
std::pair<int, SupportVector> support_from_file(const std::string& path);
json support_to_json(int n, const SupportVector& x);

// {"n": 3, "y": {"0,1": 1, ...}}
std::pair<int, MinkowskiWeights> weights_from_json(const json& j);
std::pair<int, MinkowskiWeights> weights_from_file(const std::string& path);
json weights_to_json(int n, const MinkowskiWeights& y);

// List of {"flag": [[...], ...], "exps": [...], "coef": "...",
// "denominator_factorial": ...} term objects.
json volume_polynomial_to_json(const VolumePolynomial& vp);

// {"k", "rows", "matrix", "det", "triangular", "diag", "spot_checks"}
json pairing_certificate_to_json(const PairingCertificate& cert);

// {"coeffs": ascending powers as strings, "text": human-readable polynomial}
json char_poly_to_json(const CharPoly& p);

json parse_json_file(const std::string& path);

} // namespace chow

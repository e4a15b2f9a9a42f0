#include "chow/json_io.hpp"

#include "chow/errors.hpp"
#include "chow/subset.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace chow {

namespace {

std::vector<int> mask_to_elements(Mask m) { return elements_of(m); }

Mask key_to_mask(const std::string& key, int n, const char* who) {
    Mask out = 0;
    std::stringstream ss(key);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        size_t pos = 0;
        int e = -1;
        try {
            e = std::stoi(piece, &pos);
        } catch (const std::exception&) {
            throw InputError(std::string(who) + ": bad element '" + piece + "' in key '" + key + "'");
        }
        while (pos < piece.size() && std::isspace(static_cast<unsigned char>(piece[pos]))) ++pos;
        if (pos != piece.size() || e < 0 || e >= n)
            throw InputError(std::string(who) + ": bad element '" + piece + "' in key '" + key + "'");
        out |= Mask(1) << e;
    }
    if (out == 0) throw InputError(std::string(who) + ": empty subset key");
    return out;
}

std::string mask_to_key(Mask m) {
    std::string out;
    for (int e : elements_of(m)) {
        if (!out.empty()) out += ',';
        out += std::to_string(e);
    }
    return out;
}

const json& need(const json& j, const char* field, const char* who) {
    auto it = j.find(field);
    if (it == j.end())
        throw InputError(std::string(who) + ": missing field \"" + field + "\"");
    return *it;
}

int need_int(const json& j, const char* field, const char* who) {
    const json& v = need(j, field, who);
    if (!v.is_number_integer())
        throw InputError(std::string(who) + ": field \"" + field + "\" must be an integer");
    return v.get<int>();
}

} // namespace

std::string int_to_string(const Int& v) { return v.str(); }

std::string rat_to_string(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

Int int_from_json(const json& v) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        try {
            return Int(s);
        } catch (const std::exception&) {
            throw InputError("bad integer literal '" + s + "'");
        }
    }
    throw InputError("expected an integer or a decimal string");
}

Rat rat_from_json(const json& v) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(Int(s));
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) throw InputError("zero denominator in '" + s + "'");
            return Rat(num, den);
        } catch (const InputError&) {
            throw;
        } catch (const std::exception&) {
            throw InputError("bad rational literal '" + s + "'");
        }
    }
    throw InputError("expected a rational as integer or \"p/q\" string");
}

json matroid_to_json(const Matroid& m) {
    json j;
    if (m.labels()) {
        j["ground_set"] = *m.labels();
    } else {
        j["ground_set"] = m.ground_size();
    }
    json flats = json::array();
    for (int i = 0; i < m.num_flats(); ++i) flats.push_back(mask_to_elements(m.flat(i)));
    j["flats"] = std::move(flats);
    return j;
}

Matroid matroid_from_json(const json& j) {
    const char* who = "matroid file";
    const json& gs = need(j, "ground_set", who);
    int n = 0;
    std::optional<std::vector<std::string>> labels;
    if (gs.is_number_integer()) {
        n = gs.get<int>();
    } else if (gs.is_array()) {
        std::vector<std::string> names;
        for (const json& v : gs) {
            if (!v.is_string()) throw InputError(std::string(who) + ": labels must be strings");
            names.push_back(v.get<std::string>());
        }
        n = static_cast<int>(names.size());
        labels = std::move(names);
    } else {
        throw InputError(std::string(who) + ": \"ground_set\" must be a count or a label array");
    }
    const json& fl = need(j, "flats", who);
    if (!fl.is_array()) throw InputError(std::string(who) + ": \"flats\" must be an array");
    std::vector<Mask> masks;
    for (const json& f : fl) {
        if (!f.is_array()) throw InputError(std::string(who) + ": each flat must be an array");
        Mask m = 0;
        for (const json& e : f) {
            if (!e.is_number_integer())
                throw InputError(std::string(who) + ": flat elements must be integers");
            int x = e.get<int>();
            if (x < 0 || x >= n)
                throw InputError(std::string(who) + ": element " + std::to_string(x) +
                                 " outside the ground set");
            m |= Mask(1) << x;
        }
        masks.push_back(m);
    }
    return from_flats(n, std::move(masks), std::move(labels));
}

Matroid graph_from_json(const json& j) {
    const char* who = "graph file";
    int nv = need_int(j, "n_vertices", who);
    const json& ed = need(j, "edges", who);
    if (!ed.is_array()) throw InputError(std::string(who) + ": \"edges\" must be an array");
    std::vector<std::pair<int, int>> edges;
    for (const json& e : ed) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw InputError(std::string(who) + ": each edge must be a pair of vertex indices");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return from_graph(nv, edges);
}

Matroid matrix_from_json(const json& j) {
    const char* who = "matrix file";
    int rows = need_int(j, "rows", who);
    int cols = need_int(j, "cols", who);
    const json& en = need(j, "entries", who);
    if (!en.is_array()) throw InputError(std::string(who) + ": \"entries\" must be an array");
    std::vector<Int> entries;
    auto push = [&](const json& v) { entries.push_back(int_from_json(v)); };
    if (!en.empty() && en[0].is_array()) {
        for (const json& row : en) {
            if (!row.is_array()) throw InputError(std::string(who) + ": ragged \"entries\"");
            for (const json& v : row) push(v);
        }
    } else {
        for (const json& v : en) push(v);
    }
    const json& mod = need(j, "modulus", who);
    std::optional<int> prime;
    if (mod.is_number_integer()) {
        prime = mod.get<int>();
    } else if (mod.is_string() && mod.get_ref<const std::string&>() == "rational") {
        prime = std::nullopt;
    } else {
        throw InputError(std::string(who) + ": \"modulus\" must be a prime or \"rational\"");
    }
    return from_matrix(rows, cols, entries, prime);
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return j;
}

Matroid matroid_from_file(const std::string& path) { return matroid_from_json(parse_json_file(path)); }
Matroid graph_from_file(const std::string& path) { return graph_from_json(parse_json_file(path)); }
Matroid matrix_from_file(const std::string& path) { return matrix_from_json(parse_json_file(path)); }

namespace {

std::pair<int, std::map<Mask, Rat>> subset_map_from_json(const json& j, const char* field,
                                                         const char* who) {
    int n = need_int(j, "n", who);
    if (n < 1 || n > kMaxGroundSet) throw InputError(std::string(who) + ": bad \"n\"");
    const json& m = need(j, field, who);
    if (!m.is_object())
        throw InputError(std::string(who) + ": \"" + field + "\" must be an object");
    std::map<Mask, Rat> out;
    for (auto it = m.begin(); it != m.end(); ++it) {
        Mask s = key_to_mask(it.key(), n, who);
        Rat v = rat_from_json(it.value());
        if (v != 0) {
            auto [pos, fresh] = out.emplace(s, v);
            if (!fresh)
                throw InputError(std::string(who) + ": duplicate key for " + format_set(s));
        }
    }
    return {n, std::move(out)};
}

json subset_map_to_json(const std::map<Mask, Rat>& m) {
    json out = json::object();
    for (auto& [s, v] : m)
        if (v != 0) out[mask_to_key(s)] = rat_to_string(v);
    return out;
}

} // namespace

std::pair<int, SupportVector> support_from_json(const json& j) {
    return subset_map_from_json(j, "x", "support file");
}

std::pair<int, SupportVector> support_from_file(const std::string& path) {
    return support_from_json(parse_json_file(path));
}

json support_to_json(int n, const SupportVector& x) {
    json j;
    j["n"] = n;
    j["x"] = subset_map_to_json(x);
    return j;
}

std::pair<int, MinkowskiWeights> weights_from_json(const json& j) {
    return subset_map_from_json(j, "y", "weights file");
}

std::pair<int, MinkowskiWeights> weights_from_file(const std::string& path) {
    return weights_from_json(parse_json_file(path));
}

json weights_to_json(int n, const MinkowskiWeights& y) {
    json j;
    j["n"] = n;
    j["y"] = subset_map_to_json(y);
    return j;
}

json volume_polynomial_to_json(const VolumePolynomial& vp) {
    json terms = json::array();
    for (const VolumeTerm& t : vp.terms) {
        json jt;
        json flag = json::array();
        for (Mask f : t.flag) flag.push_back(mask_to_elements(f));
        jt["flag"] = std::move(flag);
        jt["exps"] = t.exps;
        jt["coef"] = int_to_string(t.coef);
        jt["denominator_factorial"] = vp.denominator_factorial;
        terms.push_back(std::move(jt));
    }
    return terms;
}

json pairing_certificate_to_json(const PairingCertificate& cert) {
    json j;
    j["k"] = cert.k;
    j["rows"] = cert.rows;
    json matrix = json::array();
    for (const auto& row : cert.matrix) {
        json jr = json::array();
        for (const Int& v : row) jr.push_back(int_to_string(v));
        matrix.push_back(std::move(jr));
    }
    j["matrix"] = std::move(matrix);
    j["det"] = int_to_string(cert.det);
    j["triangular"] = cert.triangular;
    json diag = json::array();
    for (const Int& v : cert.diag) diag.push_back(int_to_string(v));
    j["diag"] = std::move(diag);
    j["spot_checks"] = cert.spot_checks_run;
    return j;
}

json char_poly_to_json(const CharPoly& p) {
    json j;
    json coeffs = json::array();
    for (const Int& c : p.coeffs) coeffs.push_back(int_to_string(c));
    j["coeffs"] = std::move(coeffs);
    j["text"] = p.to_string();
    return j;
}

} // namespace chow

#include "chow/text.hpp"

#include <algorithm>
#include <cctype>

namespace chow {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(const std::string& s, const char* what) {
    std::string t = trim(s);
    if (t.empty()) throw InputError(std::string("expected ") + what + ", got nothing");
    size_t used = 0;
    int v;
    try {
        v = std::stoi(t, &used);
    } catch (const std::exception&) {
        throw InputError(std::string("bad ") + what + ": '" + t + "'");
    }
    if (used != t.size()) throw InputError(std::string("bad ") + what + ": '" + t + "'");
    return v;
}

} // namespace

std::string format_flat(const Matroid& m, Mask f) {
    return f == m.ground_mask() ? "E" : format_set(f);
}

std::string format_monomial(const Matroid& m, const DivisorMonomial& mono) {
    if (mono.exps.empty()) return "1";
    std::string out;
    for (auto& [idx, d] : mono.exps) {
        if (!out.empty()) out += " * ";
        Mask f = m.flat(idx);
        out += f == m.ground_mask() ? "D{E}" : "D" + format_set(f);
        if (d != 1) out += "^" + std::to_string(d);
    }
    return out;
}

Mask parse_flat(const Matroid& m, const std::string& text) {
    std::string t = trim(text);
    if (t == "E") return m.ground_mask();
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw InputError("bad flat '" + text + "': expected E or {i,j,...}");
    std::string body = trim(t.substr(1, t.size() - 2));
    if (body == "E") return m.ground_mask(); // tolerate {E} as well
    Mask f = 0;
    if (!body.empty()) {
        for (const std::string& piece : split(body, ',')) {
            int e = parse_int(piece, "element");
            if (e < 0 || e >= m.ground_size())
                throw InputError("element " + std::to_string(e) + " outside the ground set");
            f |= Mask{1} << e;
        }
    }
    return f;
}

namespace {

// One factor: D<flat> optionally followed by ^<exponent>.
std::pair<Mask, int> parse_factor(const Matroid& m, const std::string& text, char head) {
    std::string t = trim(text);
    if (t.empty() || t[0] != head)
        throw InputError(std::string("bad factor '") + text + "': expected prefix '" + head + "'");
    t = t.substr(1);
    if (head == 'p') {
        // psi factors spell "psi-" in full
        if (t.rfind("si-", 0) != 0)
            throw InputError("bad factor '" + text + "': expected psi-{...}");
        t = t.substr(3);
    }
    int exp = 1;
    size_t caret = t.find('^');
    if (caret != std::string::npos) {
        exp = parse_int(t.substr(caret + 1), "exponent");
        t = trim(t.substr(0, caret));
    }
    Mask f = parse_flat(m, t);
    return {f, exp};
}

} // namespace

DivisorMonomial parse_monomial(const Matroid& m, const std::string& text) {
    DivisorMonomial mono;
    std::string t = trim(text);
    if (t.empty() || t == "1") return mono;
    for (const std::string& piece : split(t, '*')) {
        auto [f, exp] = parse_factor(m, piece, 'D');
        if (exp < 1) throw InputError("exponents must be positive in '" + piece + "'");
        int idx = m.index_of(f);
        if (idx < 0) throw InputError(format_set(f) + " is not a flat of this matroid");
        mono.exps[idx] += exp;
    }
    return mono;
}

std::vector<Mask> parse_psi_product(const Matroid& m, const std::string& text) {
    std::vector<Mask> out;
    std::string t = trim(text);
    if (t.empty()) return out;
    for (const std::string& piece : split(t, '*')) {
        auto [f, exp] = parse_factor(m, piece, 'p');
        if (exp < 1) throw InputError("exponents must be positive in '" + piece + "'");
        if (m.index_of(f) < 0)
            throw InputError(format_set(f) + " is not a flat of this matroid");
        for (int i = 0; i < exp; ++i) out.push_back(f);
    }
    return out;
}

} // namespace chow

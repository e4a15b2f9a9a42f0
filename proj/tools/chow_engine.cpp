#include "chow/charpoly.hpp"
#include "chow/degree.hpp"
#include "chow/divisor.hpp"
#include "chow/errors.hpp"
#include "chow/json_io.hpp"
#include "chow/matroid.hpp"
#include "chow/oracle.hpp"
#include "chow/text.hpp"
#include "chow/volume.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace chow;

struct Context {
    Matroid m;
    json source;
    bool as_json = false;
    bool no_timing = false;
    std::uint64_t seed = 0;
};

struct Output {
    std::ostringstream table;
    json doc;
    Diagnostics diag;
};

void emit(const Context& ctx, Output& out, double ms) {
    for (const std::string& w : out.diag.warnings) std::cerr << "warning: " << w << "\n";
    if (ctx.as_json) {
        out.doc["warnings"] = out.diag.warnings;
        if (!ctx.no_timing) out.doc["timing_ms"] = ms;
        std::cout << out.doc.dump(2) << "\n";
    } else {
        std::cout << out.table.str();
        if (!ctx.no_timing)
            std::cout << "time: " << ms << " ms\n";
    }
}

std::string flat_text(const Matroid& m, Mask f) { return format_flat(m, f); }

int cmd_flats(Context& ctx, Output& out) {
    const Matroid& m = ctx.m;
    out.doc = matroid_to_json(m);
    out.doc["command"] = "flats";
    out.doc["source"] = ctx.source;
    json ranks = json::array(), covers = json::array();
    for (int i = 0; i < m.num_flats(); ++i) {
        ranks.push_back(m.flat_rank(i));
        covers.push_back(m.covers(i));
    }
    out.doc["ranks"] = std::move(ranks);
    out.doc["covers"] = std::move(covers);
    out.doc["rank"] = m.rank();
    out.doc["top_degree"] = m.top_degree();
    out.doc["loops"] = elements_of(m.loops());
    out.doc["coloops"] = elements_of(m.coloops());
    out.doc["simple"] = m.is_simple();
    out.doc["boolean"] = m.is_boolean();

    out.table << "ground set: " << m.ground_size() << " elements\n";
    if (m.labels()) {
        out.table << "labels:";
        for (const std::string& s : *m.labels()) out.table << " " << s;
        out.table << "\n";
    }
    out.table << "rank: " << m.rank() << " (top Chow degree " << m.top_degree() << ")\n";
    out.table << "flats: " << m.num_flats() << "\n";
    for (int i = 0; i < m.num_flats(); ++i) {
        out.table << "  [" << i << "] " << flat_text(m, m.flat(i)) << "  rank "
                  << m.flat_rank(i) << "  covers:";
        for (int c : m.covers(i)) out.table << " " << c;
        out.table << "\n";
    }
    out.table << "loops: " << format_set(m.loops()) << "\n";
    out.table << "coloops: " << format_set(m.coloops()) << "\n";
    out.table << "simple: " << (m.is_simple() ? "yes" : "no") << "\n";
    return 0;
}

int cmd_charpoly(Context& ctx, Output& out) {
    const Matroid& m = ctx.m;
    out.doc["command"] = "charpoly";
    out.doc["source"] = ctx.source;

    std::vector<std::string> methods;
    CharPoly chi = char_poly_deletion_contraction(m);
    methods.push_back("deletion-contraction");
    CharPoly via_mobius = char_poly_mobius(m);
    methods.push_back("moebius");
    if (chi != via_mobius)
        throw VerificationError("charpoly methods disagree: deletion-contraction gave " +
                                chi.to_string() + ", moebius gave " + via_mobius.to_string());
    if (!m.loopless())
        out.diag.warn("matroid has loops " + format_set(m.loops()) +
                      "; the characteristic polynomial is 0 and the reduced form is undefined");
    if (m.ground_size() <= 20) {
        CharPoly via_whitney = char_poly(m);
        methods.push_back("whitney");
        if (chi != via_whitney)
            throw VerificationError("charpoly methods disagree: deletion-contraction gave " +
                                    chi.to_string() + ", whitney gave " + via_whitney.to_string());
    } else {
        out.diag.warn("whitney sum skipped (ground set over 20 elements)");
    }

    out.doc["chi"] = char_poly_to_json(chi);
    out.doc["methods"] = methods;
    out.doc["methods_agree"] = true;
    out.table << "chi(λ) = " << chi.to_string() << "\n";
    if (m.loopless()) {
        CharPoly reduced = reduced_char_poly(m);
        std::vector<Int> mus = mu_vector(m);
        out.doc["chi_reduced"] = char_poly_to_json(reduced);
        json jmu = json::array();
        for (const Int& v : mus) jmu.push_back(int_to_string(v));
        out.doc["mu"] = std::move(jmu);
        out.table << "reduced chi(λ) = " << reduced.to_string() << "\n";
        out.table << "mu = (";
        for (size_t i = 0; i < mus.size(); ++i) out.table << (i ? ", " : "") << mus[i];
        out.table << ")\n";
    } else {
        out.doc["chi_reduced"] = nullptr;
        out.doc["mu"] = nullptr;
    }
    out.table << "methods:";
    for (const std::string& s : methods) out.table << " " << s;
    out.table << " (agree)\n";
    return 0;
}

int cmd_degree(Context& ctx, Output& out, const std::string& text, bool trace, bool with_oracle) {
    const Matroid& m = ctx.m;
    DivisorMonomial mono = parse_monomial(m, text);
    DegreeCache cache;
    Int value = deg_monomial(m, mono, &out.diag, &cache);

    out.doc["command"] = "degree";
    out.doc["source"] = ctx.source;
    out.doc["monomial"] = format_monomial(m, mono);
    out.doc["deg"] = int_to_string(value);
    out.table << "monomial: " << format_monomial(m, mono) << "\n";
    out.table << "deg = " << value << "\n";

    if (trace) {
        PsiExpansion expansion = expand_monomial(m, mono);
        json jterms = json::array();
        Int total = 0;
        out.table << "expansion: " << expansion.terms.size() << " terms\n";
        for (const FlagPsiTerm& term : expansion.terms) {
            Int term_value = deg_flag_mixed(m, term, &cache);
            total += term_value;
            json jt;
            jt["coef"] = int_to_string(term.coefficient);
            json jflag = json::array();
            for (int idx : term.flag) jflag.push_back(elements_of(m.flat(idx)));
            jt["flag"] = std::move(jflag);
            jt["psi_plus_exps"] = term.plus_exp;
            jt["psi_minus_exps"] = term.minus_exp;
            jt["value"] = int_to_string(term_value);
            jterms.push_back(std::move(jt));

            out.table << "  coef " << term.coefficient << " ·";
            const size_t k = term.flag.size();
            for (size_t i = 0; i <= k; ++i) {
                Mask lo = i == 0 ? Mask(0) : m.flat(term.flag[i - 1]);
                Mask hi = i == k ? m.ground_mask() : m.flat(term.flag[i]);
                if (i < k) out.table << " D(" << flat_text(m, hi) << ")";
                if (term.plus_exp[i] || term.minus_exp[i])
                    out.table << " ψ+(" << flat_text(m, lo) << ")^" << term.plus_exp[i]
                              << " ψ−(" << flat_text(m, hi) << ")^" << term.minus_exp[i];
            }
            out.table << " → " << term_value << "\n";
        }
        if (total != value)
            throw VerificationError("psi expansion totals " + total.str() +
                                    " but the closed form gives " + value.str());
        out.doc["expansion"] = std::move(jterms);
        out.doc["expansion_total"] = int_to_string(total);
        out.table << "expansion total = " << total << " (agrees)\n";
    }
    if (with_oracle) {
        Oracle oracle(m);
        Int slow = oracle.degree(mono);
        if (slow != value)
            throw VerificationError("oracle degree " + slow.str() +
                                    " disagrees with the closed form " + value.str());
        out.doc["oracle"] = int_to_string(slow);
        out.table << "oracle = " << slow << " (agrees)\n";
    }
    return 0;
}

int cmd_psi_degree(Context& ctx, Output& out, const std::vector<std::string>& args,
                   const std::vector<std::string>& minus_flats) {
    const Matroid& m = ctx.m;
    out.doc["command"] = "psi-degree";
    out.doc["source"] = ctx.source;
    if (!minus_flats.empty()) {
        if (!args.empty())
            throw InputError("psi-degree: give either exponents a b or --minus flats, not both");
        std::vector<Mask> flats;
        json jf = json::array();
        for (const std::string& s : minus_flats) {
            Mask f = parse_flat(m, s);
            flats.push_back(f);
            jf.push_back(elements_of(f));
        }
        Int value = deg_psi_minus_product(m, flats);
        out.doc["flats"] = std::move(jf);
        out.doc["value"] = int_to_string(value);
        out.table << "deg(";
        for (Mask f : flats) out.table << " ψ−(" << flat_text(m, f) << ")";
        out.table << " ) = " << value << "\n";
        return 0;
    }
    if (args.size() != 2)
        throw InputError("psi-degree: expected two exponents a b (or --minus flats)");
    int a = 0, b = 0;
    try {
        size_t pa = 0, pb = 0;
        a = std::stoi(args[0], &pa);
        b = std::stoi(args[1], &pb);
        if (pa != args[0].size() || pb != args[1].size()) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
        throw InputError("psi-degree: exponents must be integers, got '" + args[0] + "' '" +
                         args[1] + "'");
    }
    Int value = deg_psi_powers(m, a, b);
    out.doc["a"] = a;
    out.doc["b"] = b;
    out.doc["value"] = int_to_string(value);
    out.table << "deg(ψ0^" << a << " ψ∞^" << b << ") = " << value << "\n";
    return 0;
}

std::string volume_term_text(const VolumeTerm& t) {
    std::ostringstream s;
    s << t.coef << " ·";
    for (size_t i = 0; i < t.flag.size(); ++i) {
        s << " x" << format_set(t.flag[i]);
        if (t.exps[i] > 1) s << "^" << t.exps[i];
    }
    if (t.flag.empty()) s << " 1";
    return s.str();
}

int cmd_volume(Context& ctx, Output& out, bool symbolic, const std::string& eval_path,
               const std::string& postnikov_path) {
    const Matroid& m = ctx.m;
    out.doc["command"] = "volume";
    out.doc["source"] = ctx.source;
    int modes = (symbolic ? 1 : 0) + (eval_path.empty() ? 0 : 1) + (postnikov_path.empty() ? 0 : 1);
    if (modes != 1)
        throw InputError("volume: pick exactly one of --symbolic, --eval, --postnikov");

    if (symbolic) {
        VolumePolynomial vp = volume_polynomial(m);
        out.doc["mode"] = "symbolic";
        out.doc["boolean_case"] = vp.boolean_case;
        out.doc["denominator_factorial"] = vp.denominator_factorial;
        out.doc["normalization_applied_on_eval"] = vp.boolean_case;
        out.doc["terms"] = volume_polynomial_to_json(vp);
        out.table << "volume polynomial, " << vp.terms.size() << " terms (raw degrees";
        if (vp.boolean_case)
            out.table << "; evaluation divides by " << vp.denominator_factorial << "!";
        out.table << "):\n";
        for (const VolumeTerm& t : vp.terms) out.table << "  " << volume_term_text(t) << "\n";
        return 0;
    }
    if (!eval_path.empty()) {
        auto [n, x] = support_from_file(eval_path);
        if (n != m.ground_size())
            throw InputError("volume --eval: file says n = " + std::to_string(n) +
                             " but the source has " + std::to_string(m.ground_size()) +
                             " elements");
        Rat value = eval_volume(m, x, &out.diag);
        out.doc["mode"] = "eval";
        out.doc["value"] = rat_to_string(value);
        out.doc["normalization"] =
            m.is_boolean() ? "1/" + std::to_string(m.top_degree()) + "!" : "none";
        out.table << "volume = " << rat_to_string(value) << "\n";
        if (!m.is_boolean()) out.table << "(raw degree; no polytope normalization)\n";
        return 0;
    }
    if (!m.is_boolean())
        throw InputError("volume --postnikov: the source must be a Boolean matroid");
    auto [n, y] = weights_from_file(postnikov_path);
    if (n != m.ground_size())
        throw InputError("volume --postnikov: file says n = " + std::to_string(n) +
                         " but the source has " + std::to_string(m.ground_size()) + " elements");
    Rat direct = postnikov_volume(n, y);
    SupportVector x = minkowski_to_support(n, y);
    Rat via_chow = eval_volume(m, x, &out.diag);
    if (direct != via_chow)
        throw VerificationError("postnikov volume " + rat_to_string(direct) +
                                " disagrees with the Chow evaluation " + rat_to_string(via_chow));
    out.doc["mode"] = "postnikov";
    out.doc["value"] = rat_to_string(direct);
    out.doc["postnikov"] = rat_to_string(direct);
    out.doc["chow"] = rat_to_string(via_chow);
    out.doc["agree"] = true;
    out.doc["support_vector"] = support_to_json(n, x);
    out.table << "volume = " << rat_to_string(direct) << " (tuple formula and Chow evaluation agree)\n";
    return 0;
}

int cmd_verify(Context& ctx, Output& out, bool pd, bool oracle_mode, bool all, int only_k,
               int samples) {
    const Matroid& m = ctx.m;
    require_loopless(m, "verify");
    out.doc["command"] = "verify";
    out.doc["source"] = ctx.source;
    out.doc["seed"] = ctx.seed;
    if (all) pd = oracle_mode = true;
    if (!pd && !oracle_mode)
        throw InputError("verify: pick --pd, --oracle, or --all");

    const int r = m.top_degree();
    Oracle oracle(m);
    bool ok = true;

    if (pd) {
        std::vector<int> ks;
        if (only_k >= 0) {
            if (only_k > r)
                throw InputError("verify --pd: k = " + std::to_string(only_k) +
                                 " is above the top degree " + std::to_string(r));
            ks.push_back(only_k);
        } else {
            for (int k = 0; k <= r; ++k) ks.push_back(k);
        }
        json jpd = json::array();
        out.table << "poincare pairing:\n";
        for (int k : ks) {
            PairingCertificate cert = oracle.pairing(k, 0.1, ctx.seed);
            size_t fy = oracle.fy_basis(k).size();
            size_t dual = oracle.fy_basis(r - k).size();
            int rank = oracle.graded(k).quotient_rank();
            bool diag_unit = true;
            for (const Int& d : cert.diag)
                if (abs(d) != 1) diag_unit = false;
            bool k_ok = cert.triangular && diag_unit && abs(cert.det) == 1 &&
                        fy == static_cast<size_t>(rank) && dual == fy;
            ok = ok && k_ok;
            json jk = pairing_certificate_to_json(cert);
            jk["fy_count"] = fy;
            jk["oracle_rank"] = rank;
            jk["dual_count"] = dual;
            jk["ok"] = k_ok;
            jpd.push_back(std::move(jk));
            out.table << "  k=" << k << ": rank " << rank << ", fy " << fy << ", dual " << dual
                      << ", triangular " << (cert.triangular ? "yes" : "NO") << ", |diag|=1 "
                      << (diag_unit ? "yes" : "NO") << ", det " << cert.det << ", spot checks "
                      << cert.spot_checks_run << (k_ok ? "  [ok]" : "  [FAIL]") << "\n";
        }
        out.doc["pd"] = std::move(jpd);
    }

    if (oracle_mode) {
        DegreeCache cache;
        std::mt19937_64 rng(ctx.seed);
        const std::vector<int>& proper = m.proper_flats();
        const int top = m.num_flats() - 1;
        int agreements = 0;
        for (int s = 0; s < samples; ++s) {
            DivisorMonomial mono;
            if (r > 0) {
                if ((rng() & 1) != 0 || proper.empty()) {
                    std::vector<int> chain;
                    int cur = 0;
                    while (m.flat(cur) != m.ground_mask()) {
                        const std::vector<int>& cov = m.covers(cur);
                        cur = cov[static_cast<size_t>(rng() % cov.size())];
                        chain.push_back(cur);
                    }
                    for (int t = 0; t < r; ++t)
                        mono.exps[chain[static_cast<size_t>(rng() % chain.size())]] += 1;
                } else {
                    for (int t = 0; t < r; ++t) {
                        size_t u = static_cast<size_t>(rng() % (proper.size() + 1));
                        int idx = u == proper.size() ? top : proper[u];
                        mono.exps[idx] += 1;
                    }
                }
            }
            Int fast = deg_monomial(m, mono, nullptr, &cache);
            Int slow = oracle.degree(mono);
            if (fast != slow)
                throw VerificationError("degree mismatch on " + format_monomial(m, mono) +
                                        ": closed form " + fast.str() + ", oracle " + slow.str());
            ++agreements;
        }
        json jo;
        jo["samples"] = samples;
        jo["agreements"] = agreements;
        out.doc["oracle_check"] = std::move(jo);
        out.table << "oracle degree check: " << agreements << "/" << samples << " agreements\n";
    }

    out.doc["ok"] = ok;
    out.table << (ok ? "verify: ok\n" : "verify: FAILED\n");
    return ok ? 0 : 1;
}

Matroid build_matroid(int boolean_n, const std::vector<int>& uniform_rn,
                      const std::string& graph_path, const std::string& matrix_path,
                      const std::string& flats_path, json& source) {
    int given = (boolean_n >= 0 ? 1 : 0) + (uniform_rn.empty() ? 0 : 1) +
                (graph_path.empty() ? 0 : 1) + (matrix_path.empty() ? 0 : 1) +
                (flats_path.empty() ? 0 : 1);
    if (given != 1)
        throw InputError("pick exactly one matroid source: --boolean n, --uniform r n, "
                         "--graph file, --matrix file, or --flats file");
    if (boolean_n >= 0) {
        source = {{"kind", "boolean"}, {"n", boolean_n}};
        return from_boolean(boolean_n);
    }
    if (!uniform_rn.empty()) {
        source = {{"kind", "uniform"}, {"rank", uniform_rn[0]}, {"n", uniform_rn[1]}};
        return from_uniform(uniform_rn[0], uniform_rn[1]);
    }
    if (!graph_path.empty()) {
        source = {{"kind", "graph"}, {"path", graph_path}};
        return graph_from_file(graph_path);
    }
    if (!matrix_path.empty()) {
        source = {{"kind", "matrix"}, {"path", matrix_path}};
        return matrix_from_file(matrix_path);
    }
    source = {{"kind", "flats"}, {"path", flats_path}};
    return matroid_from_file(flats_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Chow-ring degrees, characteristic polynomials, and volumes of matroids"};
    app.require_subcommand(1);

    int boolean_n = -1;
    std::vector<int> uniform_rn;
    std::string graph_path, matrix_path, flats_path;
    app.add_option("--boolean", boolean_n, "Boolean matroid on n elements");
    app.add_option("--uniform", uniform_rn, "uniform matroid: rank n")->expected(2);
    app.add_option("--graph", graph_path, "graphic matroid from a JSON edge list");
    app.add_option("--matrix", matrix_path, "vector matroid from a JSON matrix");
    app.add_option("--flats", flats_path, "matroid from a JSON flat list");

    bool as_json = false, as_table = false, no_timing = false;
    bool trace = false, with_oracle = false;
    std::uint64_t seed = 0;
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--table", as_table, "plain-text output (default)");
    app.add_flag("--no-timing", no_timing, "omit timing from output");
    app.add_flag("--trace", trace, "degree: print the psi expansion");
    app.add_flag("--oracle", with_oracle, "degree: cross-check against the quotient-ring oracle");
    app.add_option("--seed", seed, "seed for sampled checks");

    CLI::App* sub_flats = app.add_subcommand("flats", "list the lattice of flats");
    CLI::App* sub_charpoly =
        app.add_subcommand("charpoly", "characteristic polynomial by three methods");
    CLI::App* sub_degree = app.add_subcommand("degree", "degree of a divisor monomial");
    std::vector<std::string> monomial_parts;
    sub_degree->add_option("monomial", monomial_parts, "factors, e.g. \"D{0,1}^3 * D{E}\"")
        ->required();
    CLI::App* sub_psi = app.add_subcommand("psi-degree", "psi-class degrees");
    std::vector<std::string> psi_args;
    sub_psi->add_option("exponents", psi_args, "exponents a b for psi_0^a psi_inf^b");
    std::vector<std::string> minus_flats;
    sub_psi->add_option("--minus", minus_flats, "nonempty flats F_1 .. F_r");
    CLI::App* sub_volume = app.add_subcommand("volume", "volume polynomial and evaluations");
    bool symbolic = false;
    std::string eval_path, postnikov_path;
    sub_volume->add_flag("--symbolic", symbolic, "print the volume polynomial");
    sub_volume->add_option("--eval", eval_path, "evaluate at a support vector JSON file");
    sub_volume->add_option("--postnikov", postnikov_path,
                           "tuple-formula volume of Minkowski weights, cross-checked");
    CLI::App* sub_verify = app.add_subcommand("verify", "verification suites");
    bool ver_pd = false, ver_oracle = false, ver_all = false;
    int ver_k = -1, ver_samples = 200;
    sub_verify->add_flag("--pd", ver_pd, "Poincare pairing certificates");
    sub_verify->add_flag("--oracle", ver_oracle, "closed form vs oracle on random monomials");
    sub_verify->add_flag("--all", ver_all, "everything");
    sub_verify->add_option("k", ver_k, "restrict --pd to a single degree");
    sub_verify->add_option("--samples", ver_samples, "monomials to sample for --oracle");

    for (CLI::App* sub : {sub_flats, sub_charpoly, sub_degree, sub_psi, sub_volume, sub_verify})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (as_json && as_table)
            throw InputError("--json and --table are mutually exclusive");
        json source;
        Matroid m =
            build_matroid(boolean_n, uniform_rn, graph_path, matrix_path, flats_path, source);
        Context ctx{std::move(m), std::move(source), as_json, no_timing, seed};

        Output out;
        auto t0 = std::chrono::steady_clock::now();
        int code = 0;
        if (app.got_subcommand(sub_flats)) {
            code = cmd_flats(ctx, out);
        } else if (app.got_subcommand(sub_charpoly)) {
            code = cmd_charpoly(ctx, out);
        } else if (app.got_subcommand(sub_degree)) {
            std::string text;
            for (size_t i = 0; i < monomial_parts.size(); ++i) {
                if (i) text += " * ";
                text += monomial_parts[i];
            }
            code = cmd_degree(ctx, out, text, trace, with_oracle);
        } else if (app.got_subcommand(sub_psi)) {
            code = cmd_psi_degree(ctx, out, psi_args, minus_flats);
        } else if (app.got_subcommand(sub_volume)) {
            code = cmd_volume(ctx, out, symbolic, eval_path, postnikov_path);
        } else if (app.got_subcommand(sub_verify)) {
            code = cmd_verify(ctx, out, ver_pd, ver_oracle, ver_all, ver_k, ver_samples);
        }
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        emit(ctx, out, ms);
        return code;
    } catch (const GuardError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

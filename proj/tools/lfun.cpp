// Command-line front end: evaluate L-function quantities, factor terms,
// coefficient formulas, and the verification suites, in json/csv/text.
// Exit codes: 0 success, 1 parse or usage error, 2 refused precondition
// (pole, trivial zero, excluded case), 3 verification failure.

#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfun/serialize.hpp"

namespace {

using namespace lfun;

struct Common {
    long prec_bits = 192;
    std::string output = "text";
    std::string routes = "both";
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--prec-bits", c.prec_bits, "working precision in bits")
        ->check(CLI::Range(64L, 4096L))
        ->capture_default_str();
    cmd->add_option("--output", c.output, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--routes", c.routes, "log-derivative evaluation routes")
        ->check(CLI::IsMember({"direct", "functional", "both"}))
        ->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads; output is identical for any count")
        ->check(CLI::Range(1u, 64u))
        ->capture_default_str();
}

RouteChoice parse_route_choice(const std::string& s) {
    if (s == "direct") return RouteChoice::direct;
    if (s == "functional") return RouteChoice::functional;
    return RouteChoice::both;
}

long parse_long(const std::string& s) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        fail(errc::parse_error, "bad integer: '" + s + "'");
    return v;
}

unsigned long parse_ulong(const std::string& s) {
    unsigned long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        fail(errc::parse_error, "bad nonnegative integer: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<unsigned long> parse_ulong_list(const std::string& s) {
    std::vector<unsigned long> out;
    if (s.empty()) return out;
    for (const auto& part : split(s, ',')) out.push_back(parse_ulong(part));
    return out;
}

// "trivial" | "D:<disc>" | "<q>:<e1>,<e2>,..." | {"modulus":..,"exponents":[..]}
DirichletCharacter parse_chi(const std::string& spec) {
    if (spec.empty()) fail(errc::parse_error, "empty character spec");
    if (spec == "trivial") return DirichletCharacter::trivial(1);
    if (spec[0] == '{') {
        ojson j = ojson::parse(spec, nullptr, false);
        if (j.is_discarded() || !j.contains("modulus") || !j.contains("exponents") ||
            !j["modulus"].is_number_unsigned() || !j["exponents"].is_array())
            fail(errc::parse_error, "character JSON needs {modulus, exponents}: " + spec);
        std::vector<unsigned long> ex;
        for (const auto& e : j["exponents"]) {
            if (!e.is_number_unsigned()) fail(errc::parse_error, "bad exponent in: " + spec);
            ex.push_back(e.get<unsigned long>());
        }
        return DirichletCharacter(j["modulus"].get<unsigned long>(), ex);
    }
    if (spec.rfind("D:", 0) == 0) return quadratic_character(parse_long(spec.substr(2)));
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        fail(errc::parse_error, "unrecognized character spec: '" + spec + "'");
    return DirichletCharacter(parse_ulong(spec.substr(0, colon)),
                              parse_ulong_list(spec.substr(colon + 1)));
}

// "D:<disc>" | "<f>" (full cyclotomic field of conductor f; f=1 is the
// degenerate degree-one spec) | "<f>:<g1>,<g2>,..." | JSON
AbelianFieldSpec parse_field(const std::string& spec) {
    if (spec.empty()) fail(errc::parse_error, "empty field spec");
    if (spec[0] == '{') {
        ojson j = ojson::parse(spec, nullptr, false);
        if (j.is_discarded() || !j.contains("conductor") || !j["conductor"].is_number_unsigned())
            fail(errc::parse_error, "field JSON needs {conductor, subgroup_gens}: " + spec);
        AbelianFieldSpec K;
        K.conductor = j["conductor"].get<unsigned long>();
        if (j.contains("subgroup_gens")) {
            if (!j["subgroup_gens"].is_array()) fail(errc::parse_error, "bad subgroup_gens in: " + spec);
            for (const auto& g : j["subgroup_gens"]) {
                if (!g.is_number_unsigned()) fail(errc::parse_error, "bad generator in: " + spec);
                K.subgroup_gens.push_back(g.get<unsigned long>());
            }
        }
        return K;
    }
    if (spec.rfind("D:", 0) == 0) return quadratic_field_spec(parse_long(spec.substr(2)));
    std::size_t colon = spec.find(':');
    AbelianFieldSpec K;
    if (colon == std::string::npos) {
        K.conductor = parse_ulong(spec);
    } else {
        K.conductor = parse_ulong(spec.substr(0, colon));
        K.subgroup_gens = parse_ulong_list(spec.substr(colon + 1));
    }
    if (K.conductor == 0) fail(errc::parse_error, "field conductor must be positive");
    return K;
}

// "<target>@<n>" or "<target>@<n>@<weight>"
ConjectureEntry parse_entry(const std::string& s, bool is_field) {
    auto parts = split(s, '@');
    if (parts.size() < 2 || parts.size() > 3)
        fail(errc::parse_error, "entry must be <spec>@<n> or <spec>@<n>@<weight>: '" + s + "'");
    ConjectureEntry e;
    e.is_field = is_field;
    if (is_field)
        e.field = parse_field(parts[0]);
    else
        e.chi = parse_chi(parts[0]);
    unsigned long n = parse_ulong(parts[1]);
    if (n == 0) fail(errc::parse_error, "entry n must be positive: '" + s + "'");
    e.n = (unsigned)n;
    if (parts.size() == 3) e.weight = Rational::from_string(parts[2]);
    return e;
}

void emit(const std::string& s) { std::fwrite(s.data(), 1, s.size(), stdout); }

void emit_json(const ojson& j) { emit(j.dump(2) + "\n"); }

int cmd_lvalue(const Common& c, const std::string& chi_spec, const std::string& s_spec,
               bool deriv) {
    DirichletCharacter chi = parse_chi(chi_spec);
    BigFloat s = BigFloat::from_string(s_spec, (mpfr_prec_t)(c.prec_bits + 32));
    Evaluation v = deriv ? l_deriv(BigComplex(s), chi, c.prec_bits)
                         : l_value(BigComplex(s), chi, c.prec_bits);
    if (c.output == "json") {
        emit_json(ojson{{"chi", json_character(chi)},
                        {"s", s_spec},
                        {"deriv", deriv},
                        {"value", json_evaluation(v)}});
    } else if (c.output == "csv") {
        std::string out = csv_row({"chi", "s", "deriv", "value", "error_bound", "route"});
        auto cells = csv_eval_cells(v);
        out += csv_row({character_label(chi), s_spec, deriv ? "true" : "false", cells[0], cells[1],
                        cells[2]});
        emit(out);
    } else {
        emit("chi: " + character_label(chi) + "\n");
        emit("s: " + s_spec + "\n");
        emit(std::string(deriv ? "L'" : "L") + ": " + text_evaluation(v) + "\n");
    }
    return 0;
}

int cmd_ldlog(const Common& c, const std::string& chi_spec, unsigned n) {
    DirichletCharacter chi = parse_chi(chi_spec);
    LogDerivResult r = l_logderiv_neg(n, chi, c.prec_bits, parse_route_choice(c.routes));
    long digits = decimal_digits_for(r.value.prec_bits);
    if (c.output == "json") {
        emit_json(json_logderiv(r));
    } else if (c.output == "csv") {
        std::string out = csv_row({"chi", "n", "value", "error_bound", "route", "agreement"});
        auto cells = csv_eval_cells(r.value);
        out += csv_row({character_label(r.chi), std::to_string(r.n), cells[0], cells[1], cells[2],
                        r.agreement.to_decimal(digits)});
        emit(out);
    } else {
        emit("chi: " + character_label(r.chi) + "\n");
        emit("n: " + std::to_string(r.n) + "\n");
        emit("value: " + text_evaluation(r.value) + "\n");
        emit("route_a: " + text_evaluation(r.route_a) + "\n");
        emit("route_b: " + text_evaluation(r.route_b) + "\n");
        emit("agreement: " + r.agreement.to_decimal(6) + "\n");
    }
    return 0;
}

int cmd_bernoulli(const Common& c, const std::string& chi_spec, unsigned n) {
    DirichletCharacter chi = primitive_part(parse_chi(chi_spec));
    GenBernoulli g = gen_bernoulli(n, chi);
    if (c.output == "json") {
        emit_json(ojson{{"n", g.n},
                        {"chi", json_character(g.character)},
                        {"value", json_cyclo(g.value)}});
    } else if (c.output == "csv") {
        std::string coeffs;
        for (std::size_t i = 0; i < g.value.coeffs().size(); ++i)
            coeffs += (i ? ";" : "") + g.value.coeffs()[i].to_string();
        std::string out = csv_row({"chi", "n", "order", "coeffs"});
        out += csv_row({character_label(g.character), std::to_string(g.n),
                        std::to_string(g.value.order()), coeffs});
        emit(out);
    } else {
        emit(text_cyclo(g.value) + "\n");
    }
    return 0;
}

int cmd_factor(const Common& c, const std::string& chi_spec, unsigned n) {
    DirichletCharacter chi = parse_chi(chi_spec);
    ColmezFactor f = colmez_factor(chi, n, c.prec_bits, parse_route_choice(c.routes));
    if (c.output == "json") {
        emit_json(json_colmez(f));
    } else if (c.output == "csv") {
        std::string out = csv_row({"chi", "n", "harmonic_term", "logderiv", "logderiv_bound",
                                   "log2_term", "log2_bound", "total", "total_bound", "route"});
        auto ld = csv_eval_cells(f.logderiv);
        auto l2 = csv_eval_cells(f.log2_term);
        auto tt = csv_eval_cells(f.total);
        out += csv_row({character_label(f.chi), std::to_string(f.n), f.harmonic_term.to_string(),
                        ld[0], ld[1], l2[0], l2[1], tt[0], tt[1], tt[2]});
        emit(out);
    } else {
        emit(text_colmez(f));
    }
    return 0;
}

int emit_coefficient(const Common& c, const DegreeCoefficient& co) {
    if (c.output == "json") {
        emit_json(json_coefficient(co));
    } else if (c.output == "csv") {
        std::string kind = co.which == CoefficientKind::prop22 ? "prop22" : "prop23";
        std::string out = csv_row({"kind", "field", "d", "chi", "value", "error_bound", "route"});
        auto cells = csv_eval_cells(co.value);
        out += csv_row({kind, field_label(co.field), std::to_string(co.d), "", cells[0], cells[1],
                        cells[2]});
        for (const auto& [chi, ev] : co.decomposition) {
            auto tc = csv_eval_cells(ev);
            out += csv_row({"term", field_label(co.field), std::to_string(co.d),
                            character_label(chi), tc[0], tc[1], tc[2]});
        }
        emit(out);
    } else {
        emit(text_coefficient(co));
    }
    return 0;
}

int cmd_verify(const Common& c, const std::string& suite) {
    std::vector<OracleReport> suites = run_verify(suite, c.prec_bits, c.threads);
    bool all = true;
    for (const auto& s : suites) all = all && s.pass;
    long digits = decimal_digits_for(c.prec_bits);
    if (c.output == "json") {
        ojson js = ojson::array();
        for (const auto& s : suites) js.push_back(json_oracle_report(s, digits));
        emit_json(ojson{{"suites", js}, {"pass", all}});
    } else if (c.output == "csv") {
        emit(csv_oracle_reports(suites, digits));
    } else {
        std::string out;
        for (const auto& s : suites) out += text_oracle_report(s);
        out += std::string("verify: ") + (all ? "pass" : "FAIL") + "\n";
        emit(out);
    }
    return all ? 0 : 3;
}

int cmd_report(const Common& c, const std::vector<std::string>& chi_entries,
               const std::vector<std::string>& field_entries, bool with_oracles) {
    std::vector<ConjectureEntry> entries;
    for (const auto& s : chi_entries) entries.push_back(parse_entry(s, false));
    for (const auto& s : field_entries) entries.push_back(parse_entry(s, true));
    ConjectureReport rep = conjecture_report(entries, c.prec_bits, with_oracles, c.threads);
    if (c.output == "json")
        emit_json(json_conjecture_report(rep));
    else if (c.output == "csv")
        emit(csv_conjecture_report(rep));
    else
        emit(text_conjecture_report(rep));
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Dirichlet/abelian L-function log-derivatives at non-positive integers,\n"
                 "factor terms, closed-form coefficients, and verification suites."};
    app.require_subcommand(1);
    Common c;

    std::string lv_chi, lv_s;
    auto* lv = app.add_subcommand("lvalue", "L(s, chi) or L'(s, chi) at a real point");
    lv->add_option("--chi", lv_chi, "character spec: trivial | D:<disc> | <q>:<e1>,<e2>,... | JSON")
        ->required();
    lv->add_option("--s", lv_s, "evaluation point (decimal)")->required();
    bool lv_deriv = false;
    lv->add_flag("--deriv", lv_deriv, "evaluate the s-derivative instead");
    add_common(lv, c);

    std::string ld_chi;
    unsigned ld_n = 1;
    auto* ld = app.add_subcommand("ldlog", "L'/L(chi, 1-n) by one or both routes");
    ld->add_option("--chi", ld_chi, "character spec")->required();
    ld->add_option("--n", ld_n, "positive integer n")->required()->check(CLI::PositiveNumber);
    add_common(ld, c);

    std::string be_chi;
    unsigned be_n = 1;
    auto* be = app.add_subcommand("bernoulli", "generalized Bernoulli number B_{n,chi}, exact");
    be->add_option("--chi", be_chi, "character spec")->required();
    be->add_option("--n", be_n, "positive integer n")->required()->check(CLI::PositiveNumber);
    add_common(be, c);

    std::string fa_chi;
    unsigned fa_n = 1;
    auto* fa = app.add_subcommand("factor", "scalar factor L'/L(chi,1-n) + H_{n-1}/2 - c log 2 term");
    fa->add_option("--chi", fa_chi, "character spec")->required();
    fa->add_option("--n", fa_n, "positive integer n")->required()->check(CLI::PositiveNumber);
    add_common(fa, c);

    std::string p22_field;
    auto* p22 = app.add_subcommand("prop22", "degree coefficient for a totally real abelian field");
    p22->add_option("--field", p22_field, "field spec: D:<disc> | <f> | <f>:<g1>,<g2>,... | JSON")
        ->required();
    add_common(p22, c);

    auto* p23 = app.add_subcommand("prop23", "the rational-field degree coefficient");
    add_common(p23, c);

    std::string ve_suite = "all";
    auto* ve = app.add_subcommand("verify", "run oracle suites; exit 3 on any failure");
    ve->add_option("--suite", ve_suite, "all | lerch | factorization | gross | kernels")
        ->capture_default_str();
    add_common(ve, c);

    std::vector<std::string> re_entries, re_field_entries;
    bool re_oracles = false;
    auto* re = app.add_subcommand("report", "assemble factor rows with optional oracle section");
    re->add_option("--entry", re_entries, "character entry <chi-spec>@<n>[@<weight>], repeatable");
    re->add_option("--field-entry", re_field_entries,
                   "field entry <field-spec>@<n>[@<weight>], repeatable");
    re->add_flag("--with-oracles", re_oracles, "append the full oracle table");
    add_common(re, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::string msg = ojson{{"code", "parse_error"}, {"message", e.what()}}.dump();
        std::fprintf(stderr, "%s\n", msg.c_str());
        return 1;
    }

    if (lv->parsed()) return cmd_lvalue(c, lv_chi, lv_s, lv_deriv);
    if (ld->parsed()) return cmd_ldlog(c, ld_chi, ld_n);
    if (be->parsed()) return cmd_bernoulli(c, be_chi, be_n);
    if (fa->parsed()) return cmd_factor(c, fa_chi, fa_n);
    if (p22->parsed()) return emit_coefficient(c, prop22_coefficient(parse_field(p22_field), c.prec_bits, c.threads));
    if (p23->parsed()) return emit_coefficient(c, prop23_coefficient(c.prec_bits));
    if (ve->parsed()) return cmd_verify(c, ve_suite);
    if (re->parsed()) return cmd_report(c, re_entries, re_field_entries, re_oracles);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lfun::error& e) {
        std::string msg =
            lfun::ojson{{"code", lfun::error::code_name(e.code())}, {"message", e.what()}}.dump();
        std::fprintf(stderr, "%s\n", msg.c_str());
        switch (e.code()) {
            case lfun::errc::parse_error:
            case lfun::errc::domain_error: return 1;
            default: return 2;
        }
    } catch (const std::exception& e) {
        std::string msg = lfun::ojson{{"code", "internal_error"}, {"message", e.what()}}.dump();
        std::fprintf(stderr, "%s\n", msg.c_str());
        return 1;
    }
}

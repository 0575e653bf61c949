#ifndef LFUN_SERIALIZE_HPP
#define LFUN_SERIALIZE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "report.hpp"

namespace lfun {

using ojson = nlohmann::ordered_json;

// Values and bounds are serialized as decimal strings, ceil(prec * 0.3010)
// digits, never binary floats; diagnostics tables shorten to a few
// significant digits but stay decimal strings. Both are deterministic for
// fixed inputs, which is what the byte-identical-output contract needs.

inline std::string field_label(const AbelianFieldSpec& K) {
    std::string s = "f=" + std::to_string(K.conductor) + " H=<";
    for (std::size_t i = 0; i < K.subgroup_gens.size(); ++i)
        s += (i ? "," : "") + std::to_string(K.subgroup_gens[i]);
    return s + ">";
}

inline ojson json_rational(const Rational& q) { return q.to_string(); }

inline ojson json_cyclo(const CycloElem& z) {
    ojson coeffs = ojson::array();
    for (const auto& c : z.coeffs()) coeffs.push_back(c.to_string());
    return ojson{{"order", z.order()}, {"coeffs", coeffs}};
}

inline ojson json_character(const DirichletCharacter& chi) {
    ojson ex = ojson::array();
    for (auto e : chi.exponents()) ex.push_back(e);
    return ojson{{"modulus", chi.modulus()},
                 {"exponents", ex},
                 {"conductor", chi.conductor()},
                 {"order", chi.order()},
                 {"parity", chi.is_even() ? "even" : "odd"}};
}

inline ojson json_field(const AbelianFieldSpec& K) {
    ojson gens = ojson::array();
    for (auto g : K.subgroup_gens) gens.push_back(g);
    return ojson{{"conductor", K.conductor}, {"subgroup_gens", gens}};
}

inline ojson json_evaluation(const Evaluation& e) {
    long digits = decimal_digits_for(e.prec_bits);
    return ojson{{"value", ojson{{"re", e.value.re.to_decimal(digits)},
                                 {"im", e.value.im.to_decimal(digits)}}},
                 {"error_bound", e.error_bound.to_decimal(digits)},
                 {"route", route_name(e.route)},
                 {"prec_bits", e.prec_bits}};
}

inline ojson json_logderiv(const LogDerivResult& r) {
    return ojson{{"chi", json_character(r.chi)},
                 {"n", r.n},
                 {"value", json_evaluation(r.value)},
                 {"route_a", json_evaluation(r.route_a)},
                 {"route_b", json_evaluation(r.route_b)},
                 {"agreement", r.agreement.to_decimal(decimal_digits_for(r.value.prec_bits))}};
}

inline ojson json_colmez(const ColmezFactor& f) {
    return ojson{{"chi", json_character(f.chi)},
                 {"n", f.n},
                 {"logderiv", json_evaluation(f.logderiv)},
                 {"harmonic_term", f.harmonic_term.to_string()},
                 {"log2_term", json_evaluation(f.log2_term)},
                 {"total", json_evaluation(f.total)}};
}

inline ojson json_coefficient(const DegreeCoefficient& c) {
    ojson dec = ojson::array();
    for (const auto& [chi, ev] : c.decomposition)
        dec.push_back(ojson{{"chi", json_character(chi)}, {"logderiv", json_evaluation(ev)}});
    return ojson{{"kind", c.which == CoefficientKind::prop22 ? "prop22" : "prop23"},
                 {"field", json_field(c.field)},
                 {"d", c.d},
                 {"value", json_evaluation(c.value)},
                 {"decomposition", dec}};
}

inline ojson json_oracle_report(const OracleReport& rep, long digits) {
    ojson rows = ojson::array();
    for (const auto& r : rep.rows)
        rows.push_back(ojson{{"label", r.label},
                             {"residual", r.residual.to_decimal(digits)},
                             {"tolerance", r.tolerance.to_decimal(digits)},
                             {"pass", r.pass},
                             {"note", r.note}});
    return ojson{{"name", rep.name},
                 {"pass", rep.pass},
                 {"max_residual", rep.max_residual.to_decimal(digits)},
                 {"rows", rows}};
}

inline ojson json_conjecture_report(const ConjectureReport& rep) {
    long digits = decimal_digits_for(rep.prec_bits);
    ojson entries = ojson::array();
    for (const auto& row : rep.rows) {
        ojson e;
        e["kind"] = row.entry.is_field ? "field" : "character";
        if (row.entry.is_field)
            e["field"] = json_field(row.entry.field);
        else
            e["chi"] = json_character(row.entry.chi);
        e["n"] = row.entry.n;
        e["weight"] = row.entry.weight.to_string();
        if (row.ok) {
            e["factor"] = ojson{{"logderiv", json_evaluation(row.logderiv)},
                                {"harmonic_term", row.harmonic_term.to_string()},
                                {"log2_term", json_evaluation(row.log2_term)},
                                {"total", json_evaluation(row.total)}};
            ojson dec = ojson::array();
            for (const auto& [chi, ev] : row.decomposition)
                dec.push_back(ojson{{"chi", json_character(chi)}, {"total", json_evaluation(ev)}});
            e["decomposition"] = dec;
            e["signed_value"] = json_evaluation(row.signed_value);
        } else {
            e["factor"] = nullptr;
            e["decomposition"] = ojson::array();
            e["signed_value"] = nullptr;
        }
        e["status"] = row.status;
        e["note"] = row.note;
        entries.push_back(std::move(e));
    }
    ojson oracles = ojson::array();
    for (const auto& suite : rep.oracles)
        for (const auto& r : suite.rows)
            oracles.push_back(ojson{{"name", suite.name + ": " + r.label},
                                    {"residual", r.residual.to_decimal(digits)},
                                    {"tolerance", r.tolerance.to_decimal(digits)},
                                    {"pass", r.pass}});
    return ojson{{"entries", entries}, {"oracles", oracles}};
}

// ---- text ----

inline std::string text_evaluation(const Evaluation& e) {
    long digits = decimal_digits_for(e.prec_bits);
    std::string s = e.value.re.to_decimal(digits);
    if (!e.value.im.is_zero()) {
        s += e.value.im.sign() < 0 ? " - i*" : " + i*";
        s += e.value.im.abs().to_decimal(digits);
    }
    return s + " +/- " + e.error_bound.to_decimal(6) + " [" + route_name(e.route) + "]";
}

inline std::string text_cyclo(const CycloElem& z) {
    if (z.is_rational()) return z.as_rational().to_string();
    std::string s = "order " + std::to_string(z.order()) + ": [";
    for (std::size_t i = 0; i < z.coeffs().size(); ++i)
        s += (i ? ", " : "") + z.coeffs()[i].to_string();
    return s + "]";
}

inline std::string text_oracle_report(const OracleReport& rep) {
    std::string out = "== " + rep.name + ": " + (rep.pass ? "pass" : "FAIL") +
                      " (max residual " + rep.max_residual.to_decimal(3) + ")\n";
    std::size_t wlab = 0;
    for (const auto& r : rep.rows) wlab = std::max(wlab, r.label.size());
    for (const auto& r : rep.rows) {
        out += "   " + r.label + std::string(wlab - r.label.size() + 1, ' ');
        out += r.residual.to_decimal(3) + " < " + r.tolerance.to_decimal(3);
        out += r.pass ? " ok" : " FAIL";
        if (!r.note.empty()) out += "  " + r.note;
        out += "\n";
    }
    return out;
}

inline std::string text_colmez(const ColmezFactor& f) {
    std::string out;
    out += "chi: " + character_label(f.chi) + "\n";
    out += "n: " + std::to_string(f.n) + "\n";
    out += "logderiv: " + text_evaluation(f.logderiv) + "\n";
    out += "harmonic_term: " + f.harmonic_term.to_string() + "\n";
    out += "log2_term: " + text_evaluation(f.log2_term) + "\n";
    out += "total: " + text_evaluation(f.total) + "\n";
    return out;
}

inline std::string text_coefficient(const DegreeCoefficient& c) {
    std::string out;
    out += "kind: " + std::string(c.which == CoefficientKind::prop22 ? "prop22" : "prop23") + "\n";
    out += "field: " + field_label(c.field) + "\n";
    out += "d: " + std::to_string(c.d) + "\n";
    out += "value: " + text_evaluation(c.value) + "\n";
    out += "decomposition:\n";
    for (const auto& [chi, ev] : c.decomposition)
        out += "   " + character_label(chi) + ": " + text_evaluation(ev) + "\n";
    return out;
}

inline std::string text_conjecture_report(const ConjectureReport& rep) {
    std::string out;
    for (const auto& row : rep.rows) {
        std::string target =
            row.entry.is_field ? field_label(row.entry.field) : character_label(row.entry.chi);
        out += "-- " + std::string(row.entry.is_field ? "field " : "character ") + target +
               "  n=" + std::to_string(row.entry.n) + "  weight=" + row.entry.weight.to_string() +
               "\n";
        if (!row.ok) {
            out += "   status: " + row.status + "\n";
            continue;
        }
        out += "   logderiv: " + text_evaluation(row.logderiv) + "\n";
        out += "   harmonic_term: " + row.harmonic_term.to_string() + "\n";
        out += "   log2_term: " + text_evaluation(row.log2_term) + "\n";
        out += "   total: " + text_evaluation(row.total) + "\n";
        for (const auto& [chi, ev] : row.decomposition)
            out += "   term " + character_label(chi) + ": " + text_evaluation(ev) + "\n";
        out += "   signed_value: " + text_evaluation(row.signed_value) + "\n";
        if (!row.note.empty()) out += "   note: " + row.note + "\n";
    }
    for (const auto& suite : rep.oracles) out += text_oracle_report(suite);
    return out;
}

// ---- csv ----

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += "\"\"";
        else r += c;
    }
    return r + "\"";
}

inline std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_escape(cells[i]);
    return out + "\n";
}

// Flat evaluation cells shared by every CSV shape: value, bound, route.
inline std::vector<std::string> csv_eval_cells(const Evaluation& e) {
    long digits = decimal_digits_for(e.prec_bits);
    std::string v = e.value.re.to_decimal(digits);
    if (!e.value.im.is_zero()) v += (e.value.im.sign() < 0 ? "-i*" : "+i*") + e.value.im.abs().to_decimal(digits);
    return {v, e.error_bound.to_decimal(digits), route_name(e.route)};
}

inline std::string csv_oracle_reports(const std::vector<OracleReport>& reps, long digits) {
    std::string out = csv_row({"suite", "label", "residual", "tolerance", "pass", "note"});
    for (const auto& rep : reps)
        for (const auto& r : rep.rows)
            out += csv_row({rep.name, r.label, r.residual.to_decimal(digits),
                            r.tolerance.to_decimal(digits), r.pass ? "true" : "false", r.note});
    return out;
}

inline std::string csv_conjecture_report(const ConjectureReport& rep) {
    std::string out = csv_row({"kind", "target", "n", "weight", "value", "error_bound", "route", "status"});
    for (const auto& row : rep.rows) {
        std::string target =
            row.entry.is_field ? field_label(row.entry.field) : character_label(row.entry.chi);
        std::vector<std::string> cells{row.entry.is_field ? "field" : "character", target,
                                       std::to_string(row.entry.n), row.entry.weight.to_string()};
        if (row.ok) {
            auto ev = csv_eval_cells(row.signed_value);
            cells.insert(cells.end(), ev.begin(), ev.end());
        } else {
            cells.insert(cells.end(), {"", "", ""});
        }
        cells.push_back(row.status);
        out += csv_row(cells);
    }
    long digits = decimal_digits_for(rep.prec_bits);
    for (const auto& suite : rep.oracles)
        for (const auto& r : suite.rows)
            out += csv_row({"oracle", suite.name + ": " + r.label, "", "",
                            r.residual.to_decimal(digits), r.tolerance.to_decimal(digits), "",
                            r.pass ? "pass" : "fail"});
    return out;
}

} // namespace lfun

#endif

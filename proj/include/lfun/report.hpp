#ifndef LFUN_REPORT_HPP
#define LFUN_REPORT_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "factors.hpp"
#include "oracles.hpp"
#include "parallel.hpp"

namespace lfun {

// One requested row: a character or an abelian field, the integer n, and
// an opaque rational multiplicity. The factor itself is unsigned; the
// leading -weight is applied only to signed_value in the assembled row.
struct ConjectureEntry {
    bool is_field = false;
    DirichletCharacter chi;
    AbelianFieldSpec field;
    unsigned n = 1;
    Rational weight = Rational(1);
};

struct ConjectureRow {
    ConjectureEntry entry;
    bool ok = false;
    std::string status;     // "ok" or the refusal text, with the offending character named
    Evaluation logderiv;    // field rows: summed over the character group
    Rational harmonic_term; // field rows: d * H_{n-1}/2, exact
    Evaluation log2_term;
    Evaluation total;
    Evaluation signed_value; // -weight * total
    std::string note;        // provenance remark, e.g. the unconditionally proven case
    std::vector<std::pair<DirichletCharacter, Evaluation>> decomposition; // per-character totals
};

struct ConjectureReport {
    std::vector<ConjectureRow> rows;
    std::vector<OracleReport> oracles;
    long prec_bits = 0;
};

namespace detail {

inline ConjectureRow conjecture_row(const ConjectureEntry& e, long prec) {
    ConjectureRow row;
    row.entry = e;
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    try {
        if (!e.is_field) {
            ColmezFactor f = colmez_factor(e.chi, e.n, prec);
            row.logderiv = f.logderiv;
            row.harmonic_term = f.harmonic_term;
            row.log2_term = f.log2_term;
            row.total = f.total;
            row.decomposition.emplace_back(f.chi, f.total);
        } else {
            std::vector<DirichletCharacter> chars = characters_of_field(e.field);
            BigComplex ld(w), l2(w), tot(w);
            BigFloat eld(w), el2(w), etot(w);
            Rational harm(0);
            Route ld_route = Route::euler_maclaurin;
            Route l2_route = Route::exact;
            Route tot_route = Route::euler_maclaurin;
            for (std::size_t i = 0; i < chars.size(); ++i) {
                ColmezFactor f = [&] {
                    try {
                        return colmez_factor(chars[i], e.n, prec);
                    } catch (const error& err) {
                        fail(err.code(), character_label(chars[i]) + ": " + err.what());
                    }
                }();
                ld += f.logderiv.value;
                eld += f.logderiv.error_bound;
                l2 += f.log2_term.value;
                el2 += f.log2_term.error_bound;
                tot += f.total.value;
                etot += f.total.error_bound;
                harm += f.harmonic_term;
                if (i == 0) {
                    ld_route = f.logderiv.route;
                    l2_route = f.log2_term.route;
                    tot_route = f.total.route;
                }
                row.decomposition.emplace_back(f.chi, f.total);
            }
            BigFloat slack = BigFloat(1, w).mul_2si(6 - (long)w);
            row.logderiv = rounded_eval(ld, eld + (ld.abs() + BigFloat(1, w)) * slack, ld_route, prec);
            row.harmonic_term = harm;
            row.log2_term = rounded_eval(l2, el2 + (l2.abs() + BigFloat(1, w)) * slack, l2_route, prec);
            row.total = rounded_eval(tot, etot + (tot.abs() + BigFloat(1, w)) * slack, tot_route, prec);
        }
        BigFloat wgt(e.weight, w);
        BigComplex sv = -(wgt * row.total.value);
        BigFloat serr =
            wgt.abs() * row.total.error_bound + (sv.abs() + BigFloat(1, w)).mul_2si(4 - (long)w);
        row.signed_value = rounded_eval(sv, serr, row.total.route, prec);
        row.ok = true;
        row.status = "ok";
        if (e.n == 2 && row.decomposition.size() == 1 && row.decomposition[0].first.is_trivial())
            row.note = "unconditionally proven case (K = Q, n = 2)";
    } catch (const error& err) {
        row.ok = false;
        row.status = err.what();
    }
    return row;
}

} // namespace detail

// Assembles the requested factors, carrying per-entry failures as row
// status so one excluded case never poisons its neighbours. Rows come
// back in entry order regardless of the thread count.
inline ConjectureReport conjecture_report(const std::vector<ConjectureEntry>& entries, long prec,
                                          bool with_oracles = false, unsigned threads = 0) {
    if (threads == 0) threads = default_thread_count();
    ConjectureReport rep;
    rep.prec_bits = prec;
    rep.rows = parallel_map(entries.size(), threads,
                            [&](std::size_t i) { return detail::conjecture_row(entries[i], prec); });
    if (with_oracles) rep.oracles = run_verify("all", prec, threads);
    return rep;
}

} // namespace lfun

#endif

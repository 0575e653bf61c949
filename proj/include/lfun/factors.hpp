#ifndef LFUN_FACTORS_HPP
#define LFUN_FACTORS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dedekind.hpp"
#include "lfunctions.hpp"
#include "parallel.hpp"

namespace lfun {

// The scalar bracket multiplying the Chern-character term:
//   L'/L(chi, 1-n) + H_{n-1}/2 - c_chi log(2)/(1 - 2^{-n}),
// c_chi = 1 for the trivial character and 0 otherwise. Returned without
// the leading minus sign of the statement it comes from; report assembly
// applies that sign. The log 2 normalization is only pinned down up to a
// bounded log(2) discrepancy in the literature; this code follows the
// displayed closed form above verbatim.
struct ColmezFactor {
    DirichletCharacter chi;
    unsigned n = 1;
    Evaluation logderiv;     // L'/L(chi, 1-n)
    Rational harmonic_term;  // H_{n-1}/2, exact
    Evaluation log2_term;    // c_chi log(2)/(1 - 2^{-n})
    Evaluation total;
    LogDerivResult logderiv_detail;
};

inline ColmezFactor colmez_factor(const DirichletCharacter& chi_in, unsigned n, long prec,
                                  RouteChoice routes = RouteChoice::both) {
    DirichletCharacter chi = primitive_part(chi_in);
    if (n == 1 && chi.is_trivial())
        fail(errc::excluded_case, "excluded case: n = 1 with the trivial character");

    ColmezFactor f;
    f.chi = chi;
    f.n = n;
    f.logderiv_detail = l_logderiv_neg(n, chi, prec, routes);
    f.logderiv = f.logderiv_detail.value;
    f.harmonic_term = Rational(1, 2) * harmonic_number(n - 1).value;

    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    if (chi.is_trivial()) {
        // log(2) * 2^n/(2^n - 1), the exact rational factor embedded once
        Rational scale = Rational(Integer(1)) - Rational(Integer(1), Integer(2)).pow((long)n);
        BigFloat v = log(BigFloat(2, w)) / BigFloat(scale, w);
        f.log2_term = rounded_eval(BigComplex(v), v.mul_2si(4 - (long)w), Route::series, prec);
    } else {
        f.log2_term = Evaluation::exact_value(BigComplex((mpfr_prec_t)prec), prec);
    }

    BigComplex total = f.logderiv.value + BigComplex(BigFloat(f.harmonic_term, w)) - f.log2_term.value;
    f.total = rounded_eval(total, f.logderiv.error_bound + f.log2_term.error_bound, f.logderiv.route, prec);
    return f;
}

// The one unconditionally proven higher case (K the rationals, n = 2):
// zeta'(-1)/zeta(-1) + 1/2 - (4/3) log 2.
inline Evaluation kuhn_case_factor(long prec) {
    return colmez_factor(DirichletCharacter::trivial(1), 2, prec).total;
}

enum class CoefficientKind { prop22, prop23 };

// A closed-form degree coefficient: either
//   prop22: -(d+1)( d/3 x + 2/3 z_K + d/2 - 4(d+2)/9 log 2 ),
//           x = zeta'/zeta(-1), z_K = zeta'_K/zeta_K(-1), d = [K:Q], or
//   prop23: -(4x - 16/3 log 2 + 2).
// decomposition lists each character's L'/L(chi, -1) contribution to z_K
// (just the trivial term for prop23); the listed terms sum to z_K exactly
// as used in value.
struct DegreeCoefficient {
    CoefficientKind which = CoefficientKind::prop22;
    AbelianFieldSpec field;
    unsigned long d = 1;
    Evaluation value;
    std::vector<std::pair<DirichletCharacter, Evaluation>> decomposition;
};

inline DegreeCoefficient prop22_coefficient(const AbelianFieldSpec& K, long prec,
                                            unsigned threads = 0) {
    if (!K.totally_real())
        fail(errc::domain_error, "the coefficient is defined for totally real abelian fields");
    if (threads == 0) threads = default_thread_count();

    DegreeCoefficient out;
    out.which = CoefficientKind::prop22;
    out.field = K;
    out.d = K.degree();

    std::vector<DirichletCharacter> chars = characters_of_field(K);
    auto rows = parallel_map(chars.size(), threads, [&](std::size_t i) -> Evaluation {
        try {
            return l_logderiv_neg(2, chars[i], prec).value;
        } catch (const error& e) {
            fail(e.code(), character_label(chars[i]) + ": " + e.what());
        }
    });

    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigComplex zK(w);
    BigFloat errzK(w);
    for (std::size_t i = 0; i < chars.size(); ++i) {
        out.decomposition.emplace_back(chars[i], rows[i]);
        zK += rows[i].value;
        errzK += rows[i].error_bound;
    }

    Evaluation x = l_logderiv_neg(2, DirichletCharacter::trivial(1), prec).value;
    long d = (long)out.d;
    BigFloat cd3(Rational(Integer(d), Integer(3)), w);
    BigFloat c23(Rational(Integer(2), Integer(3)), w);
    BigFloat cd2(Rational(Integer(d), Integer(2)), w);
    BigFloat clog(Rational(Integer(4 * (d + 2)), Integer(9)), w);
    BigComplex inner = BigComplex(cd3) * x.value + BigComplex(c23) * zK +
                       BigComplex(cd2 - clog * log(BigFloat(2, w)));
    BigComplex v = BigComplex(BigFloat(-(d + 1), w)) * inner;
    BigFloat err = BigFloat(d + 1, w) * (cd3 * x.error_bound + c23 * errzK) +
                   v.abs().mul_2si(6 - (long)w);
    out.value = rounded_eval(v, err, x.route, prec);
    return out;
}

inline DegreeCoefficient prop23_coefficient(long prec) {
    DegreeCoefficient out;
    out.which = CoefficientKind::prop23;
    out.d = 1;

    Evaluation x = l_logderiv_neg(2, DirichletCharacter::trivial(1), prec).value;
    out.decomposition.emplace_back(DirichletCharacter::trivial(1), x);

    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat c163(Rational(Integer(16), Integer(3)), w);
    BigComplex v = -(BigComplex(BigFloat(4, w)) * x.value -
                     BigComplex(c163 * log(BigFloat(2, w)) - BigFloat(2, w)));
    BigFloat err = BigFloat(4, w) * x.error_bound + v.abs().mul_2si(6 - (long)w);
    out.value = rounded_eval(v, err, x.route, prec);
    return out;
}

} // namespace lfun

#endif

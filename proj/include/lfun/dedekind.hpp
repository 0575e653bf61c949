#ifndef LFUN_DEDEKIND_HPP
#define LFUN_DEDEKIND_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "lfunctions.hpp"
#include "parallel.hpp"

namespace lfun {

// zeta'_K/zeta_K(1-n) as the sum of L'/L(chi, 1-n) over the characters of
// the abelian field K. Per-character evaluations run in parallel; the sum
// is reduced in character enumeration order, so results do not depend on
// the thread count. A character whose factor is excluded (pole of the
// trivial L at n = 1, or a trivial zero from parity mismatch) rejects the
// whole sum, with the offending character named.
inline Evaluation dedekind_logderiv(const AbelianFieldSpec& K, unsigned n, long prec,
                                    RouteChoice routes = RouteChoice::both,
                                    unsigned threads = 0) {
    if (threads == 0) threads = default_thread_count();
    std::vector<DirichletCharacter> chars = characters_of_field(K);
    auto rows = parallel_map(chars.size(), threads, [&](std::size_t i) -> LogDerivResult {
        try {
            return l_logderiv_neg(n, chars[i], prec, routes);
        } catch (const error& e) {
            fail(e.code(), character_label(chars[i]) + ": " + e.what());
        }
    });

    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigComplex sum(w);
    BigFloat err(w);
    for (const auto& r : rows) {
        sum += r.value.value;
        err += r.value.error_bound;
    }
    Route route = rows.empty() ? Route::euler_maclaurin : rows.front().value.route;
    return rounded_eval(sum, err, route, prec);
}

namespace detail {

struct IdealSeries {
    BigFloat value, dvalue; // zeta_K(n), zeta'_K(n)
    BigFloat err_value, err_dvalue;
};

// zeta_K(s) and zeta'_K(s) at integer s = n >= 2 for the quadratic field of
// discriminant D, from the ideal-count series sum_m a_m m^{-s} with
// a_m = sum_{e|m} chi_D(e). The double sum over (d, e) with m = d*e is
// rearranged exactly:
//   pairs with m <= K0:    divisor sieve head;
//   e <= K0, d > K0/e:     sum_e chi(e) e^{-s} zeta(s, floor(K0/e)+1);
//   e > K0, grouped by the residue r of e mod |D|:
//                          zeta(s) |D|^{-s} sum_r chi(r) zeta(s, e_r/|D|),
//   e_r the least e > K0 with e = r (mod |D|).
// Every tail is a single Hurwitz value, so the error is the sum of the
// Euler-Maclaurin bounds; no series-truncation estimate enters.
inline IdealSeries ideal_count_series(long D, unsigned n, long prec) {
    const long K0 = 1000;
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    const unsigned long q = (unsigned long)(D < 0 ? -D : D);

    std::vector<long> am(K0 + 1, 0);
    for (long e = 1; e <= K0; ++e) {
        int c = kronecker_symbol(D, (unsigned long)e);
        if (c == 0) continue;
        for (long m = e; m <= K0; m += e) am[m] += c;
    }

    EmOptions opt;
    opt.want_deriv = true;
    std::map<long, EmResult> shifted;
    auto zeta_shift = [&](long j) -> const EmResult& {
        auto it = shifted.find(j);
        if (it == shifted.end())
            it = shifted.emplace(j, em_hurwitz(BigFloat((long)n, w), BigFloat(j, w), prec, opt)).first;
        return it->second;
    };
    auto int_power = [&](long b) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), (unsigned long)b, n);
        return p;
    };

    BigFloat V(w), dV(w), errV(w), errD(w);
    for (long m = 1; m <= K0; ++m) {
        if (am[m] == 0) continue;
        BigFloat u(Rational(Integer(am[m]), int_power(m)), w);
        V += u;
        dV -= log(BigFloat(m, w)) * u;
    }

    for (long e = 1; e <= K0; ++e) {
        int c = kronecker_symbol(D, (unsigned long)e);
        if (c == 0) continue;
        const EmResult& z = zeta_shift(K0 / e + 1);
        BigFloat u(Rational(Integer(c), int_power(e)), w);
        BigFloat ua = u.abs();
        BigFloat le = log(BigFloat(e, w));
        V += u * z.value;
        dV += u * (z.dvalue - le * z.value);
        errV += ua * z.err_value;
        errD += ua * (z.err_dvalue + le * z.err_value);
    }

    const EmResult& z1 = zeta_shift(1);
    BigFloat T(w), dT(w), errT(w), errdT(w), Tabs(w), dTabs(w);
    for (unsigned long r = 1; r < q; ++r) {
        int c = kronecker_symbol(D, r);
        if (c == 0) continue;
        long rem = (((long)r - (K0 + 1)) % (long)q + (long)q) % (long)q;
        BigFloat shift(Rational(Integer(K0 + 1 + rem), Integer((long)q)), w);
        EmResult z = em_hurwitz(BigFloat((long)n, w), shift, prec, opt);
        if (c > 0) {
            T += z.value;
            dT += z.dvalue;
        } else {
            T -= z.value;
            dT -= z.dvalue;
        }
        errT += z.err_value;
        errdT += z.err_dvalue;
        Tabs += z.value.abs();
        dTabs += z.dvalue.abs();
    }
    BigFloat lq = log(BigFloat((long)q, w));
    BigFloat qs(Rational(Integer(1), int_power((long)q)), w);
    BigFloat C = z1.value * qs * T;
    BigFloat dC = z1.dvalue * qs * T - lq * C + z1.value * qs * dT;
    BigFloat errC = qs * (z1.value.abs() * errT + (Tabs + errT) * z1.err_value);
    BigFloat errdC = qs * (z1.dvalue.abs() * errT + (Tabs + errT) * z1.err_dvalue) + lq * errC +
                     qs * (z1.value.abs() * errdT + (dTabs + errdT) * z1.err_value);
    V += C;
    dV += dC;
    errV += errC;
    errD += errdC;

    IdealSeries out;
    out.value = V;
    out.dvalue = dV;
    out.err_value = errV + (V.abs() + BigFloat(1, w)).mul_2si(10 - (long)w);
    out.err_dvalue = errD + (dV.abs() + BigFloat(1, w)).mul_2si(10 - (long)w);
    return out;
}

} // namespace detail

// Independent route to zeta'_K/zeta_K(1-n) for the quadratic field of
// fundamental discriminant D: evaluate the ideal-count Dirichlet series at
// s = n >= 2 and transfer with the completed functional equation
//   xi_K(s) = |D|^{s/2} Gamma_R(s)^2 zeta_K(s)            (D > 0),
//   xi_K(s) = |D|^{s/2} 2 (2 pi)^{-s} Gamma(s) zeta_K(s)  (D < 0),
//   xi_K(s) = xi_K(1-s).
// For D < 0 and odd n, zeta_K has a simple zero at 1-n inherited from the
// Riemann factor; the digamma pole at (1-n) is then replaced by its
// regularized value H_{n-1} - gamma, and the returned quantity is the
// finite part lim_{u -> 1-n} (zeta'_K/zeta_K(u) - 1/(u-(1-n))), matching
// the per-character regularization. The remaining parity combinations
// vanish through a character factor (or doubly, for D > 0 and odd n) and
// are refused.
inline Evaluation dedekind_via_ideals(long D, unsigned n, long prec) {
    if (!is_fundamental_discriminant(D)) fail(errc::domain_error, "not a fundamental discriminant");
    if (D > 200 || D < -200) fail(errc::domain_error, "ideal-count oracle is limited to |D| <= 200");
    if (n < 2) fail(errc::domain_error, "ideal-count series requires n >= 2");
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);

    if (D > 0 && n % 2 == 1)
        fail(errc::trivial_zero, "zeta_K(1-n) has a double trivial zero (both factors mismatch parity)");
    if (D < 0 && n % 2 == 0)
        fail(errc::trivial_zero,
             "trivial zero: the factor L(" + character_label(quadratic_character(D)) + ", 1-n) vanishes");

    auto series = detail::ideal_count_series(D, n, prec);
    BigFloat den = series.value.abs() - series.err_value;
    assert(den.sign() > 0);
    BigFloat ratio = series.dvalue / series.value;
    BigFloat err = (series.err_dvalue + ratio.abs() * series.err_value) / den;

    BigFloat lD = log(BigFloat(D > 0 ? D : -D, w));
    BigFloat v(w);
    if (D > 0) {
        BigFloat psi_pos = detail::digamma_any(BigFloat((long)(n / 2), w), prec);
        BigFloat psi_neg = detail::digamma_any(BigFloat(Rational(Integer(1 - (long)n), Integer(2)), w), prec);
        v = -ratio - lD + BigFloat(2, w) * log(bf_pi(w)) - psi_pos - psi_neg;
    } else {
        BigFloat psi_pos = detail::digamma_any(BigFloat((long)n, w), prec);
        BigFloat psi_reg = detail::psi_regularized_nonpos(n - 1, prec);
        v = -ratio - lD + BigFloat(2, w) * log(BigFloat(2, w) * bf_pi(w)) - psi_pos - psi_reg;
    }
    err += (v.abs() + BigFloat(1, w)).mul_2si(8 - (long)w);
    return rounded_eval(BigComplex(v), err, Route::functional_equation, prec);
}

namespace detail {

// Character-sum side of the quadratic factorization comparison. For even n
// this is the public two-character sum; for odd n (D < 0) the trivial
// factor is the regularized zeta'/zeta(1-n), matching the finite part
// returned by dedekind_via_ideals.
inline Evaluation quadratic_charsum_logderiv(long D, unsigned n, long prec) {
    DirichletCharacter chi = quadratic_character(D);
    if (n < 2) fail(errc::domain_error, "comparison requires n >= 2");
    if (chi.is_even() != (n % 2 == 0))
        fail(errc::trivial_zero, "quadratic character factor vanishes at 1-n");
    if (n % 2 == 0) return dedekind_logderiv(quadratic_field_spec(D), n, prec);

    Evaluation triv = logderiv_functional(n, DirichletCharacter::trivial(1), prec, true);
    Evaluation quad = l_logderiv_neg(n, chi, prec).value;
    return rounded_eval(triv.value + quad.value, triv.error_bound + quad.error_bound,
                        Route::functional_equation, prec);
}

} // namespace detail

} // namespace lfun

#endif

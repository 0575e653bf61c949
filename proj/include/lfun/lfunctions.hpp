#ifndef LFUN_LFUNCTIONS_HPP
#define LFUN_LFUNCTIONS_HPP

#include <map>
#include <mutex>
#include <tuple>

#include "bernoulli.hpp"
#include "dirichlet.hpp"
#include "evaluation.hpp"
#include "special.hpp"

namespace lfun {

// B_{n,chi} = q^{n-1} sum_{a=1}^{q} chi(a) B_n(a/q), exact. The a = q term
// makes the trivial character reproduce B_n(1), so L(triv, 0) = -1/2 comes
// out right under the global B_1 = -1/2 convention.
struct GenBernoulli {
    unsigned n = 1;
    DirichletCharacter character;
    CycloElem value;
};

inline GenBernoulli gen_bernoulli(unsigned n, const DirichletCharacter& chi) {
    if (n == 0) fail(errc::domain_error, "generalized Bernoulli index must be positive");
    if (!chi.is_primitive()) fail(errc::domain_error, "gen_bernoulli expects a primitive character");
    unsigned long q = chi.modulus();
    CycloElem acc(chi.order());
    for (unsigned long a = 1; a <= q; ++a) {
        CycloElem c = chi.value_at((long)a);
        if (c.is_zero()) continue;
        acc = acc + bernoulli_polynomial(n, Rational(Integer(a), Integer(q))) * c;
    }
    GenBernoulli r;
    r.n = n;
    r.character = chi;
    r.value = Rational(Integer(q)).pow((long)n - 1) * acc;
    return r;
}

// L(chi, 1-n) = -B_{n,chi}/n, exact in Q(mu_order).
inline CycloElem l_exact_nonpos(unsigned n, const DirichletCharacter& chi) {
    if (n == 1 && chi.is_trivial())
        fail(errc::pole, "L(s, trivial) has a pole at s = 1; the case n = 1 is excluded");
    return Rational(Integer(-1), Integer(n)) * gen_bernoulli(n, chi).value;
}

namespace detail {

// Memoized Euler-Maclaurin evaluations at integer s (and the finite-part
// point s = 1), keyed per (q, a, s, prec, mode). Values are deterministic,
// so racing recomputation is harmless; the winner is byte-identical.
inline EmResult em_cached(unsigned long q, unsigned long a, long s, long prec, bool deriv, bool at_one) {
    using Key = std::tuple<unsigned long, unsigned long, long, long, int>;
    static std::map<Key, EmResult> cache;
    static std::mutex mx;
    Key k{q, a, s, prec, (deriv ? 1 : 0) | (at_one ? 2 : 0)};
    {
        std::lock_guard<std::mutex> lock(mx);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    EmOptions opt;
    opt.want_deriv = deriv;
    opt.finite_part_at_1 = at_one;
    EmResult r = em_hurwitz(BigFloat(at_one ? 1 : s, w), BigFloat(Rational(Integer(a), Integer(q)), w), prec, opt);
    std::lock_guard<std::mutex> lock(mx);
    cache.emplace(k, r);
    return r;
}

struct LPair {
    BigComplex L, dL;
    BigFloat errL, errdL;
};

// L(s, chi) and L'(s, chi) from the Hurwitz decomposition
//   L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q),
// with one Euler-Maclaurin pass per residue. At s = 1 (nontrivial chi only)
// the per-residue poles carry the coefficient sum chi(a) = 0, so summing
// finite parts gives the analytic value.
inline LPair l_pair(long s_int, const BigFloat& s_real, bool s_is_int, const DirichletCharacter& chi,
                    long prec, bool want_deriv) {
    if (!chi.is_primitive()) fail(errc::domain_error, "L-evaluation expects a primitive character");
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    unsigned long q = chi.modulus();
    bool at_one = s_is_int && s_int == 1;
    if (at_one && chi.is_trivial()) fail(errc::pole, "L(s, trivial) has a pole at s = 1");

    BigComplex S(w), dS(w);
    BigFloat errV(w), errD(w);
    for (unsigned long a = 1; a <= q; ++a) {
        unsigned long u;
        if (!chi.value_exponent((long)a, u)) continue;
        EmResult r;
        if (s_is_int) {
            r = em_cached(q, a, s_int, prec, want_deriv, at_one);
        } else {
            EmOptions opt;
            opt.want_deriv = want_deriv;
            r = em_hurwitz(s_real, BigFloat(Rational(Integer(a), Integer(q)), w), prec, opt);
        }
        BigComplex c = root_of_unity((long)u, chi.order(), w);
        S += c * BigComplex(r.value);
        errV += r.err_value;
        if (want_deriv) {
            dS += c * BigComplex(r.dvalue);
            errD += r.err_dvalue;
        }
    }

    BigFloat lq = log(BigFloat((long)q, w));
    BigFloat sw = s_is_int ? BigFloat(s_int, w) : s_real.round_to(w);
    BigFloat F = exp(-(sw * lq)); // q^{-s}, real positive
    LPair out;
    out.L = F * S;
    out.errL = F * (errV + S.abs().mul_2si(6 - (long)w));
    if (want_deriv) {
        out.dL = F * dS - lq * out.L;
        out.errdL = F * (errD + dS.abs().mul_2si(6 - (long)w)) + lq * out.errL;
    } else {
        out.dL = BigComplex(w);
        out.errdL = BigFloat(w);
    }
    return out;
}

inline LPair l_pair_int(long s_int, const DirichletCharacter& chi, long prec, bool want_deriv) {
    return l_pair(s_int, BigFloat((mpfr_prec_t)64), true, chi, prec, want_deriv);
}

} // namespace detail

inline Evaluation l_value(const BigComplex& s, const DirichletCharacter& chi, long prec) {
    detail::check_real(s);
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat sr = s.re.round_to(w);
    bool is_int = mpfr_integer_p(sr.get()) != 0;
    long si = is_int ? (long)mpfr_get_si(sr.get(), MPFR_RNDN) : 0;
    auto p = detail::l_pair(si, sr, is_int, chi, prec, false);
    return rounded_eval(p.L, p.errL, Route::euler_maclaurin, prec);
}

inline Evaluation l_deriv(const BigComplex& s, const DirichletCharacter& chi, long prec) {
    detail::check_real(s);
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat sr = s.re.round_to(w);
    bool is_int = mpfr_integer_p(sr.get()) != 0;
    long si = is_int ? (long)mpfr_get_si(sr.get(), MPFR_RNDN) : 0;
    auto p = detail::l_pair(si, sr, is_int, chi, prec, true);
    return rounded_eval(p.dL, p.errdL, Route::euler_maclaurin, prec);
}

enum class RouteChoice { direct, functional, both };

inline const char* route_choice_name(RouteChoice rc) {
    switch (rc) {
        case RouteChoice::direct: return "direct";
        case RouteChoice::functional: return "functional";
        case RouteChoice::both: return "both";
    }
    return "?";
}

struct LogDerivResult {
    DirichletCharacter chi;
    unsigned n = 1;
    Evaluation value;   // always route_a's value
    Evaluation route_a; // direct evaluation at s = 1-n
    Evaluation route_b; // functional-equation transfer from s = n (when enabled)
    BigFloat agreement; // |route_a - route_b|
};

namespace detail {

// Direct route: L'(1-n, chi) numerically over the exact algebraic value of
// L(1-n, chi), embedded once. The exact denominator removes cancellation
// as the main error source.
inline Evaluation logderiv_direct(unsigned n, const DirichletCharacter& chi, long prec,
                                  const CycloElem& exact_l) {
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    auto p = l_pair_int(1 - (long)n, chi, prec, true);
    BigComplex denom = exact_l.embed(w);
    BigComplex ratio = p.dL / denom;
    BigFloat err = p.errdL / denom.abs() + ratio.abs().mul_2si(4 - (long)w);
    return rounded_eval(ratio, err, Route::euler_maclaurin, prec);
}

// Functional-equation route. Logarithmic differentiation of
//   Lambda(s, chi) = (q/pi)^{(s+d)/2} Gamma((s+d)/2) L(s, chi),
//   Lambda(1-s, conj chi) = (i^d sqrt(q)/tau(chi)) Lambda(s, chi)
// gives, at s = n (the phase factor is s-free and drops out):
//   L'/L(chi, 1-n) = -L'/L(conj chi, n) - log(q/pi)
//                    - [psi((n+d)/2) + psi((1-n+d)/2)]/2.
// With regularize set, 1-n is a trivial zero, (1-n+d)/2 is a nonpositive
// integer -k, and psi is replaced by its regularized value H_k - gamma;
// the psi pole and the L'/L pole cancel with matching residues, so this
// computes lim_{s->1-n} (L'/L(s,chi) - 1/(s-(1-n))).
inline Evaluation logderiv_functional(unsigned n, const DirichletCharacter& chi, long prec,
                                      bool regularize) {
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    auto inner = l_pair_int((long)n, chi.conjugate(), prec, true);
    BigComplex ratio = inner.dL / inner.L;
    BigFloat la = inner.L.abs();
    BigFloat err_inner = inner.errdL / la + ratio.abs() * inner.errL / la;

    long d = chi.is_even() ? 0 : 1;
    unsigned long q = chi.modulus();
    BigFloat lqpi = log(BigFloat((long)q, w) / bf_pi(w));
    BigFloat psi_pos = digamma_any(BigFloat(Rational(Integer((long)n + d), Integer(2)), w), prec);
    BigFloat psi_neg(w);
    if (regularize) {
        long k2 = (long)n - 1 - d;
        if (k2 < 0 || k2 % 2 != 0) fail(errc::domain_error, "no trivial zero to regularize here");
        psi_neg = psi_regularized_nonpos((unsigned long)(k2 / 2), prec);
    } else {
        psi_neg = digamma_any(BigFloat(Rational(Integer(1 - (long)n + d), Integer(2)), w), prec);
    }
    BigFloat half = BigFloat(1, w).mul_2si(-1);
    BigComplex v = -ratio - BigComplex(lqpi + half * (psi_pos + psi_neg));
    BigFloat err = err_inner + v.abs().mul_2si(6 - (long)w) + BigFloat(1, w).mul_2si(8 - (long)w);
    return rounded_eval(v, err, Route::functional_equation, prec);
}

} // namespace detail

// L'/L(chi, 1-n) by one or both routes. The functional route is only
// available for n >= 2; at n = 1 the direct route is used regardless of
// the requested choice.
inline LogDerivResult l_logderiv_neg(unsigned n, const DirichletCharacter& chi_in, long prec,
                                     RouteChoice routes = RouteChoice::both) {
    if (n == 0) fail(errc::domain_error, "n must be a positive integer");
    DirichletCharacter chi = primitive_part(chi_in);
    if (n == 1 && chi.is_trivial())
        fail(errc::pole, "excluded case: L'/L at s = 0 for the trivial character (pole at s = 1 pairs with it)");

    CycloElem exact_l = l_exact_nonpos(n, chi);
    if (exact_l.is_zero())
        fail(errc::trivial_zero, "trivial zero: L(chi, 1-n) = 0 because chi(-1) != (-1)^n");

    LogDerivResult r;
    r.chi = chi;
    r.n = n;
    bool want_functional = routes != RouteChoice::direct && n >= 2;
    bool want_direct = routes != RouteChoice::functional || n == 1;

    if (want_direct) r.route_a = detail::logderiv_direct(n, chi, prec, exact_l);
    if (want_functional) {
        Evaluation f = detail::logderiv_functional(n, chi, prec, false);
        if (want_direct) {
            r.route_b = f;
        } else {
            r.route_a = f;
            r.route_b = f;
        }
    } else {
        r.route_b = r.route_a;
    }
    r.value = r.route_a;
    r.agreement = (r.route_a.value - r.route_b.value).abs();
    return r;
}

} // namespace lfun

#endif

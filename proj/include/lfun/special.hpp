#ifndef LFUN_SPECIAL_HPP
#define LFUN_SPECIAL_HPP

#include <cmath>

#include "bernoulli.hpp"
#include "evaluation.hpp"
#include "numeric.hpp"

namespace lfun {

namespace detail {

struct EmOptions {
    bool want_deriv = false;
    // With this set, s must be exactly 1 and the result is the finite part
    // lim_{s->1} (zeta(s,a) - 1/(s-1)) together with the matching limit of
    // the s-derivative.
    bool finite_part_at_1 = false;
};

struct EmResult {
    BigFloat value, dvalue;
    BigFloat err_value, err_dvalue;
};

// Euler-Maclaurin evaluation of the Hurwitz zeta function and its
// s-derivative at real s and any shift a > 0 (the public wrappers restrict
// to the principal branch 0 < a <= 1; series tails use larger shifts):
//   sum_{k<N} (k+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
//     + sum_{j=1}^{M} B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}.
// Parameter rule: N = max(ceil(prec log2/log10), ceil(3|s|), 10); correction
// terms are added while they exceed 2^{-prec-8} |partial sum|, at most 64;
// working precision is prec + 32. The reported bound is twice the first
// omitted correction term plus an accumulator-rounding floor.
inline EmResult em_hurwitz(const BigFloat& s_in, const BigFloat& a_in, long prec, EmOptions opt) {
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat s = s_in.round_to(w), a = a_in.round_to(w);

    double sd = std::fabs(mpfr_get_d(s.get(), MPFR_RNDN));
    if (!(sd < 1e6)) fail(errc::domain_error, "exponent magnitude out of supported range");
    long N = std::max({(prec * 30103 + 99999) / 100000, (long)std::ceil(3.0 * sd), 10L});

    const bool deriv = opt.want_deriv;
    BigFloat val(w), dval(w);
    long emax = 0;
    auto note = [&](const BigFloat& x) {
        if (!x.is_zero()) emax = std::max(emax, (long)mpfr_get_exp(x.get()));
    };

    BigFloat ms = -s;
    for (long k = 0; k < N; ++k) {
        BigFloat lt = log(BigFloat(k, w) + a);
        BigFloat u = exp(ms * lt);
        val += u;
        note(val);
        if (deriv) {
            dval -= lt * u;
            note(dval);
        }
    }

    BigFloat one(1, w), half = BigFloat(1, w).mul_2si(-1);
    BigFloat X = BigFloat(N, w) + a;
    BigFloat L = log(X);
    BigFloat P = exp(ms * L);

    if (opt.finite_part_at_1) {
        val -= L;
        if (deriv) dval += half * L * L;
    } else {
        BigFloat sm1 = s - one;
        BigFloat T1 = P * X / sm1;
        val += T1;
        if (deriv) dval -= T1 * (L + one / sm1);
    }
    note(val);
    if (deriv) note(dval);

    val += half * P;
    note(val);
    if (deriv) {
        dval -= half * L * P;
        note(dval);
    }

    // Correction terms with an incremental Pochhammer (value and s-derivative
    // updated one linear factor at a time, so zero factors at nonpositive
    // integer s terminate the value series cleanly).
    BigFloat R = P / X;
    BigFloat X2 = X * X;
    BigFloat p = s, dp = one;
    BigFloat err_v(w), err_d(w);
    for (long j = 1;; ++j) {
        Rational cr = bernoulli_number(2 * (unsigned)j) / Rational(factorial(2 * (unsigned)j));
        BigFloat c(cr, w);
        BigFloat tv = c * p * R;
        BigFloat td(w);
        if (deriv) td = c * (dp - p * L) * R;

        bool small_v = !(tv.abs() > val.abs().mul_2si(-(prec + 8)));
        bool small_d = !deriv || !(td.abs() > dval.abs().mul_2si(-(prec + 8)));
        if ((small_v && small_d) || j > 64) {
            err_v = tv.abs().mul_2si(1);
            err_d = td.abs().mul_2si(1);
            break;
        }
        val += tv;
        note(val);
        if (deriv) {
            dval += td;
            note(dval);
        }
        BigFloat f1 = s + BigFloat(2 * j - 1, w);
        dp = dp * f1 + p;
        p = p * f1;
        BigFloat f2 = s + BigFloat(2 * j, w);
        dp = dp * f2 + p;
        p = p * f2;
        R = R / X2;
    }

    BigFloat floor_err(w);
    mpfr_set_ui_2exp(floor_err.get(), 1, emax + 12 - (long)w, MPFR_RNDN);
    EmResult r;
    r.value = val;
    r.dvalue = dval;
    r.err_value = err_v + floor_err;
    r.err_dvalue = deriv ? err_d + floor_err : BigFloat(w);
    return r;
}

inline void check_hurwitz_shift(const BigFloat& a) {
    if (!(a.sign() > 0) || a > BigFloat(1, a.prec()))
        fail(errc::domain_error, "shift parameter must lie in (0, 1]");
}

inline void check_real(const BigComplex& s) {
    if (!s.im.is_zero())
        fail(errc::domain_error, "only real arguments are supported on this axis");
}

} // namespace detail

inline Evaluation hurwitz_zeta(const BigComplex& s, const BigFloat& a, long prec) {
    detail::check_real(s);
    detail::check_hurwitz_shift(a);
    if (s.re == BigFloat(1, s.re.prec())) fail(errc::pole, "hurwitz zeta has a pole at s = 1");
    auto r = detail::em_hurwitz(s.re, a, prec, {});
    return rounded_eval(BigComplex(r.value), r.err_value, Route::euler_maclaurin, prec);
}

inline Evaluation hurwitz_zeta_ds(const BigComplex& s, const BigFloat& a, long prec) {
    detail::check_real(s);
    detail::check_hurwitz_shift(a);
    if (s.re == BigFloat(1, s.re.prec())) fail(errc::pole, "hurwitz zeta has a pole at s = 1");
    detail::EmOptions opt;
    opt.want_deriv = true;
    auto r = detail::em_hurwitz(s.re, a, prec, opt);
    return rounded_eval(BigComplex(r.dvalue), r.err_dvalue, Route::euler_maclaurin, prec);
}

namespace detail {

struct StirlingResult {
    BigFloat value;
    BigFloat err;
};

// Shared Stirling core: logGamma when dg is false, psi when dg is true.
// Argument raising brings x up to ~0.17 * working precision where the
// asymptotic series reaches 2^{-prec-8} within a modest term count.
inline StirlingResult stirling_eval(const BigFloat& x_in, long prec, bool dg) {
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat x = x_in.round_to(w);
    BigFloat one(1, w), half = one.mul_2si(-1);

    long y0 = (17 * (long)w + 99) / 100;
    BigFloat shift(w);
    BigFloat y = x;
    long emax = 0;
    auto note = [&](const BigFloat& v) {
        if (!v.is_zero()) emax = std::max(emax, (long)mpfr_get_exp(v.get()));
    };
    while (y < BigFloat(y0, w)) {
        shift += dg ? one / y : log(y);
        note(shift);
        y += one;
    }

    BigFloat ly = log(y);
    BigFloat acc(w);
    if (dg) {
        acc = ly - half / y;
    } else {
        BigFloat two_pi = bf_pi(w).mul_2si(1);
        acc = (y - half) * ly - y + half * log(two_pi);
    }
    note(acc);

    // logGamma tail: sum B_{2j} / ((2j)(2j-1) y^{2j-1});
    // psi tail: -sum B_{2j} / (2j y^{2j}).
    BigFloat y2 = y * y;
    BigFloat R = dg ? one / y2 : one / y;
    BigFloat err(w);
    const long cap = std::min(std::max(64L, prec / 2), 512L);
    for (long j = 1;; ++j) {
        Rational cr = bernoulli_number(2 * (unsigned)j);
        cr = dg ? -(cr / Rational(Integer(2 * j))) : cr / Rational(Integer(2L * j * (2 * j - 1)));
        BigFloat t = BigFloat(cr, w) * R;
        if (!(t.abs() > acc.abs().mul_2si(-(prec + 8))) || j > cap) {
            err = t.abs().mul_2si(1);
            break;
        }
        acc += t;
        note(acc);
        R = R / y2;
    }

    StirlingResult r;
    r.value = acc - shift;
    BigFloat floor_err(w);
    mpfr_set_ui_2exp(floor_err.get(), 1, emax + 12 - (long)w, MPFR_RNDN);
    r.err = err + floor_err;
    return r;
}

} // namespace detail

inline Evaluation log_gamma(const BigFloat& x, long prec) {
    if (!(x.sign() > 0)) fail(errc::domain_error, "log_gamma requires a positive argument");
    auto r = detail::stirling_eval(x, prec, false);
    return rounded_eval(BigComplex(r.value), r.err, Route::euler_maclaurin, prec);
}

inline Evaluation digamma(const BigFloat& x, long prec) {
    if (!(x.sign() > 0)) fail(errc::domain_error, "digamma requires a positive argument");
    auto r = detail::stirling_eval(x, prec, true);
    return rounded_eval(BigComplex(r.value), r.err, Route::euler_maclaurin, prec);
}

namespace detail {

// psi at any real point that is not a nonpositive integer: lift with the
// recurrence psi(x) = psi(x + r) - sum_{t<r} 1/(x + t).
inline BigFloat digamma_any(const BigFloat& x_in, long prec) {
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat x = x_in.round_to(w);
    if (mpfr_integer_p(x.get()) && x.sign() <= 0)
        fail(errc::pole, "digamma pole at a nonpositive integer");
    if (x.sign() > 0) return stirling_eval(x, prec, true).value;
    long r = 1 - (long)mpfr_get_si(x.get(), MPFR_RNDD);
    BigFloat shift(w);
    for (long t = 0; t < r; ++t) shift += BigFloat(1, w) / (x + BigFloat(t, w));
    return stirling_eval(x + BigFloat(r, w), prec, true).value - shift;
}

// Regularized psi at -k: the limit of psi(x) + 1/(x + k) as x -> -k,
// which equals H_k - gamma.
inline BigFloat psi_regularized_nonpos(unsigned long k, long prec) {
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    return BigFloat(harmonic_number((unsigned)k).value, w) - bf_euler(w);
}

} // namespace detail

inline Evaluation agm(const BigFloat& a_in, const BigFloat& b_in, long prec) {
    if (!(a_in.sign() > 0) || !(b_in.sign() > 0))
        fail(errc::domain_error, "agm requires positive arguments");
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat a = a_in.round_to(w), b = b_in.round_to(w);
    const long cap = (long)std::log2((double)prec) + 10;
    long it = 0;
    while (it < cap && (a - b).abs() > a.abs().mul_2si(-prec)) {
        BigFloat an = (a + b).mul_2si(-1);
        BigFloat bn = sqrt(a * b);
        a = an;
        b = bn;
        ++it;
    }
    BigFloat err = (a - b).abs() + a.abs().mul_2si(8 - (long)w);
    return rounded_eval(BigComplex(a), err, Route::agm, prec);
}

} // namespace lfun

#endif

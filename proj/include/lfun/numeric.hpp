#ifndef LFUN_NUMERIC_HPP
#define LFUN_NUMERIC_HPP

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace lfun {

// Decimal digits carried by serialized values: ceil(prec * 0.3010).
inline long decimal_digits_for(long prec_bits) {
    return (prec_bits * 3010 + 9999) / 10000;
}

// Arbitrary-precision real number with explicit precision, backed by MPFR.
// Value semantics; binary operations round to the larger operand precision.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(long n, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, n, MPFR_RNDN);
    }
    BigFloat(const Rational& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_string(const std::string& s, mpfr_prec_t prec) {
        BigFloat r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            fail(errc::parse_error, "bad decimal literal: " + s);
        return r;
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    // this * 2^e, exact.
    BigFloat mul_2si(long e) const {
        BigFloat r(prec());
        mpfr_mul_2si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    BigFloat round_to(mpfr_prec_t p) const {
        BigFloat r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    // Scientific-notation decimal string, deterministic for a given
    // (value, digits) pair: -d.dddd...e±k.
    std::string to_decimal(long digits) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
        if (mpfr_zero_p(v_)) return "0.0e+0";
        mpfr_exp_t e;
        char* raw = mpfr_get_str(nullptr, &e, 10, (size_t)std::max(2L, digits), v_, MPFR_RNDN);
        std::string m(raw);
        mpfr_free_str(raw);
        std::string sign;
        if (!m.empty() && m[0] == '-') {
            sign = "-";
            m.erase(0, 1);
        }
        // value = 0.m * 10^e
        std::string body = m.substr(0, 1) + "." + m.substr(1);
        long ke = (long)e - 1;
        return sign + body + "e" + (ke < 0 ? "-" : "+") + std::to_string(ke < 0 ? -ke : ke);
    }

private:
    mpfr_t v_;
};

inline BigFloat bf_pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}
inline BigFloat bf_log2(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_log2(r.get(), MPFR_RNDN);
    return r;
}
inline BigFloat bf_euler(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_euler(r.get(), MPFR_RNDN);
    return r;
}
inline BigFloat log(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}
inline BigFloat exp(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}
inline BigFloat sqrt(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}
inline BigFloat cbrt(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_cbrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}
inline BigFloat pow_si(const BigFloat& x, long e) {
    BigFloat r(x.prec());
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}
inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
inline BigFloat min(const BigFloat& a, const BigFloat& b) { return a < b ? a : b; }

// Complex value as a real/imaginary BigFloat pair.
class BigComplex {
public:
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(const BigFloat& r) : re(r), im(r.prec()) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re + b.re, a.im + b.im);
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re - b.re, a.im - b.im);
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend BigComplex operator*(const BigFloat& a, const BigComplex& b) {
        return BigComplex(a * b.re, a * b.im);
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.re * b.re + b.im * b.im;
        return BigComplex((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    BigComplex operator-() const { return BigComplex(-re, -im); }
    BigComplex conj() const { return BigComplex(re, -im); }
    BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
        return r;
    }
    BigComplex round_to(mpfr_prec_t p) const { return BigComplex(re.round_to(p), im.round_to(p)); }
};

// exp(2*pi*i * k/m), argument reduced exactly before any rounding.
inline BigComplex root_of_unity(long k, unsigned long m, mpfr_prec_t prec) {
    k %= (long)m;
    if (k < 0) k += (long)m;
    BigComplex z(prec);
    BigFloat theta = bf_pi(prec + 16);
    mpfr_mul_si(theta.get(), theta.get(), 2 * k, MPFR_RNDN);
    mpfr_div_ui(theta.get(), theta.get(), m, MPFR_RNDN);
    BigFloat s(prec), c(prec);
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    z.re = c;
    z.im = s;
    return z;
}

} // namespace lfun

#endif

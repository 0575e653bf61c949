#ifndef LFUN_RATIONAL_HPP
#define LFUN_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "errors.hpp"

namespace lfun {

using Integer = mpz_class;

// Arbitrary-precision rational kept in lowest terms with positive
// denominator; zero is canonically 0/1. Backed by GMP.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) {
        if (d == 0) fail(errc::domain_error, "rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    Rational(const Integer& n, const Integer& d) {
        if (d == 0) fail(errc::domain_error, "rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const Integer& n) : v_(n) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p/q" or a bare integer string.
    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            fail(errc::parse_error, "bad rational literal: " + s);
        if (q.get_den() == 0)
            fail(errc::parse_error, "zero denominator: " + s);
        q.canonicalize();
        Rational r;
        r.v_ = q;
        return r;
    }

    const Integer num() const { return Integer(v_.get_num()); }
    const Integer den() const { return Integer(v_.get_den()); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) fail(errc::domain_error, "rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return Rational(mpq_class(::abs(v_)), already_canonical{}); }

    Rational inv() const {
        if (is_zero()) fail(errc::domain_error, "inverse of zero");
        mpq_class r;
        mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
        return Rational(r, already_canonical{});
    }

    Rational pow(long e) const {
        if (e < 0) return inv().pow(-e);
        mpq_class r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(v_.get_mpq_t()), (unsigned long)e);
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(v_.get_mpq_t()), (unsigned long)e);
        return Rational(r, already_canonical{});
    }

    // Always emits the "p/q" form, including "p/1" for integers.
    std::string to_string() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

private:
    struct already_canonical {};
    Rational(const mpq_class& q, already_canonical) : v_(q) {}
    mpq_class v_;
};

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

struct HarmonicNumber {
    unsigned index;
    Rational value; // sum of 1/j for j = 1..index; 0 for index = 0
};

namespace detail {
inline std::vector<Rational>& harmonic_cache();
} // namespace detail

inline HarmonicNumber harmonic_number(unsigned n);

} // namespace lfun

#include <mutex>

namespace lfun {
namespace detail {

inline std::mutex& harmonic_mutex() {
    static std::mutex m;
    return m;
}

inline std::vector<Rational>& harmonic_cache() {
    static std::vector<Rational> c{Rational(0)};
    return c;
}

} // namespace detail

inline HarmonicNumber harmonic_number(unsigned n) {
    std::lock_guard<std::mutex> lock(detail::harmonic_mutex());
    auto& c = detail::harmonic_cache();
    while (c.size() <= n) {
        unsigned j = (unsigned)c.size();
        c.push_back(c.back() + Rational(1, (long)j));
    }
    return HarmonicNumber{n, c[n]};
}

} // namespace lfun

#endif

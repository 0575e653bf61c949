#ifndef LFUN_CYCLOTOMIC_HPP
#define LFUN_CYCLOTOMIC_HPP

#include <cassert>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "rational.hpp"

namespace lfun {

inline unsigned long euler_phi(unsigned long m) {
    unsigned long r = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        r -= r / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) r -= r / m;
    return r;
}

namespace detail {

// Integer polynomials, ascending coefficients, no trailing zeros.
using IntPoly = std::vector<Integer>;

inline void ip_trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// Quotient of a by monic b; the division must be exact.
inline IntPoly ip_divexact(IntPoly a, const IntPoly& b) {
    assert(!b.empty() && b.back() == 1);
    if (a.size() < b.size()) {
        ip_trim(a);
        assert(a.empty());
        return {};
    }
    IntPoly q(a.size() - b.size() + 1, Integer(0));
    for (size_t i = a.size(); i-- >= b.size();) {
        Integer c = a[i];
        if (c == 0) continue;
        size_t k = i - (b.size() - 1);
        q[k] = c;
        for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
        if (i == b.size() - 1) break;
    }
    for (size_t i = 0; i + 1 < b.size(); ++i) assert(a[i] == 0);
    return q;
}

inline const IntPoly& cyclotomic_polynomial(unsigned long m) {
    static std::map<unsigned long, IntPoly> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // T^m - 1 divided by the product of all lower-level factors.
    std::function<const IntPoly&(unsigned long)> get = [&](unsigned long n) -> const IntPoly& {
        auto jt = cache.find(n);
        if (jt != cache.end()) return jt->second;
        IntPoly num(n + 1, Integer(0));
        num[0] = -1;
        num[n] = 1;
        for (unsigned long d = 1; d < n; ++d)
            if (n % d == 0) num = ip_divexact(std::move(num), get(d));
        return cache.emplace(n, std::move(num)).first->second;
    };
    return get(m);
}

// Rational polynomials for the extended Euclid used by CycloElem::inverse.
using RatPoly = std::vector<Rational>;

inline void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline RatPoly rp_sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
    rp_trim(a);
    return a;
}

inline RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    rp_trim(r);
    return r;
}

// a = q*b + r with deg r < deg b; returns {q, r}.
inline std::pair<RatPoly, RatPoly> rp_divmod(RatPoly a, const RatPoly& b) {
    assert(!b.empty());
    RatPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    Rational lead = b.back();
    while (a.size() >= b.size()) {
        Rational c = a.back() / lead;
        size_t k = a.size() - b.size();
        q[k] = c;
        for (size_t j = 0; j < b.size(); ++j) a[k + j] = a[k + j] - c * b[j];
        a.pop_back();
        rp_trim(a);
        if (a.empty()) break;
    }
    rp_trim(q);
    return {std::move(q), std::move(a)};
}

} // namespace detail

// Element of the m-th cyclotomic field in the power basis 1, z, ..., z^{phi(m)-1}
// where z = exp(2*pi*i/m). All arithmetic is exact.
class CycloElem {
public:
    CycloElem() : order_(1), coeffs_(1, Rational(0)) {}
    explicit CycloElem(unsigned long m) : order_(m), coeffs_(euler_phi(m), Rational(0)) {
        if (m == 0) fail(errc::domain_error, "cyclotomic order must be positive");
    }
    CycloElem(unsigned long m, const Rational& c) : CycloElem(m) { coeffs_[0] = c; }

    // z^k as an element, reduced into the power basis.
    static CycloElem monomial(unsigned long m, unsigned long k) {
        CycloElem e(m);
        k %= m;
        const auto& phi = detail::cyclotomic_polynomial(m);
        size_t d = phi.size() - 1;
        if (k < d) {
            e.coeffs_[k] = Rational(1);
            return e;
        }
        std::vector<Rational> work(k + 1, Rational(0));
        work[k] = Rational(1);
        reduce(work, phi);
        for (size_t i = 0; i < d; ++i) e.coeffs_[i] = work[i];
        return e;
    }

    unsigned long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return false;
        return true;
    }
    Rational as_rational() const {
        if (!is_rational()) fail(errc::domain_error, "cyclotomic element is not rational");
        return coeffs_[0];
    }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
        a.check_order(b);
        CycloElem r(a);
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] + b.coeffs_[i];
        return r;
    }
    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) {
        a.check_order(b);
        CycloElem r(a);
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] - b.coeffs_[i];
        return r;
    }
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        a.check_order(b);
        CycloElem r(a.order_);
        std::vector<Rational> work(2 * r.coeffs_.size(), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                work[i + j] = work[i + j] + a.coeffs_[i] * b.coeffs_[j];
        }
        reduce(work, detail::cyclotomic_polynomial(a.order_));
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = work[i];
        return r;
    }
    friend CycloElem operator*(const Rational& c, const CycloElem& a) {
        CycloElem r(a);
        for (auto& x : r.coeffs_) x = c * x;
        return r;
    }
    friend bool operator==(const CycloElem& a, const CycloElem& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    // Multiplicative inverse via extended Euclid against the minimal polynomial.
    CycloElem inverse() const {
        if (is_zero()) fail(errc::domain_error, "inverse of zero cyclotomic element");
        if (is_rational()) return CycloElem(order_, coeffs_[0].inv());
        const auto& phim = detail::cyclotomic_polynomial(order_);
        detail::RatPoly r0(phim.size());
        for (size_t i = 0; i < phim.size(); ++i) r0[i] = Rational(phim[i]);
        detail::RatPoly r1(coeffs_.begin(), coeffs_.end());
        detail::rp_trim(r1);
        detail::RatPoly t0, t1{Rational(1)};
        while (!r1.empty()) {
            auto [q, rem] = detail::rp_divmod(r0, r1);
            detail::RatPoly t2 = detail::rp_sub(t0, detail::rp_mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r0 is a nonzero constant: the minimal polynomial is irreducible.
        assert(r0.size() == 1);
        CycloElem inv(order_);
        Rational scale = r0[0].inv();
        for (size_t i = 0; i < t0.size() && i < inv.coeffs_.size(); ++i)
            inv.coeffs_[i] = t0[i] * scale;
        assert(t0.size() <= inv.coeffs_.size());
        return inv;
    }

    // Galois action z -> z^t for gcd(t, m) = 1.
    CycloElem apply_galois(unsigned long t) const {
        t %= order_;
        if (std::gcd(t, order_) != 1)
            fail(errc::domain_error, "galois exponent not coprime to order");
        CycloElem r(order_);
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            r = r + coeffs_[i] * monomial(order_, (unsigned long)(i) * t % order_);
        }
        return r;
    }
    CycloElem conj() const { return apply_galois(order_ - 1 == 0 ? 1 : order_ - 1); }

    // Embedding sending the basis root to exp(2*pi*i*k/m).
    BigComplex embed(mpfr_prec_t prec, unsigned long k = 1) const {
        if (std::gcd(k % order_, order_) != 1 && order_ > 1)
            fail(errc::domain_error, "embedding exponent not coprime to order");
        mpfr_prec_t w = prec + 16;
        BigComplex acc(w);
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            acc += BigFloat(coeffs_[i], w) * root_of_unity((long)(i * k % order_), order_, w);
        }
        return acc.round_to(prec);
    }

private:
    unsigned long order_;
    std::vector<Rational> coeffs_;

    void check_order(const CycloElem& o) const {
        if (order_ != o.order_) fail(errc::domain_error, "cyclotomic order mismatch");
    }

    // In-place reduction of a raw coefficient vector modulo the (monic)
    // minimal polynomial.
    static void reduce(std::vector<Rational>& work, const detail::IntPoly& phi) {
        size_t d = phi.size() - 1;
        for (size_t i = work.size(); i-- > d;) {
            if (work[i].is_zero()) continue;
            Rational c = work[i];
            work[i] = Rational(0);
            for (size_t j = 0; j < d; ++j)
                work[i - d + j] = work[i - d + j] - c * Rational(phi[j]);
        }
    }
};

// Formal integer combination of m-th roots of unity, kept as a sparse
// exponent -> multiplicity map so large sums embed with one rounding pass.
class RootSum {
public:
    explicit RootSum(unsigned long m) : order_(m) {}

    unsigned long order() const { return order_; }

    void add(unsigned long exponent, long mult = 1) {
        if (mult == 0) return;
        auto [it, fresh] = counts_.try_emplace(exponent % order_, 0);
        it->second += mult;
        if (it->second == 0) counts_.erase(it);
        (void)fresh;
    }

    CycloElem to_cyclo() const {
        CycloElem acc(order_);
        for (const auto& [e, c] : counts_)
            acc = acc + Rational(Integer(c)) * CycloElem::monomial(order_, e);
        return acc;
    }

    BigComplex embed(mpfr_prec_t prec) const {
        mpfr_prec_t w = prec + 16;
        BigComplex acc(w);
        for (const auto& [e, c] : counts_) {
            BigComplex z = root_of_unity((long)e, order_, w);
            acc += BigFloat((long)c, w) * z;
        }
        return acc.round_to(prec);
    }

private:
    unsigned long order_;
    std::map<unsigned long, long> counts_;
};

} // namespace lfun

#endif

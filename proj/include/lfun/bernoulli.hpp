#ifndef LFUN_BERNOULLI_HPP
#define LFUN_BERNOULLI_HPP

#include <mutex>
#include <vector>

#include "rational.hpp"

namespace lfun {

namespace detail {

inline std::mutex& bernoulli_mutex() {
    static std::mutex m;
    return m;
}

inline std::vector<Rational>& bernoulli_table() {
    static std::vector<Rational> t{Rational(1)};
    return t;
}

} // namespace detail

// B_k with the B_1 = -1/2 convention, via the defining recurrence
// sum_{j=0}^{k} C(k+1, j) B_j = 0 for k >= 1. Cached, lazily extended,
// guarded by a mutex so parallel evaluations can share it.
inline Rational bernoulli_number(unsigned k) {
    std::lock_guard<std::mutex> lock(detail::bernoulli_mutex());
    auto& t = detail::bernoulli_table();
    while (t.size() <= k) {
        unsigned m = (unsigned)t.size();
        Rational acc(0);
        for (unsigned j = 0; j < m; ++j)
            acc += Rational(binomial(m + 1, j)) * t[j];
        t.push_back(-acc / Rational(Integer(m + 1)));
    }
    return t[k];
}

// B_k(x) = sum_j C(k, j) B_j x^{k-j}, evaluated exactly (Horner in x).
inline Rational bernoulli_polynomial(unsigned k, const Rational& x) {
    Rational acc(0);
    for (unsigned j = 0; j <= k; ++j)
        acc = acc * x + Rational(binomial(k, j)) * bernoulli_number(j);
    return acc;
}

} // namespace lfun

#endif

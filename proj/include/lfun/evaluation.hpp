#ifndef LFUN_EVALUATION_HPP
#define LFUN_EVALUATION_HPP

#include <string>

#include "numeric.hpp"

namespace lfun {

enum class Route { euler_maclaurin, functional_equation, exact, series, agm };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::euler_maclaurin: return "euler_maclaurin";
        case Route::functional_equation: return "functional_equation";
        case Route::exact: return "exact";
        case Route::series: return "series";
        case Route::agm: return "agm";
    }
    return "?";
}

// Numeric result with an absolute error estimate and provenance metadata.
// route == exact means the value is a correctly rounded image of an exact
// rational, and error_bound is identically zero by convention.
struct Evaluation {
    BigComplex value;
    BigFloat error_bound;
    Route route = Route::euler_maclaurin;
    long prec_bits = 0;

    Evaluation() = default;
    Evaluation(BigComplex v, BigFloat e, Route r, long p)
        : value(std::move(v)), error_bound(std::move(e)), route(r), prec_bits(p) {}

    static Evaluation exact_value(BigComplex v, long prec) {
        return Evaluation(std::move(v), BigFloat((mpfr_prec_t)32), Route::exact, prec);
    }
};

// Rounds a working-precision value down to the output precision and adds
// the rounding ulp to the error bound, so the bound stays valid for the
// value actually stored.
inline Evaluation rounded_eval(const BigComplex& v, const BigFloat& err, Route r, long prec) {
    BigComplex rv = v.round_to(prec);
    return Evaluation(rv, err + rv.abs().mul_2si(-prec + 1), r, prec);
}

} // namespace lfun

#endif

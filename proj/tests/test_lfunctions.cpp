#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "lfun/dedekind.hpp"
#include "lfun/lfunctions.hpp"
#include "oracle_constants.hpp"
#include "test_util.hpp"

using namespace lfun;
using testutil::pow2;
using testutil::ref;

namespace {

BigComplex cx(long v, long prec) { return BigComplex(BigFloat(v, (mpfr_prec_t)(prec + 32))); }

void check_real(const Evaluation& e, const BigFloat& r) {
    BigFloat tol = e.error_bound + pow2(-200);
    INFO("value " << e.value.re.to_decimal(30) << " vs " << r.to_decimal(30));
    REQUIRE((e.value.re - r).abs() < tol);
    REQUIRE(e.value.im.abs() <= e.error_bound);
}

} // namespace

TEST_CASE("generalized bernoulli numbers at known points", "[lfunctions]") {
    DirichletCharacter chi4 = quadratic_character(-4);
    DirichletCharacter chi5 = quadratic_character(5);
    REQUIRE(gen_bernoulli(1, chi4).value.as_rational() == Rational(-1, 2));
    REQUIRE(gen_bernoulli(2, chi5).value.as_rational() == Rational(4, 5));
    REQUIRE(gen_bernoulli(2, chi4).value.is_zero());
    // the mod-1 sum runs over a = 1, so the trivial index-1 value is B_1(1)
    REQUIRE(gen_bernoulli(1, DirichletCharacter::trivial(1)).value.as_rational() ==
            Rational(1, 2));
    REQUIRE_THROWS_AS(gen_bernoulli(0, chi4), error);
    REQUIRE_THROWS_AS(gen_bernoulli(2, DirichletCharacter::trivial(12)), error);
}

TEST_CASE("exact special values at nonpositive integers", "[lfunctions]") {
    REQUIRE(l_exact_nonpos(2, DirichletCharacter::trivial(1)).as_rational() == Rational(-1, 12));
    REQUIRE(l_exact_nonpos(1, quadratic_character(-4)).as_rational() == Rational(1, 2));
    REQUIRE(l_exact_nonpos(2, quadratic_character(5)).as_rational() == Rational(-2, 5));
    REQUIRE(l_exact_nonpos(4, DirichletCharacter::trivial(1)).as_rational() == Rational(1, 120));
    // parity mismatch forces the trivial zero
    REQUIRE(l_exact_nonpos(2, quadratic_character(-4)).is_zero());
    REQUIRE(l_exact_nonpos(3, quadratic_character(5)).is_zero());
    REQUIRE_THROWS_AS(l_exact_nonpos(1, DirichletCharacter::trivial(1)), error);
}

TEST_CASE("numeric values at anchored points", "[lfunctions]") {
    const long prec = 192;
    const mpfr_prec_t w = prec + 32;
    check_real(l_value(cx(1, prec), quadratic_character(-4), prec), bf_pi(w) / BigFloat(4, w));
    check_real(l_value(cx(2, prec), quadratic_character(-4), prec), ref(oracle::catalan_const));
    check_real(l_value(cx(-1, prec), quadratic_character(5), prec),
               BigFloat(Rational(-2, 5), w));
    // class number formula anchor: L(1, chi_5) = 2 log((1+sqrt5)/2)/sqrt5
    BigFloat root5 = sqrt(BigFloat(5, w));
    BigFloat expect = log((BigFloat(1, w) + root5).mul_2si(-1)).mul_2si(1) / root5;
    check_real(l_value(cx(1, prec), quadratic_character(5), prec), expect);
    REQUIRE_THROWS_AS(l_value(cx(1, prec), DirichletCharacter::trivial(1), prec), error);
    REQUIRE_THROWS_AS(l_value(BigComplex(BigFloat(1, w), BigFloat(1, w)),
                              quadratic_character(5), prec),
                      error);
}

TEST_CASE("numeric derivative at anchored points", "[lfunctions]") {
    const long prec = 192;
    const mpfr_prec_t w = prec + 32;
    check_real(l_deriv(cx(0, prec), quadratic_character(-4), prec), ref(oracle::lderiv_m4_at0));
    check_real(l_deriv(cx(-1, prec), DirichletCharacter::trivial(1), prec),
               ref(oracle::zeta_prime_minus1));
    check_real(l_deriv(cx(0, prec), DirichletCharacter::trivial(1), prec),
               log(bf_pi(w).mul_2si(1)).mul_2si(-1) * BigFloat(-1, w));
}

TEST_CASE("numeric evaluation matches the exact algebraic value", "[lfunctions]") {
    const long prec = 128;
    for (unsigned long q = 1; q <= 12; ++q) {
        for (const auto& chi : enumerate_characters(q)) {
            if (!chi.is_primitive()) continue;
            for (unsigned n = 1; n <= 6; ++n) {
                if (n == 1 && chi.is_trivial()) continue;
                CycloElem exact = l_exact_nonpos(n, chi);
                Evaluation num = l_value(cx(1 - (long)n, prec), chi, prec);
                BigComplex ex = exact.embed(prec + 16);
                BigFloat tol = num.error_bound + (ex.abs() + BigFloat(1, prec)) * pow2(8 - prec);
                REQUIRE((num.value - ex).abs() < tol);
            }
        }
    }
}

TEST_CASE("log derivative anchors and provenance", "[lfunctions]") {
    const long prec = 192;
    struct Anchor {
        unsigned n;
        long D;
        const char* digits;
    };
    const Anchor anchors[] = {
        {1, -4, oracle::loglderiv_m4_at0},  {1, -3, oracle::loglderiv_m3_at0},
        {2, 5, oracle::loglderiv_5_atm1},   {2, 8, oracle::loglderiv_8_atm1},
        {2, 12, oracle::loglderiv_12_atm1}, {2, 13, oracle::loglderiv_13_atm1},
        {3, -3, oracle::loglderiv_m3_atm2}, {3, -4, oracle::loglderiv_m4_atm2},
        {3, -7, oracle::loglderiv_m7_atm2},
    };
    for (const auto& a : anchors) {
        LogDerivResult r = l_logderiv_neg(a.n, quadratic_character(a.D), prec);
        check_real(r.value, ref(a.digits));
        REQUIRE(r.value.value.re == r.route_a.value.re);
        REQUIRE(r.agreement <= r.route_a.error_bound + r.route_b.error_bound);
    }
    LogDerivResult z = l_logderiv_neg(2, DirichletCharacter::trivial(1), prec);
    check_real(z.value, ref(oracle::zetalog_minus1));
}

TEST_CASE("log derivative refusals", "[lfunctions]") {
    const long prec = 128;
    REQUIRE_THROWS_AS(l_logderiv_neg(0, quadratic_character(5), prec), error);
    try {
        l_logderiv_neg(1, DirichletCharacter::trivial(1), prec);
        FAIL("expected a pole refusal");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::pole);
    }
    try {
        l_logderiv_neg(2, quadratic_character(-4), prec);
        FAIL("expected a trivial zero refusal");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::trivial_zero);
    }
}

TEST_CASE("route selection is honored", "[lfunctions]") {
    const long prec = 128;
    DirichletCharacter chi5 = quadratic_character(5);
    LogDerivResult both = l_logderiv_neg(2, chi5, prec, RouteChoice::both);
    LogDerivResult direct = l_logderiv_neg(2, chi5, prec, RouteChoice::direct);
    LogDerivResult func = l_logderiv_neg(2, chi5, prec, RouteChoice::functional);
    REQUIRE(direct.route_a.value.re == direct.route_b.value.re);
    REQUIRE(func.route_a.value.re == func.route_b.value.re);
    REQUIRE(direct.value.value.re == both.route_a.value.re);
    REQUIRE(func.value.value.re == both.route_b.value.re);
    REQUIRE(func.value.route == Route::functional_equation);
    // n = 1 has no functional transfer; the request falls back to direct
    LogDerivResult one = l_logderiv_neg(1, quadratic_character(-4), prec, RouteChoice::functional);
    REQUIRE(one.route_a.value.re == one.route_b.value.re);
}

TEST_CASE("both routes agree far below the target precision", "[lfunctions]") {
    const long prec = 192;
    const BigFloat tol = pow2(-96);
    for (unsigned long q = 1; q <= 12; ++q) {
        for (const auto& chi : enumerate_characters(q)) {
            if (!chi.is_primitive()) continue;
            for (unsigned n = 2; n <= 4; ++n) {
                if (chi.is_even() != (n % 2 == 0)) continue;
                LogDerivResult r = l_logderiv_neg(n, chi, prec);
                INFO(character_label(chi) << " n=" << n << " agreement "
                                          << r.agreement.to_decimal(5));
                REQUIRE(r.agreement < tol);
            }
        }
    }
}

TEST_CASE("conjugate characters give conjugate values", "[lfunctions]") {
    const long prec = 160;
    // an order-4 character mod 5 and an order-6 character mod 7
    for (auto [q, n] : {std::pair<unsigned long, unsigned>{5, 1},
                        std::pair<unsigned long, unsigned>{7, 2}}) {
        for (const auto& chi : enumerate_characters(q)) {
            if (!chi.is_primitive() || chi.order() <= 2) continue;
            if (chi.is_even() != (n % 2 == 0)) continue;
            LogDerivResult r = l_logderiv_neg(n, chi, prec);
            LogDerivResult rc = l_logderiv_neg(n, chi.conjugate(), prec);
            BigFloat tol = r.value.error_bound + rc.value.error_bound + pow2(8 - prec);
            REQUIRE((rc.value.value.re - r.value.value.re).abs() < tol);
            REQUIRE((rc.value.value.im + r.value.value.im).abs() < tol);
        }
    }
}

TEST_CASE("derivative at zero reduces to log gamma sums", "[lfunctions]") {
    const long prec = 128;
    const mpfr_prec_t w = prec + 32;
    for (unsigned long q = 3; q <= 21; ++q) {
        for (const auto& chi : enumerate_characters(q)) {
            if (chi.is_trivial() || !chi.is_primitive()) continue;
            Evaluation lhs = l_deriv(cx(0, prec), chi, prec);
            BigComplex rhs(w);
            BigFloat rhs_err(0, w);
            for (unsigned long a = 1; a < q; ++a) {
                BigComplex c = chi.value_embedded((long)a, w);
                if (c.abs().sign() == 0) continue;
                Evaluation lg = log_gamma(BigFloat(Rational((long)a, (long)q), w), prec);
                rhs += lg.value.re * c;
                rhs_err += lg.error_bound;
            }
            BigComplex l0 = l_exact_nonpos(1, chi).embed(w);
            rhs -= BigComplex(log(BigFloat((long)q, w))) * l0;
            BigFloat tol = lhs.error_bound + rhs_err + pow2(8 - prec);
            INFO(character_label(chi));
            REQUIRE((lhs.value - rhs).abs() < tol);
        }
    }
}

TEST_CASE("dedekind log derivatives decompose over characters", "[lfunctions]") {
    const long prec = 192;
    const mpfr_prec_t w = prec + 32;
    Evaluation rat = dedekind_logderiv(AbelianFieldSpec{1, {}}, 2, prec);
    check_real(rat, ref(oracle::zetalog_minus1));
    Evaluation k5 = dedekind_logderiv(quadratic_field_spec(5), 2, prec);
    check_real(k5, ref(oracle::zetalog_minus1).round_to(w) + ref(oracle::loglderiv_5_atm1).round_to(w));
    try {
        dedekind_logderiv(quadratic_field_spec(-4), 1, prec);
        FAIL("expected the pole refusal to name the trivial character");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::pole);
        REQUIRE(std::string(e.what()).find("trivial") != std::string::npos);
    }
    REQUIRE_THROWS_AS(dedekind_logderiv(quadratic_field_spec(-4), 2, prec), error);
    REQUIRE_THROWS_AS(dedekind_logderiv(quadratic_field_spec(5), 3, prec), error);
}

TEST_CASE("ideal counting reproduces the character decomposition", "[lfunctions]") {
    const long prec = 128;
    Evaluation ideals = dedekind_via_ideals(5, 2, prec);
    Evaluation chars = dedekind_logderiv(quadratic_field_spec(5), 2, prec);
    REQUIRE((ideals.value.re - chars.value.re).abs() <
            ideals.error_bound + chars.error_bound + pow2(4 - prec));
    // the odd CM comparison runs against the regularized trivial part
    Evaluation odd = dedekind_via_ideals(-4, 3, prec);
    Evaluation sum = detail::quadratic_charsum_logderiv(-4, 3, prec);
    REQUIRE((odd.value.re - sum.value.re).abs() <
            odd.error_bound + sum.error_bound + pow2(4 - prec));
    REQUIRE_THROWS_AS(dedekind_via_ideals(-4, 2, prec), error);
    REQUIRE_THROWS_AS(dedekind_via_ideals(5, 3, prec), error);
    REQUIRE_THROWS_AS(dedekind_via_ideals(7, 2, prec), error);
}

TEST_CASE("raising precision does not move the value", "[lfunctions]") {
    for (long prec : {128L, 192L}) {
        LogDerivResult lo = l_logderiv_neg(2, DirichletCharacter::trivial(1), prec);
        LogDerivResult hi = l_logderiv_neg(2, DirichletCharacter::trivial(1), prec + 64);
        REQUIRE((lo.value.value.re - hi.value.value.re).abs() < lo.value.error_bound);
        Evaluation lv = l_value(cx(2, prec), quadratic_character(-4), prec);
        Evaluation hv = l_value(cx(2, prec + 64), quadratic_character(-4), prec + 64);
        REQUIRE((lv.value.re - hv.value.re).abs() < lv.error_bound);
    }
}

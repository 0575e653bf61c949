#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "lfun/bernoulli.hpp"
#include "lfun/cyclotomic.hpp"
#include "test_util.hpp"

using namespace lfun;
using testutil::pow2;

TEST_CASE("rational arithmetic stays reduced", "[exact]") {
    Rational a(6, 4);
    REQUIRE(a.to_string() == "3/2");
    REQUIRE(Rational(-3, -6).to_string() == "1/2");
    REQUIRE(Rational(3, -6).to_string() == "-1/2");
    REQUIRE(Rational(7).to_string() == "7/1");
    REQUIRE(Rational::from_string("22/8") == Rational(11, 4));
    REQUIRE(Rational::from_string("-5") == Rational(-5));
    REQUIRE(Rational(2, 3) + Rational(1, 6) == Rational(5, 6));
    REQUIRE(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
    REQUIRE(Rational(1, 2).pow(-3) == Rational(8));
    REQUIRE_THROWS_AS(Rational(1, 0), error);
}

TEST_CASE("bernoulli numbers satisfy the defining recurrence", "[exact]") {
    // sum_{j<=k} C(k+1, j) B_j = 0 for every k >= 1
    for (unsigned k = 1; k <= 60; ++k) {
        Rational acc(0);
        for (unsigned j = 0; j <= k; ++j)
            acc += Rational(binomial(k + 1, j)) * bernoulli_number(j);
        REQUIRE(acc == Rational(0));
    }
    REQUIRE(bernoulli_number(0) == Rational(1));
    REQUIRE(bernoulli_number(1) == Rational(-1, 2));
    REQUIRE(bernoulli_number(2) == Rational(1, 6));
    REQUIRE(bernoulli_number(12) == Rational(-691, 2730));
    for (unsigned k = 3; k <= 59; k += 2) REQUIRE(bernoulli_number(k) == Rational(0));
}

TEST_CASE("bernoulli polynomials evaluate exactly", "[exact]") {
    REQUIRE(bernoulli_polynomial(1, Rational(1, 2)) == Rational(0));
    REQUIRE(bernoulli_polynomial(2, Rational(1, 5)) == Rational(1, 150));
    REQUIRE(bernoulli_polynomial(2, Rational(1, 4)) == Rational(-1, 48));
    // B_k(0) = B_k(1) = B_k away from the k = 1 asymmetry
    for (unsigned k = 0; k <= 40; ++k) {
        if (k == 1) continue;
        REQUIRE(bernoulli_polynomial(k, Rational(0)) == bernoulli_number(k));
        REQUIRE(bernoulli_polynomial(k, Rational(1)) == bernoulli_number(k));
    }
    REQUIRE(bernoulli_polynomial(1, Rational(0)) == Rational(-1, 2));
    REQUIRE(bernoulli_polynomial(1, Rational(1)) == Rational(1, 2));
}

TEST_CASE("harmonic numbers telescope", "[exact]") {
    REQUIRE(harmonic_number(0).value == Rational(0));
    REQUIRE(harmonic_number(1).value == Rational(1));
    REQUIRE(harmonic_number(4).value == Rational(25, 12));
    for (unsigned n = 1; n <= 1000; ++n) {
        Rational step = harmonic_number(n).value - harmonic_number(n - 1).value;
        REQUIRE(step == Rational(1, (long)n));
    }
}

TEST_CASE("euler phi and cyclotomic degrees agree", "[exact]") {
    REQUIRE(euler_phi(1) == 1);
    REQUIRE(euler_phi(12) == 4);
    REQUIRE(euler_phi(60) == 16);
    for (unsigned long m : {1ul, 3ul, 4ul, 5ul, 8ul, 12ul, 15ul})
        REQUIRE(CycloElem(m).coeffs().size() == euler_phi(m));
}

namespace {

CycloElem random_elem(unsigned long m, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    CycloElem e(m, Rational(num(rng), den(rng)));
    for (unsigned long k = 1; k < euler_phi(m); ++k)
        e = e + Rational(num(rng), den(rng)) * CycloElem::monomial(m, k);
    return e;
}

} // namespace

TEST_CASE("cyclotomic field axioms hold on sampled elements", "[exact]") {
    std::mt19937 rng(20260814);
    for (unsigned long m : {3ul, 4ul, 5ul, 8ul, 12ul}) {
        const CycloElem one(m, Rational(1));
        for (int trial = 0; trial < 8; ++trial) {
            CycloElem a = random_elem(m, rng);
            CycloElem b = random_elem(m, rng);
            CycloElem c = random_elem(m, rng);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a * b == b * a);
            if (!a.is_zero()) REQUIRE(a * a.inverse() == one);
        }
    }
}

TEST_CASE("cyclotomic identities at small order", "[exact]") {
    CycloElem i4 = CycloElem::monomial(4, 1);
    CycloElem minus1(4, Rational(-1));
    REQUIRE(i4 * i4 == minus1);
    REQUIRE(i4.inverse() == Rational(-1) * i4);
    // zeta_5 + ... + zeta_5^4 = -1 after reduction by the minimal polynomial
    CycloElem s(5);
    for (unsigned long k = 1; k <= 4; ++k) s = s + CycloElem::monomial(5, k);
    REQUIRE(s.is_rational());
    REQUIRE(s.as_rational() == Rational(-1));
}

TEST_CASE("galois action permutes roots", "[exact]") {
    CycloElem z = CycloElem::monomial(12, 1);
    REQUIRE(z.apply_galois(5) == CycloElem::monomial(12, 5));
    REQUIRE_THROWS_AS(z.apply_galois(2), error);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        CycloElem a = random_elem(8, rng);
        CycloElem b = random_elem(8, rng);
        REQUIRE((a * b).apply_galois(3) == a.apply_galois(3) * b.apply_galois(3));
    }
}

TEST_CASE("complex embedding is a ring homomorphism", "[exact]") {
    const long prec = 128;
    const BigFloat tol = pow2(8 - prec);
    std::mt19937 rng(99);
    for (unsigned long m : {3ul, 5ul, 8ul, 12ul}) {
        for (int trial = 0; trial < 6; ++trial) {
            CycloElem a = random_elem(m, rng);
            CycloElem b = random_elem(m, rng);
            BigComplex lhs = (a * b).embed(prec);
            BigComplex rhs = a.embed(prec) * b.embed(prec);
            REQUIRE((lhs - rhs).abs() < tol);
            BigComplex ls = (a + b).embed(prec);
            BigComplex rs = a.embed(prec) + b.embed(prec);
            REQUIRE((ls - rs).abs() < tol);
        }
    }
    // the standard embedding sends zeta_4 to i
    BigComplex i = CycloElem::monomial(4, 1).embed(prec);
    REQUIRE(i.re.abs() < tol);
    REQUIRE((i.im - BigFloat(1, prec)).abs() < tol);
}

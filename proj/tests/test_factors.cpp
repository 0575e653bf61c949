#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "lfun/serialize.hpp"
#include "oracle_constants.hpp"
#include "test_util.hpp"

using namespace lfun;
using testutil::pow2;
using testutil::ref;

namespace {

void check_real(const Evaluation& e, const BigFloat& r) {
    BigFloat tol = e.error_bound + pow2(-200);
    INFO("value " << e.value.re.to_decimal(30) << " vs " << r.to_decimal(30));
    REQUIRE((e.value.re - r).abs() < tol);
    REQUIRE(e.value.im.abs() <= e.error_bound);
}

} // namespace

TEST_CASE("parallel map preserves order and surfaces the first failure", "[parallel]") {
    auto out = parallel_map(100, 8, [](std::size_t i) { return i * i; });
    REQUIRE(out.size() == 100);
    for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out[i] == i * i);
    std::atomic<int> calls{0};
    try {
        parallel_map(100, 8, [&](std::size_t i) -> int {
            ++calls;
            if (i == 37 || i == 73) throw std::runtime_error("boom at " + std::to_string(i));
            return 0;
        });
        FAIL("expected the worker exception to propagate");
    } catch (const std::runtime_error& e) {
        REQUIRE(std::string(e.what()) == "boom at 37");
    }
    REQUIRE(parallel_map(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("correction factor at its anchor points", "[factors]") {
    const long prec = 192;
    const mpfr_prec_t w = prec + 32;
    ColmezFactor k = colmez_factor(DirichletCharacter::trivial(1), 2, prec);
    REQUIRE(k.harmonic_term == Rational(1, 2));
    check_real(k.logderiv, ref(oracle::zetalog_minus1));
    check_real(k.log2_term, bf_log2(w) * BigFloat(Rational(4, 3), w));
    check_real(k.total, ref(oracle::kuhn_scalar));

    ColmezFactor m4 = colmez_factor(quadratic_character(-4), 1, prec);
    REQUIRE(m4.harmonic_term == Rational(0));
    REQUIRE(m4.log2_term.route == Route::exact);
    REQUIRE(m4.log2_term.error_bound.sign() == 0);
    REQUIRE(m4.log2_term.value.re.sign() == 0);
    check_real(m4.total, ref(oracle::loglderiv_m4_at0));
}

TEST_CASE("correction factor refusals and reductions", "[factors]") {
    const long prec = 128;
    try {
        colmez_factor(DirichletCharacter::trivial(1), 1, prec);
        FAIL("expected the excluded case");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::excluded_case);
    }
    // the excluded case is detected after reduction to the primitive part
    REQUIRE_THROWS_AS(colmez_factor(DirichletCharacter::trivial(12), 1, prec), error);
    REQUIRE(colmez_factor(DirichletCharacter::trivial(12), 2, prec).chi.modulus() == 1);
    REQUIRE_THROWS_AS(colmez_factor(quadratic_character(-4), 0, prec), error);
    try {
        colmez_factor(quadratic_character(-4), 2, prec);
        FAIL("expected the trivial zero refusal");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::trivial_zero);
    }
}

TEST_CASE("log 2 term follows the closed form", "[factors]") {
    const long prec = 160;
    const mpfr_prec_t w = prec + 32;
    for (unsigned n = 2; n <= 8; n += 2) {
        ColmezFactor f = colmez_factor(DirichletCharacter::trivial(1), n, prec);
        Rational denom = Rational(1) - Rational(1, 2).pow((long)n);
        check_real(f.log2_term, bf_log2(w) / BigFloat(denom, w));
    }
    for (unsigned n : {1u, 3u}) {
        ColmezFactor f = colmez_factor(quadratic_character(-4), n, prec);
        REQUIRE(f.log2_term.value.abs().sign() == 0);
        REQUIRE(f.log2_term.error_bound.sign() == 0);
    }
}

TEST_CASE("factor total equals the sum of its displayed terms", "[factors]") {
    const long prec = 160;
    const mpfr_prec_t w = prec + 32;
    struct Probe {
        long D;
        unsigned n;
    };
    for (const auto& p : {Probe{0, 2}, Probe{0, 4}, Probe{0, 6}, Probe{5, 2}, Probe{-3, 3}}) {
        DirichletCharacter chi =
            p.D == 0 ? DirichletCharacter::trivial(1) : quadratic_character(p.D);
        ColmezFactor f = colmez_factor(chi, p.n, prec);
        BigComplex rhs =
            f.logderiv.value + BigComplex(BigFloat(f.harmonic_term, w)) - f.log2_term.value;
        BigFloat tol = f.total.error_bound + f.logderiv.error_bound + f.log2_term.error_bound +
                       pow2(4 - prec);
        REQUIRE((f.total.value - rhs).abs() < tol);
    }
}

TEST_CASE("proven case scalar is tight and stable", "[factors]") {
    Evaluation k = kuhn_case_factor(192);
    check_real(k, ref(oracle::kuhn_scalar));
    REQUIRE(k.error_bound < pow2(-150));
    ColmezFactor full = colmez_factor(DirichletCharacter::trivial(1), 2, 192);
    REQUIRE(k.value.re == full.total.value.re);
    Evaluation k2 = kuhn_case_factor(384);
    REQUIRE((k.value.re - k2.value.re).abs() < BigFloat::from_string("1e-29", 64));
}

TEST_CASE("degree two coefficient for real quadratic fields", "[factors]") {
    const long prec = 192;
    const mpfr_prec_t w = prec + 32;
    DegreeCoefficient c5 = prop22_coefficient(quadratic_field_spec(5), prec);
    REQUIRE(c5.d == 2);
    REQUIRE(c5.decomposition.size() == 2);
    REQUIRE(c5.decomposition[0].first.is_trivial());
    check_real(c5.value, ref(oracle::prop22_sqrt5));

    // rebuild the closed form from the decomposition it reports
    BigComplex zK(w);
    BigFloat zK_err(0, w);
    for (const auto& [chi, ev] : c5.decomposition) {
        zK += ev.value;
        zK_err += ev.error_bound;
    }
    Evaluation x = l_logderiv_neg(2, DirichletCharacter::trivial(1), prec).value;
    BigFloat two3(Rational(2, 3), w);
    BigComplex inner = BigComplex(two3) * x.value + BigComplex(two3) * zK +
                       BigComplex(BigFloat(1, w) - BigFloat(Rational(16, 9), w) * bf_log2(w));
    BigComplex rebuilt = BigComplex(BigFloat(-3, w)) * inner;
    REQUIRE((rebuilt - c5.value.value).abs() < pow2(-120));

    DegreeCoefficient c8 = prop22_coefficient(quadratic_field_spec(8), prec);
    check_real(c8.value, ref(oracle::prop22_sqrt2));
    // the same field given by conductor and subgroup generators
    DegreeCoefficient c8b = prop22_coefficient(AbelianFieldSpec{8, {7}}, prec);
    REQUIRE(c8b.value.value.re == c8.value.value.re);
}

TEST_CASE("degree coefficient over the rationals", "[factors]") {
    const long prec = 192;
    const mpfr_prec_t w = prec + 32;
    DegreeCoefficient c1 = prop22_coefficient(AbelianFieldSpec{1, {}}, prec);
    REQUIRE(c1.d == 1);
    REQUIRE(c1.decomposition.size() == 1);
    check_real(c1.value, ref(oracle::prop22_d1));
    // d = 1 collapses to -2(x + 1/2 - (4/3) log 2)
    Evaluation x = l_logderiv_neg(2, DirichletCharacter::trivial(1), prec).value;
    BigComplex expect =
        BigComplex(BigFloat(-2, w)) *
        (x.value + BigComplex(BigFloat(Rational(1, 2), w) -
                              BigFloat(Rational(4, 3), w) * bf_log2(w)));
    REQUIRE((expect - c1.value.value).abs() < pow2(-120));
    REQUIRE_THROWS_AS(prop22_coefficient(quadratic_field_spec(-4), prec), error);
    REQUIRE_THROWS_AS(prop22_coefficient(AbelianFieldSpec{5, {}}, prec), error);
}

TEST_CASE("degree coefficient of the modular closed form", "[factors]") {
    const long prec = 192;
    DegreeCoefficient p = prop23_coefficient(prec);
    REQUIRE(p.d == 1);
    REQUIRE(p.decomposition.size() == 1);
    REQUIRE(p.decomposition[0].first.is_trivial());
    check_real(p.value, ref(oracle::prop23_value));
    // the two rational closed forms differ by an exact factor of two
    DegreeCoefficient c1 = prop22_coefficient(AbelianFieldSpec{1, {}}, prec);
    REQUIRE((p.value.value.re - c1.value.value.re.mul_2si(1)).abs() <
            p.value.error_bound + c1.value.error_bound.mul_2si(1) + pow2(-180));
    DegreeCoefficient p2 = prop23_coefficient(prec * 2);
    REQUIRE((p.value.value.re - p2.value.value.re).abs() < p.value.error_bound);
}

TEST_CASE("cm period residuals pass and sharpen with precision", "[factors]") {
    for (unsigned d : {3u, 4u}) {
        OracleReport lo = gross_cm_check(d, 128);
        OracleReport hi = gross_cm_check(d, 256);
        REQUIRE(lo.pass);
        REQUIRE(hi.pass);
        for (const auto& row : lo.rows) REQUIRE(row.residual < pow2(-128 + 16));
        for (const auto& row : hi.rows) REQUIRE(row.residual < pow2(-256 + 16));
        REQUIRE(hi.max_residual < lo.max_residual);
    }
    REQUIRE_THROWS_AS(gross_cm_check(5, 128), error);
}

TEST_CASE("verification suites all pass", "[factors]") {
    for (const auto& suite : run_verify("all", 192)) {
        INFO(suite.name);
        REQUIRE(suite.pass);
        for (const auto& row : suite.rows) {
            INFO(row.label << " residual " << row.residual.to_decimal(5) << " tolerance "
                           << row.tolerance.to_decimal(5));
            REQUIRE(row.pass);
        }
    }
    REQUIRE_THROWS_AS(run_verify("bogus", 128), error);
}

TEST_CASE("report rows carry factors, signs, and failures independently", "[report]") {
    const long prec = 192;
    const mpfr_prec_t w = prec + 32;
    std::vector<ConjectureEntry> entries;
    ConjectureEntry kuhn;
    kuhn.chi = DirichletCharacter::trivial(1);
    kuhn.n = 2;
    entries.push_back(kuhn);
    ConjectureEntry weighted;
    weighted.chi = quadratic_character(-4);
    weighted.n = 1;
    weighted.weight = Rational(3, 2);
    entries.push_back(weighted);
    ConjectureEntry field;
    field.is_field = true;
    field.field = quadratic_field_spec(5);
    field.n = 2;
    entries.push_back(field);
    ConjectureEntry excluded;
    excluded.chi = DirichletCharacter::trivial(1);
    excluded.n = 1;
    entries.push_back(excluded);

    ConjectureReport rep = conjecture_report(entries, prec);
    REQUIRE(rep.rows.size() == 4);
    REQUIRE(rep.oracles.empty());

    const auto& r0 = rep.rows[0];
    REQUIRE(r0.ok);
    check_real(r0.total, ref(oracle::kuhn_scalar));
    REQUIRE((r0.signed_value.value.re + r0.total.value.re).abs() <
            r0.signed_value.error_bound + r0.total.error_bound);
    REQUIRE(r0.note == "unconditionally proven case (K = Q, n = 2)");

    const auto& r1 = rep.rows[1];
    REQUIRE(r1.ok);
    REQUIRE(r1.note.empty());
    BigFloat scaled = r1.total.value.re * BigFloat(Rational(3, 2), w);
    REQUIRE((r1.signed_value.value.re + scaled).abs() <
            r1.signed_value.error_bound + r1.total.error_bound.mul_2si(1));

    const auto& r2 = rep.rows[2];
    REQUIRE(r2.ok);
    REQUIRE(r2.harmonic_term == Rational(1));
    REQUIRE(r2.decomposition.size() == 2);
    check_real(r2.logderiv,
               ref(oracle::zetalog_minus1).round_to(w) + ref(oracle::loglderiv_5_atm1).round_to(w));

    const auto& r3 = rep.rows[3];
    REQUIRE_FALSE(r3.ok);
    REQUIRE(r3.status.find("excluded") != std::string::npos);
}

TEST_CASE("report bytes are identical across threads and runs", "[report]") {
    std::vector<ConjectureEntry> entries;
    ConjectureEntry a;
    a.chi = DirichletCharacter::trivial(1);
    a.n = 2;
    entries.push_back(a);
    ConjectureEntry b;
    b.is_field = true;
    b.field = quadratic_field_spec(5);
    b.n = 2;
    entries.push_back(b);
    ConjectureEntry c;
    c.chi = quadratic_character(-3);
    c.n = 3;
    c.weight = Rational(7, 3);
    entries.push_back(c);

    std::string first = json_conjecture_report(conjecture_report(entries, 128, false, 1)).dump(2);
    for (unsigned threads : {1u, 4u, 8u}) {
        std::string again =
            json_conjecture_report(conjecture_report(entries, 128, false, threads)).dump(2);
        REQUIRE(again == first);
    }
    REQUIRE(text_conjecture_report(conjecture_report(entries, 128, false, 4)) ==
            text_conjecture_report(conjecture_report(entries, 128, false, 1)));
}

TEST_CASE("json serialization is parseable and carries the schema", "[serialize]") {
    const long prec = 128;
    ColmezFactor f = colmez_factor(quadratic_character(5), 2, prec);
    ojson j = json_colmez(f);
    ojson back = ojson::parse(j.dump());
    REQUIRE(back["chi"]["modulus"] == 5);
    REQUIRE(back["chi"]["parity"] == "even");
    REQUIRE(back["n"] == 2);
    REQUIRE(back["harmonic_term"] == "1/2");
    REQUIRE(back["logderiv"]["value"].contains("re"));
    REQUIRE(back["logderiv"]["prec_bits"] == prec);
    std::string route = back["logderiv"]["route"];
    REQUIRE((route == "euler_maclaurin" || route == "functional_equation"));

    DegreeCoefficient c = prop22_coefficient(quadratic_field_spec(5), prec);
    ojson jc = ojson::parse(json_coefficient(c).dump());
    REQUIRE(jc["kind"] == "prop22");
    REQUIRE(jc["d"] == 2);
    REQUIRE(jc["field"]["conductor"] == 5);
    REQUIRE(jc["decomposition"].size() == 2);
}

TEST_CASE("evaluation strings are decimal and self-describing", "[serialize]") {
    Evaluation e = kuhn_case_factor(128);
    std::string t = text_evaluation(e);
    REQUIRE(t.find("+/-") != std::string::npos);
    REQUIRE(t.find("euler_maclaurin") != std::string::npos);
    // decimal round trip stays within one ulp of the printed digits
    ojson j = json_evaluation(e);
    BigFloat back = BigFloat::from_string(j["value"]["re"], 160);
    REQUIRE((back - e.value.re).abs() < BigFloat::from_string("1e-36", 64));
    Evaluation ex = Evaluation::exact_value(BigComplex(BigFloat(Rational(1, 2), 64)), 64);
    REQUIRE(ex.error_bound.sign() == 0);
    REQUIRE(json_evaluation(ex)["route"] == "exact");
}

TEST_CASE("csv output quotes what needs quoting", "[serialize]") {
    REQUIRE(csv_escape("plain") == "plain");
    REQUIRE(csv_escape("a,b") == "\"a,b\"");
    REQUIRE(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    REQUIRE(csv_row({"a,b", "c"}) == "\"a,b\",c\n");
    std::vector<ConjectureEntry> entries;
    ConjectureEntry a;
    a.chi = quadratic_character(5);
    a.n = 2;
    entries.push_back(a);
    std::string csv = csv_conjecture_report(conjecture_report(entries, 128));
    REQUIRE(csv.rfind("kind,target,n,weight,value,error_bound,route,status", 0) == 0);
    REQUIRE(csv.find("character") != std::string::npos);
}

#ifndef LFUN_ORACLES_HPP
#define LFUN_ORACLES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "dedekind.hpp"
#include "factors.hpp"
#include "lfunctions.hpp"
#include "parallel.hpp"

namespace lfun {

// One verification identity: the two sides were computed by independent
// routes and their difference is compared against a tolerance.
struct OracleRow {
    std::string label;
    BigFloat residual;
    BigFloat tolerance;
    bool pass = false;
    std::string note;
};

struct OracleReport {
    std::string name;
    std::vector<OracleRow> rows;
    BigFloat max_residual;
    bool pass = true;
};

namespace detail {

inline void add_row(OracleReport& rep, std::string label, const BigFloat& residual,
                    const BigFloat& tolerance, std::string note = {}) {
    OracleRow row;
    row.label = std::move(label);
    row.residual = residual;
    row.tolerance = tolerance;
    row.pass = residual < tolerance;
    row.note = std::move(note);
    if (rep.rows.empty() || rep.max_residual < residual) rep.max_residual = residual;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(std::move(row));
}

} // namespace detail

// Lerch identity at s = 0: for every odd primitive chi of conductor <= q_max,
//   L'(0, chi) = -log(q) L(0, chi) + sum_a chi(a) log Gamma(a/q),
// with the left side from Euler-Maclaurin and the right side from Stirling
// plus the exact L(0, chi) = -B_{1,chi}. One row per conductor.
inline OracleReport lerch_identity_check(unsigned long q_max, long prec, unsigned threads = 0) {
    if (q_max > 100) fail(errc::domain_error, "lerch_identity_check is limited to q_max <= 100");
    if (threads == 0) threads = default_thread_count();
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat tol = BigFloat(1, w).mul_2si(-(prec - 42));

    std::vector<unsigned long> mods;
    for (unsigned long q = 3; q <= q_max; ++q)
        if (q % 4 != 2) mods.push_back(q);

    struct ModRow {
        unsigned long q;
        unsigned count;
        BigFloat residual;
    };
    auto per_mod = parallel_map(mods.size(), threads, [&](std::size_t idx) -> ModRow {
        unsigned long q = mods[idx];
        ModRow row{q, 0, BigFloat(w)};
        std::vector<BigFloat> lg(q);
        bool have_lg = false;
        for (const auto& chi : enumerate_characters(q)) {
            if (!chi.is_primitive() || chi.is_even()) continue;
            if (!have_lg) {
                for (unsigned long a = 1; a < q; ++a)
                    if (std::gcd(a, q) == 1)
                        lg[a] = log_gamma(BigFloat(Rational(Integer((long)a), Integer((long)q)), w), prec)
                                    .value.re.round_to(w);
                have_lg = true;
            }
            BigComplex rhs = BigComplex(-log(BigFloat((long)q, w))) * l_exact_nonpos(1, chi).embed(w);
            for (unsigned long a = 1; a < q; ++a) {
                unsigned long u;
                if (!chi.value_exponent((long)a, u)) continue;
                rhs += root_of_unity((long)u, chi.order(), w) * BigComplex(lg[a]);
            }
            BigComplex lhs = l_deriv(BigComplex(BigFloat(0, w)), chi, prec).value;
            BigFloat res = (lhs - rhs).abs();
            if (row.residual < res) row.residual = res;
            ++row.count;
        }
        return row;
    });

    OracleReport rep;
    rep.name = "lerch";
    rep.max_residual = BigFloat(w);
    for (const auto& row : per_mod) {
        if (row.count == 0) continue;
        detail::add_row(rep, "q=" + std::to_string(row.q), row.residual, tol,
                        std::to_string(row.count) + " odd primitive character(s)");
    }
    return rep;
}

// The n = 1 imaginary-quadratic instance, checked through Chowla-Selberg
// style identities: the real CM period computed by AGM against the Gamma
// product, L'/L(chi_{-d}, 0) against its closed Gamma form, and the bridge
// identity tying the period to the log-derivative.
inline OracleReport gross_cm_check(unsigned d, long prec) {
    if (d != 3 && d != 4) fail(errc::domain_error, "gross_cm_check supports d = 3 and d = 4 only");
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    BigFloat tol = BigFloat(1, w).mul_2si(-prec + 16);
    BigFloat lpi = log(bf_pi(w));
    BigFloat l2 = log(BigFloat(2, w));

    OracleReport rep;
    rep.name = "gross d=" + std::to_string(d);
    rep.max_residual = BigFloat(w);

    if (d == 4) {
        // period of y^2 = x^3 - x: agm route pi/agm(1, sqrt 2) versus
        // Gamma(1/4)^2 / (2 sqrt(2 pi))
        BigFloat period_agm = bf_pi(w) / agm(BigFloat(1, w), sqrt(BigFloat(2, w)), prec).value.re.round_to(w);
        BigFloat lg = log_gamma(BigFloat(Rational(1, 4), w), prec).value.re.round_to(w);
        BigFloat period_gamma = exp(BigFloat(2, w) * lg - l2 - (l2 + lpi).mul_2si(-1));
        detail::add_row(rep, "period agm vs gamma product", (period_agm - period_gamma).abs(), tol,
                        "period " + period_agm.to_decimal(12));

        BigFloat ll = l_logderiv_neg(1, quadratic_character(-4), prec).value.value.re.round_to(w);
        BigFloat closed = BigFloat(4, w) * lg - (BigFloat(3, w) * l2 + BigFloat(2, w) * lpi);
        detail::add_row(rep, "logderiv vs gamma closed form", (ll - closed).abs(), tol);

        BigFloat bridge = BigFloat(2, w) * log(period_agm) - lpi;
        detail::add_row(rep, "logderiv vs agm period bridge", (ll - bridge).abs(), tol);
    } else {
        // period of y^2 = x^3 - 1: agm route 3^{-1/4} pi/agm(1, (sqrt 6 + sqrt 2)/4)
        // versus Gamma(1/3)^3 / (2^{4/3} pi)
        BigFloat c = (sqrt(BigFloat(6, w)) + sqrt(BigFloat(2, w))).mul_2si(-2);
        BigFloat root34 = sqrt(sqrt(BigFloat(3, w)));
        BigFloat period_agm = bf_pi(w) / (agm(BigFloat(1, w), c, prec).value.re.round_to(w) * root34);
        BigFloat lg = log_gamma(BigFloat(Rational(1, 3), w), prec).value.re.round_to(w);
        BigFloat l3 = log(BigFloat(3, w));
        BigFloat period_gamma = exp(BigFloat(3, w) * lg - BigFloat(Rational(4, 3), w) * l2 - lpi);
        detail::add_row(rep, "period agm vs gamma product", (period_agm - period_gamma).abs(), tol,
                        "period " + period_agm.to_decimal(12));

        BigFloat ll = l_logderiv_neg(1, quadratic_character(-3), prec).value.value.re.round_to(w);
        BigFloat closed = BigFloat(6, w) * lg - BigFloat(3, w) * (l2 + lpi) + l3.mul_2si(-1);
        detail::add_row(rep, "logderiv vs gamma closed form", (ll - closed).abs(), tol);

        BigFloat bridge =
            BigFloat(2, w) * log(period_agm) - lpi - BigFloat(Rational(1, 3), w) * l2 + l3.mul_2si(-1);
        detail::add_row(rep, "logderiv vs agm period bridge", (ll - bridge).abs(), tol);
    }
    return rep;
}

// Character factorization of zeta_K against the ideal-count series for a
// quadratic field, compared after transfer to 1-n on both sides.
inline OracleReport factorization_consistency(const AbelianFieldSpec& K, unsigned n, long prec) {
    if (K.degree() != 2) fail(errc::domain_error, "the ideal-count oracle applies to quadratic fields");
    long D = 0;
    for (const auto& chi : characters_of_field(K))
        if (!chi.is_trivial()) D = chi.is_even() ? (long)chi.conductor() : -(long)chi.conductor();

    Evaluation charsum = detail::quadratic_charsum_logderiv(D, n, prec);
    Evaluation ideals = dedekind_via_ideals(D, n, prec);
    BigFloat disc = (charsum.value - ideals.value).abs();
    BigFloat tol = BigFloat(10, (mpfr_prec_t)(prec + 32)) * (charsum.error_bound + ideals.error_bound);

    OracleReport rep;
    rep.name = "factorization";
    rep.max_residual = BigFloat((mpfr_prec_t)(prec + 32));
    detail::add_row(rep, "D=" + std::to_string(D) + " n=" + std::to_string(n), disc, tol,
                    "charsum " + charsum.value.re.to_decimal(20) + ", ideals " +
                        ideals.value.re.to_decimal(20));
    return rep;
}

// All parity-permitted (D, n) pairs of the quadratic factorization check.
inline OracleReport factorization_suite(long prec) {
    OracleReport rep;
    rep.name = "factorization";
    rep.max_residual = BigFloat((mpfr_prec_t)(prec + 32));
    for (long D : {5L, 8L, 12L, 13L, -3L, -4L, -7L})
        for (unsigned n : {2u, 3u}) {
            if ((D > 0) != (n % 2 == 0)) continue;
            OracleReport one = factorization_consistency(quadratic_field_spec(D), n, prec);
            for (auto& row : one.rows) {
                if (rep.max_residual < row.residual) rep.max_residual = row.residual;
                rep.pass = rep.pass && row.pass;
                rep.rows.push_back(std::move(row));
            }
        }
    return rep;
}

// Kernel identities: self-contained consistency checks of the analytic
// substrate, each tying at least two independent code paths together.
inline OracleReport kernel_suite(long prec) {
    const mpfr_prec_t w = (mpfr_prec_t)(prec + 32);
    OracleReport rep;
    rep.name = "kernels";
    rep.max_residual = BigFloat(w);

    // zeta'(-1) against the Glaisher constant recovered from zeta'(2)
    {
        BigFloat zds = hurwitz_zeta_ds(BigComplex(BigFloat(-1, w)), BigFloat(1, w), prec).value.re.round_to(w);
        BigFloat zp2 = hurwitz_zeta_ds(BigComplex(BigFloat(2, w)), BigFloat(1, w), prec).value.re.round_to(w);
        BigFloat pi2 = bf_pi(w) * bf_pi(w);
        BigFloat logA =
            (bf_euler(w) + log(bf_pi(w).mul_2si(1)) - BigFloat(6, w) * zp2 / pi2) / BigFloat(12, w);
        BigFloat want = BigFloat(Rational(1, 12), w) - logA;
        detail::add_row(rep, "glaisher anchor zeta'(-1)", (zds - want).abs(),
                        want.abs() * BigFloat::from_string("1e-40", w));
    }

    // Hurwitz values at nonpositive integers against Bernoulli polynomials.
    // Tolerance is the evaluation's own bound: near s = -12 the head terms
    // reach ~(N+a)^{12} and cancel down to order one, so the honest bound
    // is far above the blanket output precision.
    {
        BigFloat worst(w), worst_tol = BigFloat(1, w).mul_2si(-prec + 8);
        bool all_ok = true;
        for (unsigned n = 0; n <= 12; ++n)
            for (auto [num, den] : {std::pair<long, long>{1, 5}, {2, 5}, {3, 5}, {4, 5}, {1, 4}, {3, 4}}) {
                Rational a(num, den);
                Evaluation zv = hurwitz_zeta(BigComplex(BigFloat(-(long)n, w)), BigFloat(a, w), prec);
                Rational exact = Rational(-1, (long)n + 1) * bernoulli_polynomial(n + 1, a);
                BigFloat res = (zv.value.re - BigFloat(exact, w)).abs();
                BigFloat tol = zv.error_bound + BigFloat(1, w).mul_2si(-prec + 4);
                all_ok = all_ok && res < tol;
                if (worst < res) {
                    worst = res;
                    worst_tol = tol;
                }
            }
        detail::add_row(rep, "hurwitz at nonpositive integers vs bernoulli", worst, worst_tol,
                        "n <= 12, a in {k/5, 1/4, 3/4}");
        rep.rows.back().pass = all_ok;
        rep.pass = true;
        for (const auto& r : rep.rows) rep.pass = rep.pass && r.pass;
    }

    // multiplication theorem sum_{r<q} zeta(s, (a+r)/q) = q^s zeta(s, a)
    {
        BigFloat worst(w), worst_tol = BigFloat(1, w).mul_2si(-prec + 8);
        bool all_ok = true;
        for (long qm : {2L, 3L})
            for (long s : {-3L, 2L, 5L})
                for (auto [num, den] : {std::pair<long, long>{1, 1}, {1, 2}, {1, 3}}) {
                    BigComplex sv(BigFloat(s, w));
                    BigFloat lhs(w), bound(w);
                    for (long r = 0; r < qm; ++r) {
                        Evaluation e =
                            hurwitz_zeta(sv, BigFloat(Rational(num + (long)den * r, den * qm), w), prec);
                        lhs += e.value.re.round_to(w);
                        bound += e.error_bound;
                    }
                    Evaluation e0 = hurwitz_zeta(sv, BigFloat(Rational(num, den), w), prec);
                    BigFloat qs(Rational(Integer(qm)).pow(s), w);
                    BigFloat rhs = qs * e0.value.re.round_to(w);
                    BigFloat res = (lhs - rhs).abs();
                    BigFloat tol = bound + qs.abs() * e0.error_bound + BigFloat(1, w).mul_2si(-prec + 4);
                    all_ok = all_ok && res < tol;
                    if (worst < res) {
                        worst = res;
                        worst_tol = tol;
                    }
                }
        detail::add_row(rep, "hurwitz multiplication theorem", worst, worst_tol,
                        "q in {2,3}, s in {-3,2,5}");
        rep.rows.back().pass = all_ok;
        rep.pass = true;
        for (const auto& r : rep.rows) rep.pass = rep.pass && r.pass;
    }

    // Lerch: zeta'(0, a) = log Gamma(a) - log(2 pi)/2 on a fixed grid
    {
        BigFloat worst(w), tol = BigFloat(1, w).mul_2si(-prec + 8);
        BigFloat half_l2pi = log(bf_pi(w).mul_2si(1)).mul_2si(-1);
        for (long k = 1; k <= 20; ++k) {
            BigFloat a(Rational(k, 21), w);
            BigFloat lhs = hurwitz_zeta_ds(BigComplex(BigFloat(0, w)), a, prec).value.re.round_to(w);
            BigFloat rhs = log_gamma(a, prec).value.re.round_to(w) - half_l2pi;
            BigFloat res = (lhs - rhs).abs();
            if (worst < res) worst = res;
        }
        detail::add_row(rep, "lerch zeta'(0,a) vs log gamma", worst, tol, "a = k/21, k = 1..20");
    }

    // reflection at 1/4: Gamma(1/4) Gamma(3/4) = pi sqrt(2)
    {
        BigFloat lhs = exp(log_gamma(BigFloat(Rational(1, 4), w), prec).value.re.round_to(w) +
                           log_gamma(BigFloat(Rational(3, 4), w), prec).value.re.round_to(w));
        BigFloat rhs = bf_pi(w) * sqrt(BigFloat(2, w));
        detail::add_row(rep, "gamma reflection at 1/4", (lhs - rhs).abs(), BigFloat(1, w).mul_2si(-prec + 8));
    }

    // digamma closed forms
    {
        BigFloat tol = BigFloat(1, w).mul_2si(-prec + 8);
        BigFloat r1 = (digamma(BigFloat(1, w), prec).value.re + bf_euler(w)).abs();
        BigFloat r2 =
            (digamma(BigFloat(Rational(1, 2), w), prec).value.re + bf_euler(w) + log(BigFloat(2, w)).mul_2si(1))
                .abs();
        BigFloat r3 = (digamma(BigFloat(2, w), prec).value.re + bf_euler(w) - BigFloat(1, w)).abs();
        BigFloat worst = max(r1, max(r2, r3));
        detail::add_row(rep, "digamma closed forms", worst, tol, "x in {1, 1/2, 2}");
    }

    // agm symmetry and the Basel value zeta(2) = pi^2/6
    {
        BigFloat a1 = agm(BigFloat(1, w), sqrt(BigFloat(2, w)), prec).value.re;
        BigFloat a2 = agm(sqrt(BigFloat(2, w)), BigFloat(1, w), prec).value.re;
        detail::add_row(rep, "agm symmetry", (a1 - a2).abs(), BigFloat(1, w).mul_2si(-prec + 4));
        BigFloat basel = (hurwitz_zeta(BigComplex(BigFloat(2, w)), BigFloat(1, w), prec).value.re -
                          bf_pi(w) * bf_pi(w) / BigFloat(6, w))
                             .abs();
        detail::add_row(rep, "basel value", basel, BigFloat(1, w).mul_2si(-prec + 8));
    }
    return rep;
}

// Named verification suites behind `verify`.
inline std::vector<OracleReport> run_verify(const std::string& suite, long prec, unsigned threads = 0) {
    std::vector<OracleReport> out;
    if (suite == "kernels" || suite == "all") out.push_back(kernel_suite(prec));
    if (suite == "lerch" || suite == "all") out.push_back(lerch_identity_check(50, prec, threads));
    if (suite == "factorization" || suite == "all") out.push_back(factorization_suite(prec));
    if (suite == "gross" || suite == "all") {
        out.push_back(gross_cm_check(3, prec));
        out.push_back(gross_cm_check(4, prec));
    }
    if (out.empty()) fail(errc::parse_error, "unknown suite: " + suite);
    return out;
}

} // namespace lfun

#endif

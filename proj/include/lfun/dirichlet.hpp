#ifndef LFUN_DIRICHLET_HPP
#define LFUN_DIRICHLET_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace lfun {

inline int kronecker_symbol(long top, unsigned long bottom) {
    mpz_class t(top);
    return mpz_kronecker_si(t.get_mpz_t(), (long)bottom);
}

inline unsigned long mul_mod(unsigned long a, unsigned long b, unsigned long q) {
    return (unsigned long)(((unsigned __int128)a * b) % q);
}

inline unsigned long pow_mod(unsigned long g, unsigned long e, unsigned long q) {
    unsigned long r = 1 % q;
    g %= q;
    while (e) {
        if (e & 1) r = mul_mod(r, g, q);
        g = mul_mod(g, g, q);
        e >>= 1;
    }
    return r;
}

// Generator decomposition of (Z/q)^* with a deterministic generator choice:
// smallest primitive root for odd prime powers, residue 3 for q-part 4, the
// pair {2^k-1, 5} for 2-part 2^k with k >= 3; components in increasing-prime
// order. Discrete logs for every unit are tabulated once per modulus.
struct UnitGroupStructure {
    unsigned long modulus = 1;
    std::vector<unsigned long> generators;
    std::vector<unsigned long> orders;
    // dlog[a] = exponent tuple of the unit a; empty vector for non-units.
    std::vector<std::vector<unsigned long>> dlog;

    unsigned long phi() const {
        unsigned long p = 1;
        for (auto o : orders) p *= o;
        return p;
    }
};

namespace detail {

inline std::vector<std::pair<unsigned long, unsigned>> factorize(unsigned long n) {
    std::vector<std::pair<unsigned long, unsigned>> f;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline unsigned long smallest_primitive_root(unsigned long pk, unsigned long p) {
    unsigned long phi = pk - pk / p;
    auto pf = factorize(phi);
    for (unsigned long g = 2; g < pk; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto& [ell, e] : pf) {
            (void)e;
            if (pow_mod(g, phi / ell, pk) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    fail(errc::domain_error, "no primitive root found");
}

// x = r mod pk, x = 1 mod (q/pk)
inline unsigned long crt_lift(unsigned long r, unsigned long pk, unsigned long q) {
    unsigned long rest = q / pk;
    for (unsigned long x = r; x < q; x += pk)
        if (x % rest == 1 % rest) return x;
    fail(errc::domain_error, "crt lift failed");
}

inline const UnitGroupStructure& unit_group_cached(unsigned long q);

} // namespace detail

inline UnitGroupStructure unit_group_structure(unsigned long q) {
    if (q == 0) fail(errc::domain_error, "modulus must be positive");
    UnitGroupStructure G;
    G.modulus = q;
    auto fac = detail::factorize(q);
    for (auto& [p, e] : fac) {
        unsigned long pk = 1;
        for (unsigned i = 0; i < e; ++i) pk *= p;
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                G.generators.push_back(detail::crt_lift(3, 4, q));
                G.orders.push_back(2);
            } else {
                G.generators.push_back(detail::crt_lift(pk - 1, pk, q));
                G.orders.push_back(2);
                G.generators.push_back(detail::crt_lift(5 % pk, pk, q));
                G.orders.push_back(pk / 4);
            }
        } else {
            unsigned long g = detail::smallest_primitive_root(pk, p);
            G.generators.push_back(detail::crt_lift(g, pk, q));
            G.orders.push_back(pk - pk / p);
        }
    }

    // Tabulate discrete logs with an odometer walk over exponent tuples.
    G.dlog.assign(q, {});
    size_t r = G.generators.size();
    std::vector<unsigned long> exps(r, 0);
    unsigned long a = 1 % q;
    unsigned long count = 0, total = G.phi();
    while (true) {
        G.dlog[a] = exps;
        if (++count == total) break;
        // increment last position, multiplying the running residue
        size_t i = r;
        while (i-- > 0) {
            if (exps[i] + 1 < G.orders[i]) {
                ++exps[i];
                a = mul_mod(a, G.generators[i], q);
                break;
            }
            // roll over: multiply once more to wrap g^order = 1
            a = mul_mod(a, G.generators[i], q);
            exps[i] = 0;
        }
    }
    assert(q <= 2 || !G.generators.empty());
    return G;
}

namespace detail {

inline const UnitGroupStructure& unit_group_cached(unsigned long q) {
    static std::map<unsigned long, std::unique_ptr<UnitGroupStructure>> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find(q);
    if (it == cache.end())
        it = cache.emplace(q, std::make_unique<UnitGroupStructure>(unit_group_structure(q))).first;
    return *it->second;
}

} // namespace detail

enum class Parity { even, odd };

// Character of (Z/q)^*, identified by its exponent tuple against the
// deterministic generator set of the modulus.
class DirichletCharacter {
public:
    DirichletCharacter() : modulus_(1) { init(); }

    DirichletCharacter(unsigned long modulus, std::vector<unsigned long> exponents)
        : modulus_(modulus), exponents_(std::move(exponents)) {
        const auto& G = detail::unit_group_cached(modulus_);
        if (exponents_.size() != G.generators.size())
            fail(errc::parse_error, "exponent tuple length mismatch");
        for (size_t i = 0; i < exponents_.size(); ++i) exponents_[i] %= G.orders[i];
        init();
    }

    static DirichletCharacter trivial(unsigned long modulus = 1) {
        const auto& G = detail::unit_group_cached(modulus);
        return DirichletCharacter(modulus, std::vector<unsigned long>(G.generators.size(), 0));
    }

    unsigned long modulus() const { return modulus_; }
    const std::vector<unsigned long>& exponents() const { return exponents_; }
    unsigned long order() const { return order_; }
    unsigned long conductor() const { return conductor_; }
    Parity parity() const { return parity_; }
    bool is_even() const { return parity_ == Parity::even; }
    bool is_primitive() const { return conductor_ == modulus_; }
    bool is_trivial() const { return order_ == 1; }
    bool is_real() const { return order_ <= 2; }

    // chi(a) as exp(2 pi i u / order); returns false for non-units.
    bool value_exponent(long a, unsigned long& u) const {
        const auto& G = detail::unit_group_cached(modulus_);
        unsigned long am = (unsigned long)(((a % (long)modulus_) + (long)modulus_) % (long)modulus_);
        if (modulus_ == 1) {
            u = 0;
            return true;
        }
        if (std::gcd(am, modulus_) != 1) return false;
        const auto& x = G.dlog[am];
        unsigned long acc = 0;
        for (size_t i = 0; i < exponents_.size(); ++i) {
            // chi(g_i) = zeta_{o_i}^{e_i} = zeta_m^{m e_i / o_i}, exact division
            unsigned long num = (unsigned long)((unsigned __int128)order_ * exponents_[i] / G.orders[i] % order_);
            acc = (unsigned long)((acc + (unsigned __int128)num * x[i]) % order_);
        }
        u = acc;
        return true;
    }

    CycloElem value_at(long a) const {
        unsigned long u;
        if (!value_exponent(a, u)) return CycloElem(order_);
        return CycloElem::monomial(order_, u);
    }

    // chi(a) embedded at the given precision; zero for non-units.
    BigComplex value_embedded(long a, mpfr_prec_t prec) const {
        unsigned long u;
        if (!value_exponent(a, u)) return BigComplex(prec);
        return root_of_unity((long)u, order_, prec);
    }

    DirichletCharacter conjugate() const {
        const auto& G = detail::unit_group_cached(modulus_);
        std::vector<unsigned long> e(exponents_);
        for (size_t i = 0; i < e.size(); ++i) e[i] = e[i] == 0 ? 0 : G.orders[i] - e[i];
        return DirichletCharacter(modulus_, std::move(e));
    }

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus_ == b.modulus_ && a.exponents_ == b.exponents_;
    }

private:
    unsigned long modulus_;
    std::vector<unsigned long> exponents_;
    unsigned long order_ = 1;
    unsigned long conductor_ = 1;
    Parity parity_ = Parity::even;

    void init() {
        const auto& G = detail::unit_group_cached(modulus_);
        order_ = 1;
        for (size_t i = 0; i < exponents_.size(); ++i) {
            unsigned long oi = G.orders[i] / std::gcd(G.orders[i], exponents_[i]);
            order_ = std::lcm(order_, oi);
        }
        conductor_ = compute_conductor(G);
        unsigned long u;
        bool unit = value_exponent((long)modulus_ - 1, u);
        assert(unit);
        (void)unit;
        parity_ = (u == 0) ? Parity::even : Parity::odd;
    }

    unsigned long compute_conductor(const UnitGroupStructure& G) const {
        for (unsigned long f = 1; f <= modulus_; ++f) {
            if (modulus_ % f) continue;
            bool trivial_on_kernel = true;
            for (unsigned long a = 1; a < modulus_ && trivial_on_kernel; a += f) {
                if (std::gcd(a, modulus_) != 1) continue;
                unsigned long u;
                if (value_exponent((long)a, u) && u != 0) trivial_on_kernel = false;
            }
            if (trivial_on_kernel) return f;
        }
        return modulus_;
    }
};

inline std::vector<DirichletCharacter> enumerate_characters(unsigned long q) {
    const auto& G = detail::unit_group_cached(q);
    size_t r = G.generators.size();
    std::vector<DirichletCharacter> out;
    out.reserve(G.phi());
    std::vector<unsigned long> e(r, 0);
    while (true) {
        out.emplace_back(q, e);
        size_t i = r;
        bool done = true;
        while (i-- > 0) {
            if (++e[i] < G.orders[i]) {
                done = false;
                break;
            }
            e[i] = 0;
        }
        if (done) break;
    }
    assert(out.size() == G.phi());
    return out;
}

// The unique primitive character mod conductor(chi) inducing chi.
inline DirichletCharacter primitive_part(const DirichletCharacter& chi) {
    unsigned long f = chi.conductor();
    if (f == chi.modulus()) return chi;
    const auto& Gf = detail::unit_group_cached(f);
    std::vector<unsigned long> exps(Gf.generators.size());
    for (size_t i = 0; i < Gf.generators.size(); ++i) {
        // lift the mod-f generator to a unit mod q in the same class mod f
        unsigned long h = Gf.generators[i];
        unsigned long a = h;
        while (std::gcd(a, chi.modulus()) != 1) a += f;
        unsigned long u;
        bool unit = chi.value_exponent((long)a, u);
        assert(unit);
        (void)unit;
        // chi'(h_i) = zeta_m^u must equal zeta_{o_i}^{e_i}
        unsigned long m = chi.order();
        assert(((unsigned __int128)u * Gf.orders[i]) % m == 0);
        exps[i] = (unsigned long)((unsigned __int128)u * Gf.orders[i] / m % Gf.orders[i]);
    }
    DirichletCharacter prim(f, std::move(exps));
    assert(prim.conductor() == f);
    assert(prim.order() == chi.order());
    return prim;
}

// tau(chi) = sum chi(a) e(a/q), accumulated exactly in the group ring of
// mu_{lcm(order, q)} and embedded once.
inline RootSum gauss_sum_terms(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) fail(errc::domain_error, "gauss sum requires a primitive character");
    unsigned long q = chi.modulus(), m = chi.order();
    unsigned long M = std::lcm(q, m);
    RootSum rs(M);
    for (unsigned long a = 1; a <= q; ++a) {
        unsigned long u;
        if (!chi.value_exponent((long)a, u)) continue;
        rs.add((u * (M / m) + a * (M / q)) % M);
    }
    return rs;
}

inline CycloElem gauss_sum_exact(const DirichletCharacter& chi) { return gauss_sum_terms(chi).to_cyclo(); }

inline BigComplex gauss_sum(const DirichletCharacter& chi, mpfr_prec_t prec) {
    return gauss_sum_terms(chi).embed(prec);
}

// Abelian number field given by conductor f and the subgroup H of (Z/f)^*
// fixing it; degree = phi(f)/|H|, totally real iff -1 in H.
struct AbelianFieldSpec {
    unsigned long conductor = 1;
    std::vector<unsigned long> subgroup_gens;

    std::vector<unsigned long> subgroup_elements() const {
        for (auto g : subgroup_gens)
            if (conductor > 1 && (std::gcd(g % conductor, conductor) != 1 || g % conductor == 0))
                fail(errc::domain_error, "subgroup generators must be units mod the conductor");
        std::vector<char> in(conductor, 0);
        std::vector<unsigned long> elems{1 % conductor};
        in[1 % conductor] = 1;
        for (size_t head = 0; head < elems.size(); ++head)
            for (auto g : subgroup_gens) {
                unsigned long x = mul_mod(elems[head], g % conductor, conductor);
                if (!in[x]) {
                    in[x] = 1;
                    elems.push_back(x);
                }
            }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

    unsigned long degree() const {
        const auto& G = detail::unit_group_cached(conductor);
        return G.phi() / subgroup_elements().size();
    }

    bool totally_real() const {
        if (conductor <= 2) return true;
        auto e = subgroup_elements();
        return std::binary_search(e.begin(), e.end(), conductor - 1);
    }
};

// The degree-many characters cutting out the field: all characters mod f
// trivial on H, each replaced by its primitive part.
inline std::vector<DirichletCharacter> characters_of_field(const AbelianFieldSpec& K) {
    auto H = K.subgroup_elements();
    std::vector<DirichletCharacter> out;
    for (const auto& chi : enumerate_characters(K.conductor)) {
        bool trivial_on_H = true;
        for (auto h : H) {
            unsigned long u;
            if (!chi.value_exponent((long)h, u) || u != 0) {
                trivial_on_H = false;
                break;
            }
        }
        if (trivial_on_H) out.push_back(primitive_part(chi));
    }
    assert(out.size() * H.size() == detail::unit_group_cached(K.conductor).phi());
    return out;
}

inline bool is_fundamental_discriminant(long D) {
    if (D == 0 || D == 1) return false;
    auto squarefree = [](long n) {
        if (n < 0) n = -n;
        for (long p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    long r = ((D % 4) + 4) % 4;
    if (r == 1) return squarefree(D);
    if (r == 0) {
        long m = D / 4;
        long rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

// Human-readable name used in diagnostics and reports. Real primitive
// characters print as their fundamental discriminant.
inline std::string character_label(const DirichletCharacter& chi) {
    if (chi.is_trivial()) return "trivial";
    if (chi.is_real() && chi.is_primitive()) {
        long D = (long)chi.modulus();
        if (!chi.is_even()) D = -D;
        return "D:" + std::to_string(D);
    }
    std::string s = "chi mod " + std::to_string(chi.modulus()) + " [";
    const auto& e = chi.exponents();
    for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + "]";
}

// Kronecker character chi_D attached to a fundamental discriminant.
inline DirichletCharacter quadratic_character(long D) {
    if (!is_fundamental_discriminant(D))
        fail(errc::domain_error, "not a fundamental discriminant");
    unsigned long q = (unsigned long)(D < 0 ? -D : D);
    const auto& G = detail::unit_group_cached(q);
    std::vector<unsigned long> exps(G.generators.size());
    for (size_t i = 0; i < G.generators.size(); ++i) {
        int k = kronecker_symbol(D, G.generators[i]);
        assert(k == 1 || k == -1);
        if (k == 1) {
            exps[i] = 0;
        } else {
            assert(G.orders[i] % 2 == 0);
            exps[i] = G.orders[i] / 2;
        }
    }
    DirichletCharacter chi(q, std::move(exps));
    assert(chi.conductor() == q);
    assert(chi.is_even() == (D > 0));
    return chi;
}

// Field spec of the quadratic field with discriminant D: H = ker(chi_D).
inline AbelianFieldSpec quadratic_field_spec(long D) {
    DirichletCharacter chi = quadratic_character(D);
    unsigned long q = chi.modulus();
    AbelianFieldSpec K;
    K.conductor = q;
    for (unsigned long a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        unsigned long u;
        if (chi.value_exponent((long)a, u) && u == 0) K.subgroup_gens.push_back(a);
    }
    return K;
}

} // namespace lfun

#endif

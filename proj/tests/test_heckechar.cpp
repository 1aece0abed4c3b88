#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "padiclf/heckechar.hpp"
#include "padiclf/qexp.hpp"

using namespace padiclf;
using namespace padiclf::heckechar;
namespace qf = padiclf::quadfield;
using padic::PadicScalar;

namespace {

// pseudorandom integral ideals with norms coprime to `avoid`
std::vector<QuadIdeal> random_ideals(const QuadField& K, long count, long avoid, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<QuadIdeal> out;
    while ((long)out.size() < count) {
        long n = 2 + (long)(rng() % 400);
        if (std::gcd(n, avoid) != 1) continue;
        auto ids = qf::ideals_of_norm(K, n);
        if (ids.empty()) continue;
        out.push_back(ids[rng() % ids.size()]);
    }
    return out;
}

} // namespace

TEST_CASE("norm character and trivial character") {
    QuadField K(3);
    HeckeCharacter triv(K, 0, 0, FiniteType(K));
    HeckeCharacter N = triv.norm_twist(1);
    auto p7 = qf::factor_rational_prime(K, 7).primary;
    CHECK(triv.eval(p7) == AlgNum::one(triv.value_field()));
    auto v = N.eval(p7);
    CHECK(v.is_rational());
    CHECK(v.rational_part() == 7);
    // inverse norm (the adelic absolute value avatar) takes value 1/N
    auto vinv = N.inverse().eval(p7);
    CHECK(vinv.rational_part() == Rat(1, 7));
    // self-conjugate under both modes
    CHECK(N.conj_c().eval(p7) == v);
    CHECK(N.conj_rho().eval(p7) == v);
}

TEST_CASE("multiplicativity on 100 random coprime ideal pairs, exact") {
    QuadField K(7);
    HeckeCharacter chi(K, 2, 0, FiniteType::inert_character(K, 3, 4));
    auto pool = random_ideals(K, 60, 3 * 7, 42);
    int done = 0;
    for (size_t i = 0; i < pool.size() && done < 100; ++i)
        for (size_t j = i + 1; j < pool.size() && done < 100; ++j) {
            if (gcd(pool[i].norm(), pool[j].norm()) != 1) continue;
            auto prod = qf::ideal_mul(K, pool[i], pool[j]);
            CHECK(chi.eval(prod) == chi.eval(pool[i]) * chi.eval(pool[j]));
            ++done;
        }
    CHECK(done == 100);
}

TEST_CASE("unitarity: |chi_C(a)| = N(a)^{(a+b)/2} to 1e-20 at 50 digits") {
    Real::set_default_decimal_digits(50);
    QuadField K(7);
    HeckeCharacter chi(K, 3, 0, FiniteType::inert_character(K, 3, 1));
    for (const auto& id : random_ideals(K, 25, 3 * 7, 7)) {
        CHECK(chi.unitarity_defect(id).to_double() < 1e-20);
    }
}

TEST_CASE("zero on non-coprime ideals") {
    QuadField K(7);
    HeckeCharacter chi(K, 2, 0, FiniteType::inert_character(K, 3, 4));
    auto bad = qf::QuadIdeal(K, 3, 1, 0); // (3) = the conductor
    CHECK(chi.eval(bad).is_zero());
}

TEST_CASE("alpha: construction guards") {
    QuadField K(7);
    CHECK_THROWS(build_alpha(K, 7, 8, 0));  // ramified
    CHECK_THROWS(build_alpha(K, 13, 8, 0)); // inert (-7 = 6 mod 13 is not a square)
    CHECK_NOTHROW(build_alpha(K, 11, 8, 0));
    // p | h_K rejected with diagnostic: Q(sqrt(-23)) has h = 3
    QuadField K23(23);
    CHECK_THROWS_WITH_AS(build_alpha(K23, 3, 8, 0), doctest::Contains("h_K"), std::invalid_argument);
}

TEST_CASE("alpha values: principal formula and spot value") {
    QuadField K(7);
    long p = 11;
    auto alpha = build_alpha(K, p, 10, 0);
    {
        QuadElem beta(Int(1 + p), Int(0));
        auto val = alpha.eval(QuadIdeal::principal(K, beta));
        auto expect = padic::one_unit_part(alpha.iota(beta));
        CHECK(PadicScalar::congruent(val, expect, 10));
        CHECK(val.residue(1) == 1);
    }
    // d=7, p=11, a = (13): alpha((13)) = 13/omega(2) (13 = 2 mod 11)
    {
        auto val = alpha.eval(QuadIdeal::principal(K, QuadElem(13, 0)));
        auto expect = PadicScalar::from_int(p, 10, 13) / padic::teichmuller(p, 10, 2);
        CHECK(PadicScalar::congruent(val, expect, 10));
    }
    // the Teichmuller lift of a root of unity is itself
    {
        auto w = padic::teichmuller(p, 10, p - 1);
        CHECK(PadicScalar::congruent(w, PadicScalar::from_int(p, 10, -1), 10));
    }
}

TEST_CASE("alpha * alpha^c = omega^{-1}(Na) * Na on 50 pseudorandom ideals at precision 10") {
    QuadField K(7);
    long p = 11;
    auto alpha = build_alpha(K, p, 12, 0);
    for (const auto& id : random_ideals(K, 50, p, 2024)) {
        auto lhs = alpha.eval(id) * alpha.eval_conj(id);
        long n_mod_p = (long)Int(id.norm() % p).get_si();
        auto rhs = PadicScalar::from_rat(p, 12, Rat(id.norm())) /
                   padic::teichmuller(p, 12, (padic::u64)n_mod_p);
        CHECK(PadicScalar::congruent(lhs, rhs, 10));
    }
}

TEST_CASE("alpha((p)) = <p-unit part of 1> = 1") {
    QuadField K(7);
    long p = 11;
    auto alpha = build_alpha(K, p, 10, 0);
    auto prod = alpha.eval(alpha.P()) * alpha.eval(alpha.Pbar());
    CHECK(PadicScalar::congruent(prod, PadicScalar::from_int(p, 10, 1), 9));
}

TEST_CASE("padic avatar of a classical character; weight (1,1) norm") {
    QuadField K(7);
    long p = 11;
    auto alpha = build_alpha(K, p, 10, 0);
    HeckeCharacter chi(K, 0, 0, FiniteType::inert_character(K, 3, 12)); // order 2
    PadicHecke chip(chi, alpha, 10);
    auto emb = padic::make_embedding(chi.value_field(), p, 10, -2 * alpha.omega_residue() - 1);
    for (const auto& id : random_ideals(K, 10, 3 * p, 5)) {
        auto exact = chi.eval(id);
        CHECK(PadicScalar::congruent(chip.eval(id), emb(exact), 9));
    }
    HeckeCharacter N(K, 1, 1, FiniteType(K));
    PadicHecke Np(N, alpha, 10);
    CHECK(PadicScalar::congruent(Np.eval(alpha.P()), PadicScalar::from_int(p, 10, 1), 9));
    auto q2 = qf::factor_rational_prime(K, 2).primary;
    CHECK(Np.eval(q2).residue(4) == 2);
}

TEST_CASE("alpha . alpha^rho = N as p-adic characters") {
    // alpha^rho = (omega o N) alpha^c, so alpha alpha^rho = N
    QuadField K(7);
    long p = 11;
    auto alpha = build_alpha(K, p, 12, 0);
    for (const auto& id : random_ideals(K, 12, p, 77)) {
        long n_mod_p = (long)Int(id.norm() % p).get_si();
        auto alpha_rho = alpha.eval_conj(id) * padic::teichmuller(p, 12, (padic::u64)n_mod_p);
        auto lhs = alpha.eval(id) * alpha_rho;
        auto rhs = PadicScalar::from_rat(p, 12, Rat(id.norm()));
        CHECK(PadicScalar::congruent(lhs, rhs, 10));
    }
}

TEST_CASE("xi family: specialization weights and conductor stability") {
    QuadField K(7);
    long p = 11, k = 12, a = 13;
    auto alpha = build_alpha(K, p, 10, 0);
    HeckeCharacter xi_a(K, a - 1, -a + k + 1, FiniteType(K));
    auto Xi = build_xi_family(xi_a, a, k, alpha);
    auto at_a = Xi.specialize_classical(a);
    CHECK(at_a.weight_a() == a - 1);
    CHECK(at_a.weight_b() == -a + k + 1);
    CHECK(at_a.conductor() == xi_a.conductor());
    for (const auto& id : random_ideals(K, 6, p, 11)) CHECK(at_a.eval(id) == xi_a.eval(id));
    auto at_m = Xi.specialize_classical(a + (p - 1));
    CHECK(at_m.weight_a() == a + p - 2);
    CHECK(at_m.weight_b() == -(a + p - 1) + k + 1);
    CHECK(at_m.conductor() == xi_a.conductor());
    auto off = Xi.specialize_classical(a + 1);
    CHECK(off.conductor() != xi_a.conductor());
    CHECK(off.conductor().norm() == Int(p) * Int(p) * xi_a.conductor().norm());
    PadicHecke cls(at_m, alpha, 10);
    for (const auto& id : random_ideals(K, 5, p, 3)) {
        CHECK(PadicScalar::congruent(cls.eval(id), Xi.specialize_eval(a + (p - 1), id), 8));
    }
    CHECK_THROWS(build_xi_family(xi_a, a + 2, k, alpha));
}

TEST_CASE("psi family: P_m o Psi = psi alpha^{m-1}; Xi two-step ratio") {
    QuadField K(7);
    long p = 11;
    auto alpha = build_alpha(K, p, 12, 0);
    auto nu = FiniteType::nu_character(K, 5, 2);
    long a = 13;
    FiniteType psifin = FiniteType::teichmuller_power(K, alpha.P(), p, a - 1).times(nu);
    HeckeCharacter psi(K, 0, 0, psifin);
    auto Psi = build_psi_family(psi, a, alpha);
    auto at_a = Psi.specialize_classical(a);
    CHECK(at_a.weight_a() == a - 1);
    CHECK(at_a.weight_b() == 0);
    CHECK(at_a.conductor() == qf::QuadIdeal(K, 5, 1, 0));
    PadicHecke psip(psi, alpha, 12);
    for (const auto& id : random_ideals(K, 8, 5 * p, 9)) {
        auto direct = psip.eval(id) * alpha.eval(id).pow(a - 1 + (p - 1));
        CHECK(PadicScalar::congruent(Psi.specialize_eval(a + (p - 1), id), direct, 9));
    }
    HeckeCharacter xi_a(K, a - 1, -a + 12 + 1, FiniteType(K));
    auto Xi = build_xi_family(xi_a, a, 12, alpha);
    for (const auto& id : random_ideals(K, 5, p, 21)) {
        auto r = Xi.specialize_eval(a + (p - 1), id) / Xi.specialize_eval(a, id);
        auto expect = (alpha.eval(id) / alpha.eval_conj(id)).pow(p - 1);
        CHECK(PadicScalar::congruent(r, expect, 9));
    }
}

TEST_CASE("lambda values of families specialize correctly") {
    QuadField K(7);
    long p = 11;
    int M = 8, D = 12;
    auto alpha = build_alpha(K, p, M + 6, 0);
    auto nu = FiniteType::nu_character(K, 5, 2);
    long a = 13;
    HeckeCharacter psi(K, 0, 0, FiniteType::teichmuller_power(K, alpha.P(), p, a - 1).times(nu));
    auto Psi = build_psi_family(psi, a, alpha);
    for (const auto& id : random_ideals(K, 6, 5 * p, 31)) {
        auto lam = Psi.lambda_value(id, M, D);
        for (long m : {a, a + 10, a + 20}) {
            auto got = padic::specialize_P_m(lam, m);
            auto expect = Psi.specialize_eval(m, id);
            CHECK(PadicScalar::congruent(got, expect, 7));
        }
    }
}

TEST_CASE("build_phi_psi: hypothesis validation and the four clauses") {
    QuadField K(7);
    long p = 11, k = 12, a = 13, lambda = 5;
    auto alpha = build_alpha(K, p, 12, 0);
    auto nu = FiniteType::nu_character(K, lambda, 2);
    HeckeCharacter xi_a(K, a - 1, -a + k + 1, FiniteType(K)); // conductor (1)
    CHECK_THROWS_WITH_AS(build_phi_psi(xi_a, a, k + 1, lambda, 1, nu, alpha),
                         doctest::Contains("weight"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_phi_psi(xi_a, a, k, 11, 1, nu, alpha),
                         doctest::Contains("inert"), std::invalid_argument);

    auto out = build_phi_psi(xi_a, a, k, lambda, 1, nu, alpha);
    CHECK(out.psi.finite_type().trivial_on_units());
    CHECK(out.eta.weight_a() == k);
    CHECK(out.eta.weight_b() == 0);
    // eta = phi_{m-k}^{-1} psi_m as p-adic characters, independent of m
    PadicHecke etap(out.eta, alpha, 12);
    for (long m : {a, a + (p - 1), a - (p - 1)}) {
        for (const auto& id : random_ideals(K, 4, lambda * p * 7, 100 + (unsigned)m)) {
            auto phi_mk = out.Phi.specialize_eval(m - k, id);
            auto psi_m = out.Psi.specialize_eval(m, id);
            CHECK(PadicScalar::congruent(psi_m / phi_mk, etap.eval(id), 8));
        }
    }
    // clause (4): phi_{m-k} psi_m N^{-(m-k-1)} = xi_m for m = a mod p-1
    auto Xi = build_xi_family(xi_a, a, k, alpha);
    for (long m : {a, a + (p - 1)}) {
        for (const auto& id : random_ideals(K, 4, lambda * p * 7, 200 + (unsigned)m)) {
            auto lhs = out.Phi.specialize_eval(m - k, id) * out.Psi.specialize_eval(m, id);
            auto Nv = PadicScalar::from_rat(p, 12, Rat(id.norm()));
            lhs = lhs / Nv.pow(m - k - 1);
            auto rhs = Xi.specialize_eval(m, id);
            CHECK(PadicScalar::congruent(lhs, rhs, 8));
        }
    }
    // clauses (1)/(2): conductors of the clean specializations (c = 1 fixture)
    auto phi_at = out.Phi.specialize_classical(a - k);
    CHECK(phi_at.conductor() == qf::QuadIdeal(K, lambda, 1, 0));
    auto psi_at = out.Psi.specialize_classical(a);
    CHECK(psi_at.conductor() == qf::QuadIdeal(K, lambda, 1, 0));
    // psi_a finite-type = nu
    for (long n = 0; n < 40; ++n) {
        QuadElem x(Int(n % 19 + 2), Int(n % 7));
        auto v1 = psi_at.finite_type().value_exponent(x);
        auto v2 = nu.value_exponent(x);
        if (!v1 || !v2) continue;
        long L = std::lcm(v1->second, v2->second);
        CHECK(v1->first * (L / v1->second) == v2->first * (L / v2->second));
    }
}

TEST_CASE("psi-rho family: P_m(Psi^rho) = psi_m^rho on the clean residue") {
    QuadField K(7);
    long p = 11, a = 13;
    auto alpha = build_alpha(K, p, 12, 0);
    auto nu = FiniteType::nu_character(K, 5, 2);
    HeckeCharacter psi(K, 0, 0, FiniteType::teichmuller_power(K, alpha.P(), p, a - 1).times(nu));
    auto Psi = build_psi_family(psi, a, alpha);
    auto Psi_rho = build_psi_rho_family(psi, a, alpha);
    for (long m : {a, a + (p - 1)}) {
        auto cls = Psi.specialize_classical(m); // psi_m, exact
        auto cls_rho = cls.conj_rho();          // psi_m^rho, weight (0, m-1)
        PadicHecke pr(cls_rho, alpha, 12);
        for (const auto& id : random_ideals(K, 5, 5 * p * 7, 300 + (unsigned)m)) {
            CHECK(PadicScalar::congruent(Psi_rho.specialize_eval(m, id), pr.eval(id), 8));
        }
    }
}

TEST_CASE("alpha branch parameter: torsion twist on nonprincipal classes") {
    // Q(sqrt(-23)) has cyclic class group of order 3; p = 13 splits and 13
    // is coprime to h = 3
    QuadField K(23);
    auto a0 = build_alpha(K, 13, 8, 0);
    auto a1 = build_alpha(K, 13, 8, 1);
    CHECK(a1.branch() == 1);
    auto nonprincipal = qf::factor_rational_prime(K, 2).primary; // norm 2 ideal, h=3 class
    auto v0 = a0.eval(nonprincipal);
    auto v1 = a1.eval(nonprincipal);
    // canonical branch takes one-unit values; the twisted branch differs by a
    // cube root of unity in Z_13
    CHECK(v0.residue(1) == 1);
    CHECK(v1.residue(1) != 1);
    auto ratio = v1 / v0;
    CHECK(PadicScalar::congruent(ratio.pow(3), PadicScalar::from_int(13, 8, 1), 7));
    // both branches are multiplicative
    auto sq = qf::ideal_mul(K, nonprincipal, nonprincipal);
    CHECK(PadicScalar::congruent(a1.eval(sq), v1 * v1, 6));
    // principal ideals are branch-independent
    auto pr = qf::QuadIdeal::principal(K, qf::QuadElem(3, 0));
    CHECK(PadicScalar::congruent(a0.eval(pr), a1.eval(pr), 7));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padiclf/cyclotomic.hpp"
#include "padiclf/padic.hpp"
#include <random>

using namespace padiclf;
using padic::PadicScalar;

TEST_CASE("cyclotomic field basics") {
    auto F = NumberField::get(5, 0);
    CHECK(F->deg == 4);
    AlgNum z = AlgNum::root_of_unity(F, 1);
    AlgNum z5 = z.pow(5);
    CHECK(z5 == AlgNum::one(F));
    // 1 + z + z^2 + z^3 + z^4 = 0
    AlgNum s = AlgNum::one(F) + z + z.pow(2) + z.pow(3) + z.pow(4);
    CHECK(s.is_zero());
    // inverse
    CHECK((z * z.inverse()) == AlgNum::one(F));
    AlgNum x = z + AlgNum(F, Rat(3, 2));
    CHECK((x * x.inverse()) == AlgNum::one(F));
    // conj_rho is the inverse on roots of unity
    CHECK(z.conj_rho() == z.inverse());
}

TEST_CASE("quadratic part arithmetic and complex embedding") {
    auto F = NumberField::get(4, -7);
    AlgNum rt = AlgNum::sqrt_s(F);
    CHECK((rt * rt) == AlgNum(F, Rat(-7)));
    CHECK(rt.conj_rho() == -rt);
    Cplx c = rt.embed_complex();
    CHECK(abs(c.re).to_double() < 1e-30);
    CHECK(std::abs(c.im.to_double() - std::sqrt(7.0)) < 1e-12);
    AlgNum i = AlgNum::root_of_unity(F, 1);
    CHECK((i * i) == -AlgNum::one(F));
    // field ops with both generators
    AlgNum y = (i + rt) * (i - rt);
    CHECK(y == AlgNum(F, Rat(-1)) - AlgNum(F, Rat(-7)));
}

TEST_CASE("p-adic scalar arithmetic and precision tracking") {
    long p = 11;
    auto a = PadicScalar::from_int(p, 8, 121 * 5);
    CHECK(a.val() == 2);
    CHECK(a.unit_part() == 5);
    auto b = PadicScalar::from_rat(p, 8, Rat(3, 11));
    CHECK(b.val() == -1);
    auto prod = a * b;
    CHECK(prod.val() == 1);
    CHECK(prod.residue(2) == 15 * 11 % 121);
    // cancellation raises valuation
    auto c = PadicScalar::from_int(p, 8, 1) - PadicScalar::from_int(p, 8, 1 - 11 * 11 * 11);
    CHECK(c.val() == 3);
    // division
    auto q = PadicScalar::from_int(p, 8, 7) / PadicScalar::from_int(p, 8, 3);
    CHECK(PadicScalar::congruent(q * PadicScalar::from_int(p, 8, 3), PadicScalar::from_int(p, 8, 7), 8));
}

TEST_CASE("teichmuller and one-unit decomposition") {
    long p = 11;
    int M = 10;
    auto w2 = padic::teichmuller(p, M, 2);
    CHECK(w2.pow(p - 1).residue(M) == 1);
    CHECK(w2.residue(1) == 2);
    auto x = PadicScalar::from_int(p, M, 13);
    auto u = padic::one_unit_part(x);
    CHECK(u.residue(1) == 1);
    CHECK(PadicScalar::congruent(u * padic::teichmuller(p, M, 13 % 11), x, M));
}

TEST_CASE("p-adic log/exp and log_Gamma") {
    long p = 11;
    int M = 10;
    auto g = PadicScalar::from_int(p, M, 1 + p);
    CHECK(padic::log_gamma(g).residue(6) == 1);
    auto g2 = g * g;
    auto lg = padic::log_gamma(g2);
    CHECK(lg.residue(6) == 2);
    // exp(log(u)) = u
    auto u = PadicScalar::from_int(p, M, 1 + 3 * p + 5 * p * p);
    CHECK(PadicScalar::congruent(padic::pexp(padic::plog(u)), u, 8));
    // unique h-th root in 1 + pZ_p
    auto r = padic::one_unit_root(u, 3);
    CHECK(PadicScalar::congruent(r.pow(3), u, 8));
    CHECK(r.residue(1) == 1);
}

TEST_CASE("Lambda series: specialization is a ring homomorphism (100 random pairs)") {
    long p = 11;
    int M = 8, D = 12;
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
        padic::LambdaSeries A(p, M, D), B(p, M, D);
        for (int i = 0; i < D; ++i) {
            A.coeff_ref(i) = PadicScalar::from_int(p, M, (long)(rng() % 100000));
            B.coeff_ref(i) = PadicScalar::from_int(p, M, (long)(rng() % 100000));
        }
        long m = (long)(rng() % 40);
        auto lhs1 = padic::specialize_P_m(A + B, m);
        auto rhs1 = padic::specialize_P_m(A, m) + padic::specialize_P_m(B, m);
        CHECK(PadicScalar::congruent(lhs1, rhs1, 8));
        auto lhs2 = padic::specialize_P_m(A * B, m);
        auto rhs2 = padic::specialize_P_m(A, m) * padic::specialize_P_m(B, m);
        // product truncation at X^D costs nothing here since X has valuation 1
        CHECK(PadicScalar::congruent(lhs2, rhs2, std::min(8, D)));
    }
}

TEST_CASE("distinguished points P_m") {
    long p = 11;
    int M = 8, D = 10;
    auto X = padic::LambdaSeries::X(p, M, D);
    CHECK(padic::specialize_P_m(X, 0).residue(8) == 0);         // P_0 is the augmentation
    auto v = padic::specialize_P_m(X, 2);                        // (1+p)^2 - 1
    CHECK(v.residue(4) == ((12 * 12 - 1) % (11 * 11 * 11 * 11)));
    // P_m((1+X)^e) = (1+p)^{me} for integer e
    auto one_plus_X = padic::LambdaSeries::constant(p, M, D, PadicScalar::from_int(p, M, 1)) + X;
    auto pw = one_plus_X.pow(5);
    auto got = padic::specialize_P_m(pw, 3);
    auto expect = PadicScalar::from_int(p, M, 12).pow(15);
    CHECK(PadicScalar::congruent(got, expect, 8));
}

TEST_CASE("one_unit_to_lambda") {
    long p = 11;
    int M = 10, D = 14;
    // u = 1 -> constant 1
    auto one = padic::one_unit_to_lambda(p, 8, D, PadicScalar::from_int(p, M, 1));
    CHECK(one.coeff(0).residue(8) == 1);
    for (int i = 1; i < D; ++i) CHECK(one.coeff(i).residue(6) == 0);
    // u = 1 + p -> 1 + X
    auto lin = padic::one_unit_to_lambda(p, 8, D, PadicScalar::from_int(p, M, 1 + p));
    CHECK(lin.coeff(0).residue(8) == 1);
    CHECK(lin.coeff(1).residue(6) == 1);
    for (int i = 2; i < D; ++i) CHECK(lin.coeff(i).residue(5) == 0);
    // u = (1+p)^2: P_3 of the image is (1+p)^6
    auto sq = padic::one_unit_to_lambda(p, 8, D, PadicScalar::from_int(p, M, 1 + p).pow(2));
    auto got = padic::specialize_P_m(sq, 3);
    CHECK(PadicScalar::congruent(got, PadicScalar::from_int(p, M, 1 + p).pow(6), 8));
    // morphism: image(u) * image(v) = image(uv)
    auto u = PadicScalar::from_int(p, M, 1 + 2 * p + 7 * p * p);
    auto v = PadicScalar::from_int(p, M, 1 + 5 * p);
    auto lhs = padic::one_unit_to_lambda(p, 8, D, u) * padic::one_unit_to_lambda(p, 8, D, v);
    auto rhs = padic::one_unit_to_lambda(p, 8, D, u * v);
    for (int i = 0; i < D; ++i) CHECK(PadicScalar::congruent(lhs.coeff(i), rhs.coeff(i), 5));
    // P_m of image = u^m
    for (long m : {1L, 4L, 13L}) {
        auto s = padic::specialize_P_m(padic::one_unit_to_lambda(p, 8, D, u), m);
        CHECK(PadicScalar::congruent(s, u.pow(m), 7));
    }
}

TEST_CASE("sigma shift: P_m(sigma_{-k} F) = P_{m-k}(F)") {
    long p = 11;
    int M = 8, D = 12;
    std::mt19937_64 rng(99);
    padic::LambdaSeries F(p, M, D);
    for (int i = 0; i < D; ++i) F.coeff_ref(i) = PadicScalar::from_int(p, M, (long)(rng() % 5000));
    auto S = padic::sigma_shift(F, 12);
    for (long m : {13L, 23L}) {
        auto lhs = padic::specialize_P_m(S, m);
        auto rhs = padic::specialize_P_m(F, m - 12);
        CHECK(PadicScalar::congruent(lhs, rhs, 7));
    }
}

TEST_CASE("p-adic embedding of the exact field") {
    // Q(zeta_10)(sqrt(-7)) into Z_11: 10 | 11 - 1 and -7 is a square mod 11
    auto F = NumberField::get(10, -7);
    auto emb = padic::make_embedding(F, 11, 10, 2); // 2^2 = 4 = -7 mod 11
    auto z = emb(AlgNum::root_of_unity(F, 1));
    CHECK(z.pow(10).residue(10) == 1);
    CHECK(z.pow(5).residue(10) != 1);
    auto rt = emb(AlgNum::sqrt_s(F));
    CHECK(PadicScalar::congruent(rt * rt, PadicScalar::from_int(11, 10, -7), 10));
    CHECK(rt.residue(1) == 2);
    // additivity/multiplicativity spot check
    AlgNum x = AlgNum::root_of_unity(F, 3) + AlgNum::sqrt_s(F) * AlgNum(F, Rat(2, 3));
    AlgNum y = AlgNum::root_of_unity(F, 7) - AlgNum(F, Rat(5));
    CHECK(PadicScalar::congruent(emb(x * y), emb(x) * emb(y), 9));
}

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "padiclf/cyclotomic.hpp"

namespace padiclf::padic {

using u64 = std::uint64_t;

// Element of Q_p known as p^v * (u + O(p^M)) with u a unit mod p^M.
// u == 0 encodes "O(p^v)": zero to absolute precision v. Exact zero has
// v = +infinity (LONG_MAX). Arithmetic tracks precision pessimistically.
class PadicScalar {
public:
    PadicScalar() = default;
    PadicScalar(long p, int M); // exact zero
    // largest representable relative precision for this p (p^M < 2^63)
    static int max_prec(long p);
    static PadicScalar from_int(long p, int M, const Int& n);
    static PadicScalar from_rat(long p, int M, const Rat& r);
    static PadicScalar unit(long p, int M, u64 u_mod_pM, long v = 0);

    long p() const { return p_; }
    int prec() const { return M_; }
    long val() const { return v_; } // LONG_MAX for exact zero
    u64 unit_part() const { return u_; }
    bool is_exact_zero() const { return v_ == std::numeric_limits<long>::max(); }
    bool is_zero_at_prec() const { return u_ == 0; }

    // value mod p^j (j <= v + M required unless zero); exact nonneg residue
    u64 residue(int j) const;

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
    PadicScalar operator-() const;
    PadicScalar pow(long e) const;

    // agreement mod p^j
    static bool congruent(const PadicScalar& a, const PadicScalar& b, int j);

    std::string str() const;

private:
    long p_ = 0;
    int M_ = 0;
    long v_ = std::numeric_limits<long>::max();
    u64 u_ = 0;
    void normalize();
};

u64 pow_mod(u64 base, u64 exp, u64 mod);
u64 inv_mod(u64 a, u64 mod);
u64 p_power(long p, int M);

// Teichmuller lift of a unit residue, by iterated p-th powering.
PadicScalar teichmuller(long p, int M, u64 residue);
// One-unit part <x> = x / omega(x) of a unit.
PadicScalar one_unit_part(const PadicScalar& x);
// Iwasawa logarithm on 1 + pZ_p.
PadicScalar plog(const PadicScalar& one_unit);
PadicScalar pexp(const PadicScalar& x); // v(x) >= 1
// log_Gamma(u) = log u / log(1+p) in Z_p, for u in 1 + pZ_p.
PadicScalar log_gamma(const PadicScalar& one_unit);
// u^e for u in 1 + pZ_p and e in Z_p.
PadicScalar pow_zp(const PadicScalar& one_unit, const PadicScalar& e);
// Unique h-th root in 1 + pZ_p (p coprime to h).
PadicScalar one_unit_root(const PadicScalar& one_unit, long h);

// Truncated element of Lambda = Z_p[[X]], degree < D, coefficients mod p^M.
class LambdaSeries {
public:
    LambdaSeries() = default;
    LambdaSeries(long p, int M, int D); // zero
    static LambdaSeries constant(long p, int M, int D, const PadicScalar& c);
    static LambdaSeries X(long p, int M, int D);

    long p() const { return p_; }
    int prec() const { return M_; }
    int degree_bound() const { return D_; }
    const std::vector<PadicScalar>& coeffs() const { return c_; }
    PadicScalar coeff(int i) const { return c_.at(i); }
    PadicScalar& coeff_ref(int i) { return c_.at(i); }

    bool is_unit() const; // unit constant term

    friend LambdaSeries operator+(const LambdaSeries& a, const LambdaSeries& b);
    friend LambdaSeries operator-(const LambdaSeries& a, const LambdaSeries& b);
    friend LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b);
    LambdaSeries inverse() const;
    LambdaSeries pow(long e) const;

    std::string str() const;

private:
    long p_ = 0;
    int M_ = 0, D_ = 0;
    std::vector<PadicScalar> c_;
};

// (1+X)^e for e in Z_p, truncated binomial series.
LambdaSeries binomial_one_plus_X(long p, int M, int D, const PadicScalar& e);
// u in 1 + pZ_p mapped to (1+X)^{log_Gamma u}; P_m of the result is u^m.
LambdaSeries one_unit_to_lambda(long p, int M, int D, const PadicScalar& u);
// Evaluation at X = (1+p)^m - 1.
PadicScalar specialize_P_m(const LambdaSeries& F, long m);
// Weight-shift automorphism sigma_{-k}: (1+X) -> (1+X)(1+p)^{-k}; satisfies
// P_m(sigma_{-k} F) = P_{m-k}(F).
LambdaSeries sigma_shift(const LambdaSeries& F, long k);

// p-adic embedding of the exact coefficient field Q(zeta_L)(rt): requires
// L | p-1 and a chosen residue of rt mod p fixing the Hensel branch.
struct PadicEmbedding {
    long p = 0;
    int M = 0;
    FieldPtr F;
    PadicScalar zeta_image; // primitive L-th root of unity in Z_p
    PadicScalar rt_image;   // sqrt(s) in Z_p (unused when s = 0)

    PadicScalar operator()(const AlgNum& x) const;
    PadicScalar operator()(const Rat& x) const;
};

PadicEmbedding make_embedding(const FieldPtr& F, long p, int M, long rt_residue_mod_p);
long least_primitive_root(long p);

// Lambda-adic q-expansion: A_n in Lambda for n <= B, with tame metadata.
// The tame character (a root-of-unity-valued Dirichlet character mod
// tame_mod, stored as embedded p-adic values) enters the diamond part of the
// Hecke action.
struct LambdaQExp {
    long p = 0;
    int M = 0, D = 0, B = 0;
    long tame_level = 1;
    long tame_mod = 1;
    std::vector<PadicScalar> tame_values; // size tame_mod; exact zero off (Z/tame_mod)^x
    std::string tame_character = "trivial";
    std::vector<LambdaSeries> A; // A[0..B], A[0] = 0 for cusp forms

    const LambdaSeries& coeff(int n) const { return A.at(n); }
    PadicScalar tame_at(long n) const {
        if (tame_mod == 1) return PadicScalar::from_int(p, M, 1);
        return tame_values.at((size_t)(((n % tame_mod) + tame_mod) % tame_mod));
    }
};

// T(n) on Lambda-adic forms:
// a(m, F|T(n)) = sum_{e | (m,n), (e, N0 p)=1} chi_tame(e) <e>_Lambda e^{-1} a(mn/e^2, F);
// specializing at P_m matches the classical T(n) with nebentypus
// chi_tame omega^{-m}.
LambdaQExp lambda_hecke_T(const LambdaQExp& F, long n);
// f * Bg with the weight-shift sigma_{-k} applied to the Lambda factor;
// P_m(f * Bg) = f * P_{m-k}(Bg). Coefficients of f arrive already embedded.
LambdaQExp lambda_shift_multiply(const std::vector<PadicScalar>& f_coeffs, long f_level,
                                 const LambdaQExp& F, long k);
// q -> q^M on the q-variable (integer shift).
LambdaQExp lambda_qshift(const LambdaQExp& F, long M);
// Coefficientwise specialization.
std::vector<PadicScalar> specialize_qexp(const LambdaQExp& F, long m);

} // namespace padiclf::padic

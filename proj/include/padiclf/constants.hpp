#pragma once

#include <map>
#include <string>

#include "padiclf/heckechar.hpp"
#include "padiclf/padic.hpp"

namespace padiclf::padic {

// Exact rational scalar carrying symbolic unit exponents: powers of pi and of
// the two periods (never evaluated), an exact rational part, and a p-adic
// value slot for the character-dependent part.
struct SymbolicScalar {
    Rat rational{1};
    long pi_exp = 0;
    long sqrt_d_exp = 0;     // net power of sqrt(d) (kept symbolic when odd)
    long omega_inf_exp = 0;  // complex period exponent
    long omega_p_exp = 0;    // p-adic period exponent
    // named symbolic slots (central L-values, congruence numbers): exponents only
    std::map<std::string, long> slots;
    // computed p-adic unit-or-scaled part (character values, roots, ...)
    PadicScalar padic_part;
    bool has_padic = false;

    SymbolicScalar& times_rat(const Rat& r) {
        rational *= r;
        return *this;
    }
    SymbolicScalar& times_padic(const PadicScalar& v);
    SymbolicScalar& times(const SymbolicScalar& o);
    SymbolicScalar& inv();
    // fold even powers of sqrt(d) into the rational part
    SymbolicScalar& fold_sqrt_d(long d);
    std::string str() const;
};

// Parameters of the scalar ledger: the fixed data (f, K, p, indices) that the
// explicit constants depend on.
struct LedgerParams {
    long k = 12;      // weight of f
    long N0 = 1;      // prime-to-p level of f
    long r0 = 0;      // exact power of p in the level of f
    long d = 7;       // field discriminant magnitude
    long p = 11;
    long c = 1;       // conductor generator of xi_a
    long lambda = 5;
    long c_lambda = 1;
    long a = 13;
    long w_K = 2;
    int  prec = 12;   // p-adic working precision
    long r() const { return std::max(1L, r0); }
};

// Explicit Ichino scalar for the CM setup:
// 3^2 (m-2)! (k-1)! (m-k-1)! / (pi^{2m+2} 2^{4m-2} d lambda^{2 c_lambda} (c^2 N)^{m+1})
// * prod_{q | cNd lambda} (1+q^{-1})^{-2}, with the (*) factor carried separately.
SymbolicScalar explicit_ichino_scalar(const LedgerParams& P, long m);

// L_alg normalization factor: L_alg = L/Omega^{4m-2k-4} * w_K (m-2)!(m-k-1)!
// c^{2m-k+2} pi^{2m-k-3} / (sqrt(d)^{2m-k-3} 2^{2m-k-3}); `cond` is the
// conductor constant in the convention that makes the C1..C4 chain close
// (xi: the generator c; eta: c * lambda^{2 c_lambda}).
SymbolicScalar l_alg_factor(const LedgerParams& P, long m, const Rat& cond);
// the weight-(k,0) special case (m = k+1)
SymbolicScalar l_alg_factor_eta(const LedgerParams& P, const Rat& cond);

// C1, C2, C3 of the algebraic-parts equation and C4 of the p-adic one.
// alpha_h = unit root of the weight-m CM form (p-adic), needed when r0 > 0.
SymbolicScalar constant_C1(const LedgerParams& P, long m, const PadicScalar& alpha_h);
SymbolicScalar constant_C2(const LedgerParams& P, long m);
SymbolicScalar constant_C3(const LedgerParams& P, long m, const PadicScalar& alpha_h, const Rat& star);
SymbolicScalar constant_C4(const LedgerParams& P, long m, const Rat& star, const PadicScalar& eta_pbar);

// The Lambda-unit script-C with P_m(C) = eta(Pbar)^{r0} 2^2 lambda^{2 c_lambda (k+5)} / N0^{m+3}
// on m = a (mod p-1).
LambdaSeries script_C(const LedgerParams& P, const PadicScalar& eta_pbar, int M, int D);

// Removed Euler factors of the Petersson interpolation, by the p-level case of f.
// Root data: classical-normalized p-adic values (beta_g, alpha_h carry their
// p-power valuations).
struct TripleRoots {
    PadicScalar alpha_f, beta_f; // r0 = 0 case
    PadicScalar a_f;             // r0 >= 1 case (T(p)-eigenvalue of f)
    PadicScalar alpha_g, beta_g;
    PadicScalar alpha_h, beta_h;
    PadicScalar alpha_h_conj, beta_h_conj; // rho-side values
    PadicScalar chi_h_at_p;                // nebentypus value (unit)
};

PadicScalar euler_e_p(long r0, const TripleRoots& R);       // e_p(f g_{m-k}, h_m)
PadicScalar euler_e_p_rho(long r0, const TripleRoots& R);   // e_p(f^rho g^rho, h^rho)
// e_p(f, xi^{-1}) from the L-value normalization, by the same case split;
// xi_pbar_inv = xi_m^{-1}(Pbar) as a classical-normalized p-adic value.
PadicScalar euler_e_p_L(long r0, long k, const PadicScalar& a_p_or_alpha_beta_sum,
                        const PadicScalar& alpha_f, const PadicScalar& beta_f,
                        const PadicScalar& xi_pbar_inv, long p, int prec);

} // namespace padiclf::padic

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "padiclf/cyclotomic.hpp"

namespace padiclf::localint {

using C = std::complex<double>;

// Symbolic descriptor of a local representation of GL_2(Q_q).
struct LocalRep {
    enum class Kind { unramified_ps, special, ramified_ps_c1, supercuspidal_type1 };
    Kind kind = Kind::unramified_ps;
    long q = 0;

    // unramified_ps: pi(chi, chi^{-1} * central), alpha = chi(pi)
    C alpha{1.0, 0.0};
    // ramified_ps_c1: pi(mu * chi, mu^{-1}) with chi of conductor 1, chi(pi) = 1
    C mu{1.0, 0.0};
    // supercuspidal_type1 conductor
    long n = 2;
    // central character value at the uniformizer
    C central{1.0, 0.0};

    long conductor() const {
        switch (kind) {
        case Kind::unramified_ps: return 0;
        case Kind::special: return 1;
        case Kind::ramified_ps_c1: return 1;
        case Kind::supercuspidal_type1: return n;
        }
        return 0;
    }

    static LocalRep unramified(long q, C alpha);
    static LocalRep ramified_c1(long q, C mu);
    static LocalRep special_rep(long q, C twist);
    static LocalRep supercuspidal(long q, long n, C alpha_param);
};

// Whittaker newvector of a conductor-1 ramified principal series, evaluated at
// a(pi^v) gamma_i. The epsilon-factor is carried as a unit-modulus token; it
// cancels in every exposed quantity.
C whittaker_value(const LocalRep& pi, long v, int i, C eps_token = C(1.0, 0.0));

struct BruteResult {
    C value;
    double tail_bound;
};

// Truncated double-coset sum for the local Rankin-Selberg integral
// J(pi2, pi3; s) = sum_i v_i int |y|^{s-1/2} W2 W3 dy with Haar weights
// v_0 = 1/(1+1/q), v_1 = (1/q)/(1+1/q) for conductor 1.
BruteResult rs_integral_brute(const LocalRep& pi2, const LocalRep& pi3, C s, int V,
                              C eps_token = C(1.0, 0.0));
// The i = 1 shell alone (geometric series), same normalization.
C rs_integral_brute_i1(const LocalRep& pi2, const LocalRep& pi3, C s, int V);

// Closed forms: J* and the un-normalized J.
C rs_integral_closed_star(const LocalRep& pi2, const LocalRep& pi3, C s);
C rs_integral_closed(const LocalRep& pi2, const LocalRep& pi3, C s);

// contragredient of a conductor-1 ramified principal series
LocalRep contragredient(const LocalRep& pi);

// Haar measure weights of the double-coset decomposition for conductor n.
std::vector<double> haar_weights(long q, long n);

struct IchinoResult {
    bool resolved = false;
    std::string kind;   // which closed-form case applied
    C I_star{0, 0};
    Rat E_q{0};
    C EI{0, 0};         // E_q * I_star
    std::string why_unresolved;
};

// Dispatch to the resolved closed-form cases:
//  - two unramified + one ramified:        E I* = q^{-c3} (1+1/q)^{-2}
//  - unramified + two conductor-1 ram PS:  I* = 1/q, E = (1+1/q)^{-2}
//  - unramified + two type-1 supercusp.:   E I* = q^{-n} (1+1/q)^{-2} (*)
// The product of central characters must be trivial (unramified twists per the
// twisting lemma are applied by the caller). Unresolved cases are reported,
// never approximated.
IchinoResult ichino_I_star(const LocalRep& pi1, const LocalRep& pi2, const LocalRep& pi3,
                           bool conductor_flag_ok = true);

// L^H/L correction row for one form's local data: keyed on
// (v_q(level), v_q(conductor of nebentypus), kind).
Rat E_q_row(const LocalRep& pi);
Rat E_q_factor(const LocalRep& f, const LocalRep& g, const LocalRep& h);

// Michel-Venkatesh assembly:
// I* = (1+1/q)^2 L(ad pi2, 1) L(ad pi3, 1) J*(pi2, pi3; s) J*(~pi2, ~pi3; -s)
C ichino_via_mv(const LocalRep& pi2, const LocalRep& pi3, C s);

// (*) factors.
// f_lambda kind: sum_{i=0}^{c} r^{2i-c} - (1/lambda) sum_{i=0}^{c-1} r^{2i-c},
// r = alpha / lambda^{(k-1)/2}.
C star_f_lambda(C alpha, long lambda, long k, long c_lambda);
Rat star_f_lambda_exact(const Rat& ratio, long lambda, long c_lambda);
// supercuspidal kind: (((a^{n/2+1}-a^{-n/2-1}) - q^{-1}(a^{n/2-1}-a^{-n/2+1}))/(a-a^{-1}))^2
C star_supercuspidal(C alpha, long q, long n);
// limit value at alpha -> +-1
double star_supercuspidal_limit(long q, long n);

} // namespace padiclf::localint

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padiclf/cyclotomic.hpp"
#include "padiclf/padic.hpp"
#include "padiclf/quadfield.hpp"

namespace padiclf::heckechar {

using quadfield::QuadField;
using quadfield::QuadIdeal;
using quadfield::QuadElem;
using padic::PadicScalar;

// One cyclic local component of a finite-type character, at a split prime
// ideal (residue field F_p) or an inert rational prime (residue field F_q^2,
// modulus exponent 1). The component value on a residue is
// zeta_ord^{e * dlog(x)}; conj_input evaluates at the conjugate element, which
// realizes components supported at the conjugate prime.
struct LocalComponent {
    enum class Kind { split_prime, inert_prime };
    Kind kind;
    long q = 0;          // residue characteristic
    QuadIdeal modulus;   // the prime ideal: [q, b+w] or (q)
    long ord = 0;        // group order: q-1 (split) or q^2-1 (inert)
    long e = 0;          // exponent; 0 = trivial component
    bool conj_input = false;

    bool trivial() const { return e % ord == 0; }
};

// Finite-order character of (O_K / m)^x given by local components (m a
// squarefree product of split-prime ideals and inert rational primes; the
// shapes the constructions of this artifact need).
class FiniteType {
public:
    FiniteType() = default;
    explicit FiniteType(QuadField K) : K_(K) {}

    const QuadField& K() const { return K_; }
    const std::vector<LocalComponent>& components() const { return comps_; }

    // omega_P^e: Teichmuller character at the split prime P = [p, b+w].
    static FiniteType teichmuller_power(const QuadField& K, const QuadIdeal& P, long p, long e);
    // character of (O_K/l)^x of the given order, trivial on (Z/l)^x and O_K^x
    static FiniteType nu_character(const QuadField& K, long ell, long order);
    // character of (O_K/l)^x of given exponent against the canonical generator
    static FiniteType inert_character(const QuadField& K, long ell, long e);

    FiniteType times(const FiniteType& o) const;
    FiniteType inverse() const;
    FiniteType power(long j) const;
    FiniteType conj_transport() const; // x -> value at conj(x); modulus conjugated

    bool is_trivial() const;
    QuadIdeal conductor() const; // product of moduli of nontrivial components
    long value_order() const;    // lcm of component value orders

    // value as exponent j of zeta_L, L = value_order(); nullopt when x is not
    // coprime to the modulus
    std::optional<std::pair<long, long>> value_exponent(const QuadElem& x) const;
    AlgNum value(const FieldPtr& F, const QuadElem& x) const; // 0 when not coprime
    bool trivial_on_units() const;
    bool trivial_on_rational_residues() const; // on (Z/modulus)^x
    // restriction to Z: Dirichlet-type values (exponent of zeta_L at integers)
    std::optional<std::pair<long, long>> rational_value_exponent(long n) const;

private:
    QuadField K_{3};
    std::vector<LocalComponent> comps_;
    void push(LocalComponent c);
};

long dlog_split(const QuadField& K, const QuadIdeal& P, long p, const QuadElem& x);  // base: least primitive root mod p
long dlog_inert(const QuadField& K, long ell, const QuadElem& x);                    // base: canonical generator of F_{l^2}^x
QuadElem inert_generator(const QuadField& K, long ell);

// Classical algebraic Hecke character, exact values in Q(zeta_L)(sqrt(-d)).
class HeckeCharacter {
public:
    HeckeCharacter() = default;
    // Builds the value field, checks unit compatibility, and (for h_K > 1)
    // extends to the class group; branch selects among the h_K extensions.
    HeckeCharacter(QuadField K, long inf_a, long inf_b, FiniteType fin, int branch = 0);

    const QuadField& K() const { return K_; }
    long weight_a() const { return a_; }
    long weight_b() const { return b_; }
    const FiniteType& finite_type() const { return fin_; }
    QuadIdeal conductor() const { return fin_.conductor(); }
    const FieldPtr& value_field() const { return F_; }
    int branch() const { return branch_; }

    bool is_finite_order() const { return a_ == 0 && b_ == 0; }

    // 0 when a is not coprime to the conductor
    AlgNum eval(const QuadIdeal& a) const;
    Cplx eval_complex(const QuadIdeal& a) const;
    // value on a principal ideal via the defining formula fin(beta) beta^a conj(beta)^b
    AlgNum eval_principal(const QuadElem& beta) const;

    friend HeckeCharacter operator*(const HeckeCharacter& x, const HeckeCharacter& y);
    HeckeCharacter inverse() const;
    HeckeCharacter power(long j) const;
    HeckeCharacter norm_twist(long j) const; // multiply by N^j (weight (j,j))
    HeckeCharacter conj_c() const;   // a -> chi(conj a)
    HeckeCharacter conj_rho() const; // value-wise complex conjugation

    // central character: restriction of the finite type to Z (Dirichlet data)
    bool central_character_trivial() const;

    // |chi_C(a)| should be N(a)^{(a+b)/2}
    Real unitarity_defect(const QuadIdeal& a) const;

private:
    QuadField K_{3};
    long a_ = 0, b_ = 0;
    FiniteType fin_;
    FieldPtr F_;
    int branch_ = 0;
    quadfield::ClassGroup cls_;
    std::vector<AlgNum> rep_values_;
    friend class PadicHecke;
};

// The canonical p-adic character alpha: weight (1,0), conductor P,
// finite-type omega_P^{-1}; values on ideals coprime to p are one-units
// (canonical branch) times a torsion class twist (nonzero branch).
class PadicAlpha {
public:
    PadicAlpha() = default;
    PadicAlpha(QuadField K, long p, int prec, int branch);

    const QuadField& K() const { return K_; }
    long p() const { return p_; }
    int prec() const { return M_; }
    int branch() const { return branch_; }
    const QuadIdeal& P() const { return P_; }
    const QuadIdeal& Pbar() const { return Pbar_; }
    long omega_residue() const { return bP_; } // P = [p, bP + w]

    // value on any ideal written a = product of primes away from nothing:
    // alpha(a) computed through a^h = (beta)
    PadicScalar eval(const QuadIdeal& a) const;
    PadicScalar eval_conj(const QuadIdeal& a) const { return eval(a.conj(K_)); } // alpha^c
    // decomposition: torsion part (exponent of the branch twist) and one-unit part
    PadicScalar one_unit_value(const QuadIdeal& a) const;

    // iota_p on K: w -> Hensel root of x^2 - x + D with root = -bP mod p
    PadicScalar iota(const QuadElem& x) const;

private:
    QuadField K_{3};
    long p_ = 0;
    int M_ = 0, branch_ = 0;
    QuadIdeal P_, Pbar_;
    long bP_ = 0;
    quadfield::ClassGroup cls_;
    long h_ = 1;
    std::vector<PadicScalar> rep_tors_; // branch twist values on class reps
};

PadicAlpha build_alpha(const QuadField& K, long p, int prec, int branch = 0);

// p-adic avatar of a classical character: chi_p(a) = iota_p(chi_C(a)) *
// p^{-a ord_P - b ord_Pbar}. Requires the value field to embed (L | p-1).
class PadicHecke {
public:
    PadicHecke() = default;
    PadicHecke(const HeckeCharacter& chi, const PadicAlpha& alpha, int prec);

    // value on ANY ideal (uniformizer convention pi_P = p); 0 if not coprime
    // to the prime-to-p conductor
    PadicScalar eval(const QuadIdeal& a) const;
    const HeckeCharacter& classical() const { return chi_; }

private:
    HeckeCharacter chi_;
    PadicAlpha alpha_;
    padic::PadicEmbedding emb_;
};

// Lambda-valued anticyclotomic character family: base finite-order character
// times alpha^{e1} (alpha^c)^{e2} and one running slot interpolated in Lambda.
class CharacterFamily {
public:
    enum class Slot { A, Ac, AAcInv };

    CharacterFamily() = default;
    CharacterFamily(HeckeCharacter base, PadicAlpha alpha, long e1, long e2, Slot slot, long a_residue);

    const HeckeCharacter& base() const { return base_; }
    const PadicAlpha& alpha() const { return alpha_; }
    long alpha_exp() const { return e1_; }
    long alphac_exp() const { return e2_; }
    Slot slot() const { return slot_; }
    long clean_residue() const { return a_; }

    // exact classical specialization (needs h_K = 1 or all-principal support)
    HeckeCharacter specialize_classical(long m) const;
    // p-adic specialization value on an ideal
    PadicScalar specialize_eval(long m, const QuadIdeal& a) const;
    // Lambda-valued evaluation on an ideal coprime to the modulus
    padic::LambdaSeries lambda_value(const QuadIdeal& a, int M, int D) const;

private:
    HeckeCharacter base_;
    PadicAlpha alpha_;
    long e1_ = 0, e2_ = 0;
    Slot slot_ = Slot::A;
    long a_ = 0;
};

// Xi = xi_a alpha^{-a} (alpha^c)^a A (A^c)^{-1}; specializations have weight
// (m-1, -m+k+1), conductor stable on m = a mod p-1.
CharacterFamily build_xi_family(const HeckeCharacter& xi_a, long a, long k, const PadicAlpha& alpha);

struct PhiPsiEta {
    HeckeCharacter phi, psi, eta; // phi, psi finite order; eta of weight (k,0)
    CharacterFamily Phi, Psi;     // families with P_m =  phi alpha^{m-1}, psi alpha^{m-1}
    CharacterFamily Psi_rho;      // P_m = psi_m^rho on m = a mod p-1
    long a = 0, k = 0, lambda = 0, c_lambda = 1;
};

// The explicit construction of the auxiliary characters: phi_fin =
// omega_P^{a-k-1} xi_fin nu^{-1}, psi_fin = omega_P^{a-1} nu, eta =
// phi^{-1} psi alpha^k. Throws with the violated hypothesis by name.
PhiPsiEta build_phi_psi(const HeckeCharacter& xi_a, long a, long k, long lambda, long c_lambda,
                        const FiniteType& nu, const PadicAlpha& alpha);

// Family with P_m = psi alpha^{m-1} (Psi = psi alpha^{-1} A).
CharacterFamily build_psi_family(const HeckeCharacter& psi_fin_order, long a_residue, const PadicAlpha& alpha);
// Conjugate family with P_m = psi_m^rho for m = a mod p-1.
CharacterFamily build_psi_rho_family(const HeckeCharacter& psi_fin_order, long a_residue, const PadicAlpha& alpha);

// p-adic value of a classical character at a principal ideal, with the
// p-power valuation carried exactly (relative precision preserved for values
// of high valuation, unlike embedding the full exact value).
PadicScalar padic_value_on_principal(const HeckeCharacter& chi, const PadicAlpha& alpha,
                                     const QuadIdeal& a, int prec);

// Lambda-adic CM form: A_n = sum over ideals of norm n coprime to the modulus
// and to the stabilized prime (P for A-slot families, Pbar for A^c-slot ones)
// of the Lambda-valued family character. P_m of the result is the sharp
// p-stabilization of the classical CM form on the clean residue class.
padic::LambdaQExp lambda_adic_cm_form(const CharacterFamily& Psi, long B, int M, int D);

} // namespace padiclf::heckechar

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "padiclf/cyclotomic.hpp"
#include "padiclf/heckechar.hpp"
#include "padiclf/padic.hpp"
#include "padiclf/real.hpp"

namespace padiclf::qexp {

// Dirichlet character with root-of-unity values: expo[r] is the exponent of
// zeta_L at the residue r (or -1 when gcd(r, modulus) > 1).
class DirichletChar {
public:
    DirichletChar() { expo_ = {0}; }
    static DirichletChar trivial() { return DirichletChar(); }
    static DirichletChar kronecker(long d); // chi_K attached to Q(sqrt(-d))
    static DirichletChar from_finite_type(const heckechar::FiniteType& fin);

    long modulus() const { return (long)expo_.size(); }
    long order_L() const { return L_; }
    bool is_trivial() const;
    std::string label() const;

    // value exponent: pair (j, L) or nullopt for value 0
    std::optional<long> value_expo(long n) const;
    int value_int(long n) const;       // requires L | 2
    Cplx value_complex(long n) const;
    AlgNum value_in(const FieldPtr& F, long n) const;

    DirichletChar conj() const;
    friend DirichletChar operator*(const DirichletChar& a, const DirichletChar& b);

private:
    long L_ = 1;
    std::vector<long> expo_; // size = modulus; expo_[0] = -1 unless modulus 1
};

// Provenance of a CM construction, kept so Hecke roots can be produced
// exactly from character values.
struct CMTag {
    heckechar::HeckeCharacter psi; // infinity-type (m, 0)
};

// Truncated q-expansion: coefficients a[0..B] of q^{n/Lden}.
template <class R>
struct QExpansion {
    int k = 0;
    long N = 1;
    DirichletChar chi;
    long B = 0;
    long Lden = 1;
    std::vector<R> a;
    std::shared_ptr<const CMTag> cm;

    R zero_coeff() const { return a.at(0) - a.at(0); }
    const R& coeff(long n) const { return a.at(n); }
};

using QExpQ = QExpansion<Rat>;
using QExpA = QExpansion<AlgNum>;
using QExpC = QExpansion<Cplx>;

struct HeckeRootPair {
    long q = 0;
    Cplx alpha, beta;  // ordering rule: nonnegative imaginary part first
    std::optional<AlgNum> alpha_exact, beta_exact;
    // p-adic ordinarity tag: set when the unit root is identified
    std::optional<bool> alpha_is_unit;
};

// ---- builtin series ------------------------------------------------------

QExpQ delta_series(long B);
QExpQ eisenstein_E4(long B);
QExpQ eisenstein_E6(long B);
// eta(z)^8 eta(2z)^8: the weight-8 level-2 newform
QExpQ eta8_eta2_8(long B);
// eta(2z)^12: the weight-6 level-4 newform (new at 4, a_2 = 0)
QExpQ eta2_12(long B);
// the two weight-24 level-1 eigenforms, exact over Q(sqrt(144169)),
// manufactured from Delta*E4^3, Delta^2 and T(2)-diagonalization
std::pair<QExpA, QExpA> weight24_eigenforms(long B);

// ---- CM forms ------------------------------------------------------------

// g_psi = sum_{(a, cond)=1} psi(a) q^{N(a)}: newform of weight m+1, level
// d*N(cond), character chi_K * chi_psi, for psi of infinity-type (m, 0).
QExpA cm_form(const heckechar::HeckeCharacter& psi, long B);

// ---- operators -----------------------------------------------------------

template <class R>
QExpansion<R> hecke_T(const QExpansion<R>& f, long n);

template <class R>
QExpansion<R> shift(const QExpansion<R>& f, long M, long L);

template <class R>
QExpansion<R> multiply(const QExpansion<R>& f, const QExpansion<R>& g);

template <class R>
QExpansion<R> rho_conjugate(const QExpansion<R>& f);

enum class Stab { sharp, flat, natural };

template <class R>
QExpansion<R> p_stabilize(const QExpansion<R>& f, long p, const R& alpha, const R& beta, Stab which);

// complex Hecke root pair of x^2 - a_q x + chi(q) q^{k-1}; eigenform property
// verified on the available coefficients first. CM forms also carry the exact
// roots (split q: psi(qbar), psi(q)).
HeckeRootPair hecke_roots(const QExpC& f, long q, double eigen_tol = 1e-30);
HeckeRootPair hecke_roots(const QExpA& f, long q);
HeckeRootPair hecke_roots(const QExpQ& f, long q);

// p-adic context: relabel so alpha is the unit root (throws with the
// valuation report when neither root is a unit).
HeckeRootPair identify_unit_root(HeckeRootPair r, const padic::PadicEmbedding& emb);

// ---- conversions ---------------------------------------------------------

QExpC to_complex(const QExpQ& f);
QExpC to_complex(const QExpA& f);
std::vector<padic::PadicScalar> embed_padic(const QExpA& f, const padic::PadicEmbedding& emb);
std::vector<padic::PadicScalar> embed_padic(const QExpQ& f, long p, int M);

// ---- newform file format -------------------------------------------------
// Plain text: optional '#' comments; header lines weight=, level=,
// character=trivial|kronecker:<d>; then lines "n a_n" with a_n a rational
// (p/q) or Gaussian-rational (x+yi, x-yi, yi) literal. See docs/newform-format.md.

QExpA load_newform(const std::string& path, long B);
void save_newform(const std::string& path, const QExpQ& f);

// Hecke multiplicativity spot-check (a_1 = 1, a_mn = a_m a_n for coprime,
// prime-power recursion); throws on failure.
void validate_eigenform(const QExpA& f);

} // namespace padiclf::qexp

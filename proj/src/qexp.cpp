#include "padiclf/qexp.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace padiclf::qexp {

using quadfield::QuadIdeal;

// ---- DirichletChar ---------------------------------------------------------

DirichletChar DirichletChar::kronecker(long d) {
    DirichletChar c;
    c.L_ = 2;
    c.expo_.assign(d, -1);
    quadfield::QuadField K(d);
    for (long r = 0; r < d; ++r) {
        if (std::gcd(r, d) != 1) continue;
        int v = quadfield::kronecker_chi(K, r);
        c.expo_[r] = (v == 1) ? 0 : 1;
    }
    return c;
}

DirichletChar DirichletChar::from_finite_type(const heckechar::FiniteType& fin) {
    DirichletChar c;
    long modulus = 1;
    for (const auto& comp : fin.components()) modulus *= comp.q;
    if (modulus == 1) return c;
    c.expo_.assign(modulus, -1);
    long L = 1;
    std::vector<std::optional<std::pair<long, long>>> vals(modulus);
    for (long r = 0; r < modulus; ++r) {
        if (std::gcd(r, modulus) != 1) continue;
        vals[r] = fin.rational_value_exponent(r);
        if (vals[r]) L = std::lcm(L, vals[r]->second);
    }
    c.L_ = L;
    for (long r = 0; r < modulus; ++r)
        if (vals[r]) c.expo_[r] = vals[r]->first * (L / vals[r]->second);
    return c;
}

bool DirichletChar::is_trivial() const {
    for (long r = 0; r < modulus(); ++r)
        if (expo_[r] > 0) return false;
    return true;
}

std::string DirichletChar::label() const {
    if (modulus() == 1) return "trivial";
    std::ostringstream os;
    os << "mod" << modulus() << "-ord" << L_;
    return os.str();
}

std::optional<long> DirichletChar::value_expo(long n) const {
    long m = modulus();
    long r = ((n % m) + m) % m;
    if (m == 1) return 0;
    if (expo_[r] < 0) return std::nullopt;
    return expo_[r];
}

int DirichletChar::value_int(long n) const {
    auto e = value_expo(n);
    if (!e) return 0;
    if (L_ == 1 || *e == 0) return 1;
    if (L_ == 2 && *e == 1) return -1;
    throw std::domain_error("DirichletChar::value_int: character is not quadratic");
}

Cplx DirichletChar::value_complex(long n) const {
    auto e = value_expo(n);
    if (!e) return Cplx(Real(0L), Real(0L));
    Real theta = Real(2L) * Real::pi() * Real(*e) / Real(L_);
    return Cplx(cos(theta), sin(theta));
}

AlgNum DirichletChar::value_in(const FieldPtr& F, long n) const {
    auto e = value_expo(n);
    if (!e) return AlgNum::zero(F);
    if (F->L % L_ != 0) throw std::domain_error("DirichletChar::value_in: field lacks roots of unity");
    return AlgNum::root_of_unity(F, *e * (F->L / L_));
}

DirichletChar DirichletChar::conj() const {
    DirichletChar c = *this;
    for (long r = 0; r < modulus(); ++r)
        if (c.expo_[r] > 0) c.expo_[r] = L_ - c.expo_[r];
    return c;
}

DirichletChar operator*(const DirichletChar& a, const DirichletChar& b) {
    if (a.modulus() == 1) return b;
    if (b.modulus() == 1) return a;
    DirichletChar c;
    long m = std::lcm(a.modulus(), b.modulus());
    long L = std::lcm(a.L_, b.L_);
    c.L_ = L;
    c.expo_.assign(m, -1);
    for (long r = 0; r < m; ++r) {
        if (std::gcd(r, m) != 1) continue;
        auto ea = a.value_expo(r), eb = b.value_expo(r);
        if (!ea || !eb) continue;
        c.expo_[r] = (*ea * (L / a.L_) + *eb * (L / b.L_)) % L;
    }
    return c;
}

// ---- coefficient ring shims ------------------------------------------------

namespace {

Rat mul_int(const Rat& a, const Int& m) { return a * Rat(m); }
AlgNum mul_int(const AlgNum& a, const Int& m) {
    return a * AlgNum(a.field(), Rat(m));
}
Cplx mul_int(const Cplx& a, const Int& m) { return a * Cplx(Real(m)); }

Rat char_value(const QExpansion<Rat>& f, long n) { return Rat(f.chi.value_int(n)); }
AlgNum char_value(const QExpansion<AlgNum>& f, long n) { return f.chi.value_in(f.a.at(0).field(), n); }
Cplx char_value(const QExpansion<Cplx>& f, long n) { return f.chi.value_complex(n); }

bool coeff_is_zero(const Rat& a) { return a == 0; }
bool coeff_is_zero(const AlgNum& a) { return a.is_zero(); }
bool coeff_is_zero(const Cplx&) { return false; }

} // namespace

// ---- operators -------------------------------------------------------------

template <class R>
QExpansion<R> hecke_T(const QExpansion<R>& f, long n) {
    if (f.Lden != 1) throw std::invalid_argument("hecke_T: fractional-shift forms not supported");
    if (n < 1) throw std::invalid_argument("hecke_T: n >= 1");
    long Bp = f.B / n;
    if (Bp < 1)
        throw std::invalid_argument("hecke_T: insufficient truncation; need B >= " + std::to_string(n));
    QExpansion<R> r = f;
    r.B = Bp;
    r.a.assign(Bp + 1, f.zero_coeff());
    r.cm.reset();
    for (long m = 0; m <= Bp; ++m) {
        R acc = f.zero_coeff();
        long gmn = (m == 0) ? n : std::gcd(m, n);
        for (long d = 1; d <= gmn; ++d) {
            if (gmn % d) continue;
            if (std::gcd(d, f.N) != 1) continue;
            long idx = (m / d) * (n / d);
            R term = f.a.at(idx);
            if (d > 1) {
                Int dk(1);
                for (int i = 0; i < f.k - 1; ++i) dk *= d;
                term = mul_int(term, dk) * char_value(f, d);
            }
            acc = acc + term;
        }
        r.a[m] = acc;
    }
    return r;
}

template <class R>
QExpansion<R> shift(const QExpansion<R>& f, long M, long L) {
    if (std::gcd(M, L) != 1) throw std::invalid_argument("shift: gcd(M, L) = 1 required");
    QExpansion<R> r = f;
    if (M == 1 && L == 1) return r;
    r.Lden = f.Lden * L;
    r.N = f.N * M;
    r.B = f.B * M;
    r.a.assign(r.B + 1, f.zero_coeff());
    for (long i = 0; i <= f.B; ++i) r.a[i * M] = f.a[i];
    r.cm.reset();
    return r;
}

template <class R>
QExpansion<R> multiply(const QExpansion<R>& f, const QExpansion<R>& g) {
    QExpansion<R> r;
    r.k = f.k + g.k;
    r.N = std::lcm(f.N, g.N);
    r.chi = f.chi * g.chi;
    r.Lden = std::lcm(f.Lden, g.Lden);
    long sf = r.Lden / f.Lden, sg = r.Lden / g.Lden;
    long Bf = f.B * sf, Bg = g.B * sg;
    r.B = std::min(Bf, Bg);
    r.a.assign(r.B + 1, f.zero_coeff());
    for (long i = 0; i <= f.B; ++i) {
        if (coeff_is_zero(f.a[i])) continue;
        for (long j = 0; j <= g.B && i * sf + j * sg <= r.B; ++j) {
            if (coeff_is_zero(g.a[j])) continue;
            r.a[i * sf + j * sg] = r.a[i * sf + j * sg] + f.a[i] * g.a[j];
        }
    }
    return r;
}

template <class R>
QExpansion<R> rho_conjugate(const QExpansion<R>& f) {
    QExpansion<R> r = f;
    r.chi = f.chi.conj();
    if constexpr (std::is_same_v<R, AlgNum>) {
        for (auto& c : r.a) c = c.conj_rho();
        if (f.cm) {
            // sum psi^rho(a) q^{N(a)} = sum (psi^rho)^c(a) q^{N(a)}; the latter
            // has infinity-type (m, 0) again
            auto tag = std::make_shared<CMTag>();
            tag->psi = f.cm->psi.conj_rho().conj_c();
            r.cm = tag;
        }
    } else if constexpr (std::is_same_v<R, Cplx>) {
        for (auto& c : r.a) c = conj(c);
        r.cm.reset();
    }
    return r;
}

template <class R>
QExpansion<R> p_stabilize(const QExpansion<R>& f, long p, const R& alpha, const R& beta, Stab which) {
    if (f.Lden != 1) throw std::invalid_argument("p_stabilize: integral q-powers required");
    if (f.N % p == 0) throw std::invalid_argument("p_stabilize: level must be prime to p");
    QExpansion<R> r = f;
    r.N = f.N * p;
    r.cm.reset();
    R sub = beta;
    if (which == Stab::flat) sub = alpha;
    if (which == Stab::natural) sub = mul_int(beta, Int(p));
    for (long n = f.B; n >= 0; --n)
        if (n % p == 0) r.a[n] = r.a[n] - sub * f.a[n / p];
    return r;
}

// explicit instantiations
template QExpansion<Rat> hecke_T(const QExpansion<Rat>&, long);
template QExpansion<AlgNum> hecke_T(const QExpansion<AlgNum>&, long);
template QExpansion<Cplx> hecke_T(const QExpansion<Cplx>&, long);
template QExpansion<Rat> shift(const QExpansion<Rat>&, long, long);
template QExpansion<AlgNum> shift(const QExpansion<AlgNum>&, long, long);
template QExpansion<Cplx> shift(const QExpansion<Cplx>&, long, long);
template QExpansion<Rat> multiply(const QExpansion<Rat>&, const QExpansion<Rat>&);
template QExpansion<AlgNum> multiply(const QExpansion<AlgNum>&, const QExpansion<AlgNum>&);
template QExpansion<Cplx> multiply(const QExpansion<Cplx>&, const QExpansion<Cplx>&);
template QExpansion<Rat> rho_conjugate(const QExpansion<Rat>&);
template QExpansion<AlgNum> rho_conjugate(const QExpansion<AlgNum>&);
template QExpansion<Cplx> rho_conjugate(const QExpansion<Cplx>&);
template QExpansion<Rat> p_stabilize(const QExpansion<Rat>&, long, const Rat&, const Rat&, Stab);
template QExpansion<AlgNum> p_stabilize(const QExpansion<AlgNum>&, long, const AlgNum&, const AlgNum&, Stab);
template QExpansion<Cplx> p_stabilize(const QExpansion<Cplx>&, long, const Cplx&, const Cplx&, Stab);

// ---- builtin series --------------------------------------------------------

namespace {

// prod (1 - q^n) by pentagonal numbers
std::vector<Int> eta_series(long B) {
    std::vector<Int> c(B + 1, Int(0));
    c[0] = 1;
    for (long j = 1;; ++j) {
        long g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
        if (g1 > B && g2 > B) break;
        Int s = (j % 2) ? Int(-1) : Int(1);
        if (g1 <= B) c[g1] += s;
        if (g2 <= B) c[g2] += s;
    }
    return c;
}

// prod (1 - q^n)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}
std::vector<Int> eta3_series(long B) {
    std::vector<Int> c(B + 1, Int(0));
    for (long j = 0;; ++j) {
        long g = j * (j + 1) / 2;
        if (g > B) break;
        c[g] = (j % 2) ? Int(-(2 * j + 1)) : Int(2 * j + 1);
    }
    return c;
}

std::vector<Int> mul_trunc(const std::vector<Int>& a, const std::vector<Int>& b, long B) {
    std::vector<Int> c(B + 1, Int(0));
    for (long i = 0; i <= B && i < (long)a.size(); ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; i + j <= B && j < (long)b.size(); ++j) {
            if (b[j] == 0) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

std::vector<Int> stretch(const std::vector<Int>& a, long s, long B) {
    std::vector<Int> c(B + 1, Int(0));
    for (long i = 0; i * s <= B && i < (long)a.size(); ++i) c[i * s] = a[i];
    return c;
}

QExpQ make_q(int k, long N, DirichletChar chi, std::vector<Int> c) {
    QExpQ f;
    f.k = k;
    f.N = N;
    f.chi = std::move(chi);
    f.B = (long)c.size() - 1;
    f.a.reserve(c.size());
    for (auto& x : c) f.a.emplace_back(Rat(x));
    return f;
}

} // namespace

QExpQ delta_series(long B) {
    auto e3 = eta3_series(B);
    auto e6 = mul_trunc(e3, e3, B);
    auto e12 = mul_trunc(e6, e6, B);
    auto e24 = mul_trunc(e12, e12, B);
    std::vector<Int> d(B + 1, Int(0));
    for (long n = 1; n <= B; ++n) d[n] = e24[n - 1];
    return make_q(12, 1, DirichletChar::trivial(), std::move(d));
}

QExpQ eisenstein_E4(long B) {
    std::vector<Int> c(B + 1, Int(0));
    c[0] = 1;
    std::vector<Int> sig(B + 1, Int(0));
    for (long m = 1; m <= B; ++m) {
        Int m3 = Int(m) * m * m;
        for (long n = m; n <= B; n += m) sig[n] += m3;
    }
    for (long n = 1; n <= B; ++n) c[n] = 240 * sig[n];
    return make_q(4, 1, DirichletChar::trivial(), std::move(c));
}

QExpQ eisenstein_E6(long B) {
    std::vector<Int> c(B + 1, Int(0));
    c[0] = 1;
    std::vector<Int> sig(B + 1, Int(0));
    for (long m = 1; m <= B; ++m) {
        Int m5 = Int(m) * m * m * m * m;
        for (long n = m; n <= B; n += m) sig[n] += m5;
    }
    for (long n = 1; n <= B; ++n) c[n] = -504 * sig[n];
    return make_q(6, 1, DirichletChar::trivial(), std::move(c));
}

QExpQ eta8_eta2_8(long B) {
    auto e = eta_series(B);
    auto e2 = mul_trunc(e, e, B);
    auto e4 = mul_trunc(e2, e2, B);
    auto e8 = mul_trunc(e4, e4, B);
    auto e8_2 = stretch(e8, 2, B);
    auto prod = mul_trunc(e8, e8_2, B);
    std::vector<Int> c(B + 1, Int(0));
    for (long n = 1; n <= B; ++n) c[n] = prod[n - 1];
    return make_q(8, 2, DirichletChar::trivial(), std::move(c));
}

QExpQ eta2_12(long B) {
    auto e3 = stretch(eta3_series(B), 2, B);
    auto e6 = mul_trunc(e3, e3, B);
    auto e12 = mul_trunc(e6, e6, B);
    std::vector<Int> c(B + 1, Int(0));
    for (long n = 1; n <= B; ++n) c[n] = e12[n - 1];
    return make_q(6, 4, DirichletChar::trivial(), std::move(c));
}

std::pair<QExpA, QExpA> weight24_eigenforms(long B) {
    long Bw = std::max(B, 8L) * 2;
    QExpQ delta = delta_series(Bw);
    QExpQ e4 = eisenstein_E4(Bw);
    QExpQ f1 = multiply(multiply(multiply(delta, e4), e4), e4); // Delta E4^3
    QExpQ f2 = multiply(delta, delta);                          // Delta^2
    f1.k = 24; f2.k = 24;
    QExpQ Tf1 = hecke_T(f1, 2), Tf2 = hecke_T(f2, 2);
    // coords (a1, a2); basis coords: f1 -> (1, a2(f1)), f2 -> (0, 1)
    Rat a2f1 = f1.a[2];
    // T f = x f1 + y f2 with x = a1(Tf), y = a2(Tf) - x a2(f1)
    Rat m00 = Tf1.a[1], m10 = Tf1.a[2] - m00 * a2f1;
    Rat m01 = Tf2.a[1], m11 = Tf2.a[2] - m01 * a2f1;
    Rat tr = m00 + m11, det = m00 * m11 - m01 * m10;
    Rat disc = tr * tr - 4 * det;
    // disc = u^2 * s with s squarefree
    Int num = disc.get_num(), den = disc.get_den();
    Int n2 = num * den; // disc = n2 / den^2
    Int u(1), s(1);
    for (Int f(2); f * f <= n2; ++f) {
        while (n2 % (f * f) == 0) { n2 /= f * f; u *= f; }
    }
    s = n2;
    auto field = NumberField::get(1, s.get_si());
    AlgNum rt = AlgNum::sqrt_s(field);
    AlgNum half(field, Rat(1, 2));
    auto lift = [&](const Rat& x) { return AlgNum(field, x); };
    AlgNum sq = lift(Rat(u, den)) * rt; // sqrt(disc)
    AlgNum lam1 = (lift(tr) + sq) * half;
    AlgNum lam2 = (lift(tr) - sq) * half;
    // h = f1 + c f2 with c = (lambda a2(f1) - a2(Tf1)) / (a2(Tf2) - lambda)
    auto build = [&](const AlgNum& lam) {
        AlgNum c = (lam * lift(a2f1) - lift(Tf1.a[2])) * (lift(Tf2.a[2]) - lam).inverse();
        QExpA h;
        h.k = 24;
        h.N = 1;
        h.chi = DirichletChar::trivial();
        h.B = B;
        h.Lden = 1;
        h.a.reserve(B + 1);
        for (long n = 0; n <= B; ++n) h.a.push_back(lift(f1.a[n]) + c * lift(f2.a[n]));
        return h;
    };
    return {build(lam1), build(lam2)};
}

// ---- CM forms ---------------------------------------------------------------

QExpA cm_form(const heckechar::HeckeCharacter& psi, long B) {
    if (psi.weight_b() != 0 || psi.weight_a() < 0)
        throw std::invalid_argument("cm_form: character must have infinity-type (m, 0), m >= 0");
    const auto& K = psi.K();
    long m = psi.weight_a();
    QExpA f;
    f.k = (int)m + 1;
    Int condN = psi.conductor().norm();
    f.N = K.d * condN.get_si();
    f.chi = DirichletChar::kronecker(K.d) * DirichletChar::from_finite_type(psi.finite_type());
    f.B = B;
    f.a.assign(B + 1, AlgNum::zero(psi.value_field()));
    for (long n = 1; n <= B; ++n) {
        AlgNum s = AlgNum::zero(psi.value_field());
        for (const auto& id : quadfield::ideals_of_norm(K, n)) s = s + psi.eval(id);
        f.a[n] = s;
    }
    auto tag = std::make_shared<CMTag>();
    tag->psi = psi;
    f.cm = tag;
    return f;
}

// ---- roots ------------------------------------------------------------------

namespace {

void order_roots(Cplx& alpha, Cplx& beta) {
    // nonnegative imaginary part first; ties by larger real part
    bool swap = false;
    if (beta.im > alpha.im) swap = true;
    else if (!(alpha.im > beta.im) && beta.re > alpha.re) swap = true;
    if (swap) std::swap(alpha, beta);
}

HeckeRootPair roots_from(const Cplx& aq, const Cplx& cq, long q) {
    HeckeRootPair r;
    r.q = q;
    Cplx disc = aq * aq - Cplx(Real(4L)) * cq;
    Cplx sq = csqrt(disc);
    Cplx two(Real(2L));
    r.alpha = (aq + sq) / two;
    r.beta = (aq - sq) / two;
    order_roots(r.alpha, r.beta);
    return r;
}

template <class R>
void check_eigen_exact(const QExpansion<R>& f, long q) {
    auto Tf = hecke_T(f, q);
    const R& aq = f.a.at(q);
    for (long n = 1; n <= Tf.B; ++n) {
        if (!coeff_is_zero(Tf.a[n] - aq * f.a[n]))
            throw std::invalid_argument("hecke_roots: not a T(" + std::to_string(q) + ") eigenform (coefficient " +
                                        std::to_string(n) + ")");
    }
}

} // namespace

HeckeRootPair hecke_roots(const QExpC& f, long q, double eigen_tol) {
    auto Tf = hecke_T(f, q);
    Real scale(0L);
    for (long n = 1; n <= Tf.B; ++n) {
        Real d = abs(Tf.a[n] - f.a.at(q) * f.a[n]);
        if (d > scale) scale = d;
    }
    // compare against the size of the coefficients involved
    Real ref(1L);
    for (long n = 1; n <= Tf.B; ++n) {
        Real m = abs(f.a[n] * f.a.at(q));
        if (m > ref) ref = m;
    }
    if (scale / ref > Real(eigen_tol))
        throw std::invalid_argument("hecke_roots: not numerically a T(q)-eigenform");
    return roots_from(f.a.at(q), f.chi.value_complex(q) * Cplx(pow_si(Real(q), f.k - 1)), q);
}

HeckeRootPair hecke_roots(const QExpQ& f, long q) {
    check_eigen_exact(f, q);
    Cplx aq{Real(f.a.at(q))};
    Cplx cq{Real(f.chi.value_int(q)) * pow_si(Real(q), f.k - 1)};
    HeckeRootPair r = roots_from(aq, cq, q);
    // exact when the discriminant is a rational square
    Rat c = Rat(f.chi.value_int(q));
    Int qk(1);
    for (int i = 0; i < f.k - 1; ++i) qk *= q;
    Rat disc = f.a.at(q) * f.a.at(q) - 4 * c * Rat(qk);
    if (disc >= 0) {
        Int n = disc.get_num(), d = disc.get_den();
        Int sn = sqrt(n), sd = sqrt(d);
        if (sn * sn == n && sd * sd == d) {
            auto F = NumberField::get(1, 0);
            Rat sq(sn, sd);
            r.alpha_exact = AlgNum(F, (f.a.at(q) + sq) / 2);
            r.beta_exact = AlgNum(F, (f.a.at(q) - sq) / 2);
        }
    }
    return r;
}

HeckeRootPair hecke_roots(const QExpA& f, long q) {
    check_eigen_exact(f, q);
    const auto& F = f.a.at(0).field();
    AlgNum aq = f.a.at(q);
    Int qk(1);
    for (int i = 0; i < f.k - 1; ++i) qk *= q;
    AlgNum cq = f.chi.value_in(F, q) * AlgNum(F, Rat(qk));
    HeckeRootPair r = roots_from(aq.embed_complex(), cq.embed_complex(), q);
    if (f.cm) {
        const auto& psi = f.cm->psi;
        const auto& K = psi.K();
        auto sd = quadfield::factor_rational_prime(K, q);
        AlgNum r1 = AlgNum::zero(F), r2 = AlgNum::zero(F);
        if (sd.type == quadfield::SplitType::split) {
            r1 = psi.eval(sd.primary);
            r2 = psi.eval(*sd.conjugate);
        } else if (sd.type == quadfield::SplitType::ramified) {
            r1 = psi.eval(sd.primary);
            r2 = AlgNum::zero(F);
        } else {
            return r; // inert: a_q = 0, roots are +-sqrt(-chi(q)) q^{(k-1)/2}; no exact form carried
        }
        // match exact roots to the complex ordering
        Cplx c1 = r1.embed_complex();
        Real d1 = abs(c1 - r.alpha);
        Real d2 = abs(c1 - r.beta);
        if (d1 < d2) { r.alpha_exact = r1; r.beta_exact = r2; }
        else { r.alpha_exact = r2; r.beta_exact = r1; }
    }
    return r;
}

HeckeRootPair identify_unit_root(HeckeRootPair r, const padic::PadicEmbedding& emb) {
    if (!r.alpha_exact || !r.beta_exact)
        throw std::invalid_argument("identify_unit_root: exact roots required for the p-adic context");
    padic::PadicScalar va = emb(*r.alpha_exact), vb = emb(*r.beta_exact);
    long v1 = va.is_exact_zero() ? 1000000 : va.val();
    long v2 = vb.is_exact_zero() ? 1000000 : vb.val();
    if (v1 == 0 && v2 > 0) {
        r.alpha_is_unit = true;
        return r;
    }
    if (v2 == 0 && v1 > 0) {
        std::swap(r.alpha, r.beta);
        std::swap(r.alpha_exact, r.beta_exact);
        r.alpha_is_unit = true;
        return r;
    }
    throw std::invalid_argument("identify_unit_root: not ordinary; root valuations are v(alpha) = " +
                                std::to_string(v1) + ", v(beta) = " + std::to_string(v2));
}

// ---- conversions ------------------------------------------------------------

QExpC to_complex(const QExpQ& f) {
    QExpC r;
    r.k = f.k; r.N = f.N; r.chi = f.chi; r.B = f.B; r.Lden = f.Lden;
    r.a.reserve(f.a.size());
    for (const auto& c : f.a) r.a.emplace_back(Real(c));
    return r;
}

QExpC to_complex(const QExpA& f) {
    QExpC r;
    r.k = f.k; r.N = f.N; r.chi = f.chi; r.B = f.B; r.Lden = f.Lden;
    r.a.reserve(f.a.size());
    for (const auto& c : f.a) r.a.push_back(c.embed_complex());
    return r;
}

std::vector<padic::PadicScalar> embed_padic(const QExpA& f, const padic::PadicEmbedding& emb) {
    std::vector<padic::PadicScalar> out;
    out.reserve(f.a.size());
    for (const auto& c : f.a) out.push_back(emb(c));
    return out;
}

std::vector<padic::PadicScalar> embed_padic(const QExpQ& f, long p, int M) {
    std::vector<padic::PadicScalar> out;
    out.reserve(f.a.size());
    for (const auto& c : f.a) out.push_back(padic::PadicScalar::from_rat(p, M, c));
    return out;
}

// ---- newform files -----------------------------------------------------------

namespace {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Rat r(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    r.canonicalize();
    return r;
}

// rational or Gaussian-rational literal: R, Ri, R+Si, R-Si
void parse_gaussian(const std::string& tok, Rat& re, Rat& im) {
    std::string s;
    for (char c : tok)
        if (!isspace((unsigned char)c)) s += c;
    re = 0; im = 0;
    if (s.empty()) throw std::invalid_argument("empty coefficient literal");
    if (s.back() == 'i') {
        // find the split point: last '+' or '-' not at position 0 and not after '/'
        size_t split = std::string::npos;
        for (size_t i = s.size() - 1; i > 0; --i) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-') {
                split = i;
                break;
            }
        }
        std::string imag = s.substr(0, s.size() - 1);
        if (split != std::string::npos) {
            re = parse_rat(s.substr(0, split));
            imag = s.substr(split, s.size() - 1 - split);
        }
        if (imag.empty() || imag == "+") imag = "1";
        else if (imag == "-") imag = "-1";
        im = parse_rat(imag);
    } else {
        re = parse_rat(s);
    }
}

} // namespace

QExpA load_newform(const std::string& path, long B) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_newform: cannot open " + path);
    long weight = -1, level = -1;
    std::string charspec = "trivial";
    std::vector<std::pair<long, std::pair<Rat, Rat>>> rows;
    bool any_imag = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t;
        for (char c : line) t += isspace((unsigned char)c) ? ' ' : c;
        // trim
        size_t b0 = t.find_first_not_of(' ');
        if (b0 == std::string::npos) continue;
        size_t b1 = t.find_last_not_of(' ');
        t = t.substr(b0, b1 - b0 + 1);
        if (t.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("load_newform: " + path + ":" + std::to_string(lineno) + ": " + why);
        };
        if (t.rfind("weight=", 0) == 0) { weight = std::stol(t.substr(7)); continue; }
        if (t.rfind("level=", 0) == 0) { level = std::stol(t.substr(6)); continue; }
        if (t.rfind("character=", 0) == 0) { charspec = t.substr(10); continue; }
        auto sp = t.find(' ');
        if (sp == std::string::npos) fail("expected 'n a_n'");
        long n = 0;
        try { n = std::stol(t.substr(0, sp)); } catch (...) { fail("bad index"); }
        Rat re, im;
        try { parse_gaussian(t.substr(sp + 1), re, im); } catch (const std::exception& e) { fail(e.what()); }
        if (im != 0) any_imag = true;
        rows.push_back({n, {re, im}});
    }
    if (weight <= 0) throw std::invalid_argument("load_newform: missing/invalid weight=");
    if (level <= 0) throw std::invalid_argument("load_newform: missing/invalid level=");
    DirichletChar chi = DirichletChar::trivial();
    if (charspec.rfind("kronecker:", 0) == 0) chi = DirichletChar::kronecker(std::stol(charspec.substr(10)));
    else if (charspec != "trivial") throw std::invalid_argument("load_newform: unsupported character= " + charspec);

    auto F = NumberField::get(any_imag ? 4 : 1, 0);
    QExpA f;
    f.k = (int)weight;
    f.N = level;
    f.chi = chi;
    f.B = B;
    f.a.assign(B + 1, AlgNum::zero(F));
    long maxn = 0;
    for (auto& [n, v] : rows) {
        if (n < 0) throw std::invalid_argument("load_newform: negative index");
        maxn = std::max(maxn, n);
        if (n > B) continue;
        AlgNum val(F, v.first);
        if (v.second != 0) val = val + AlgNum(F, v.second) * AlgNum::root_of_unity(F, 1); // i = zeta_4
        f.a[n] = val;
    }
    if (maxn < B) throw std::invalid_argument("load_newform: file provides coefficients only to n = " +
                                              std::to_string(maxn) + ", need B = " + std::to_string(B));
    validate_eigenform(f);
    return f;
}

void save_newform(const std::string& path, const QExpQ& f) {
    std::ofstream out(path);
    out << "weight=" << f.k << "\n" << "level=" << f.N << "\n" << "character=trivial\n";
    for (long n = 1; n <= f.B; ++n) out << n << " " << f.a[n] << "\n";
}

void validate_eigenform(const QExpA& f) {
    const auto& F = f.a.at(0).field();
    if (!(f.a.at(1) == AlgNum::one(F))) throw std::invalid_argument("validate_eigenform: a_1 != 1");
    // multiplicativity on coprime pairs
    for (long m0 = 2; m0 * 2 <= f.B; ++m0)
        for (long n0 = 2; m0 * n0 <= f.B; ++n0) {
            if (std::gcd(m0, n0) != 1) continue;
            if (!(f.a[m0 * n0] == f.a[m0] * f.a[n0]))
                throw std::invalid_argument("validate_eigenform: a_{mn} != a_m a_n at (" + std::to_string(m0) +
                                            "," + std::to_string(n0) + ")");
        }
    // prime-power recursion
    for (long q = 2; q * q <= f.B; ++q) {
        bool prime = true;
        for (long t = 2; t * t <= q; ++t)
            if (q % t == 0) { prime = false; break; }
        if (!prime) continue;
        Int qk(1);
        for (int i = 0; i < f.k - 1; ++i) qk *= q;
        AlgNum cq = (std::gcd(q, f.N) == 1) ? f.chi.value_in(F, q) * AlgNum(F, Rat(qk)) : AlgNum::zero(F);
        long qr = q;
        while (qr * q <= f.B) {
            long prev = qr / q;
            AlgNum expect = f.a[q] * f.a[qr] - cq * f.a[prev];
            if (!(f.a[qr * q] == expect))
                throw std::invalid_argument("validate_eigenform: prime-power recursion fails at q = " +
                                            std::to_string(q));
            qr *= q;
        }
    }
}

} // namespace padiclf::qexp

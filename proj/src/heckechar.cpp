#include "padiclf/heckechar.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace padiclf::heckechar {

using quadfield::elem_conj;
using quadfield::elem_mul;
using quadfield::elem_norm;
using quadfield::elem_pow;
using quadfield::ideal_mul;
using quadfield::ideal_pow;
using quadfield::ord_at;
using quadfield::principal_generator;
using padic::u64;

namespace {

struct DlogTable {
    long q;             // modulus prime
    long ord;
    std::map<std::pair<long, long>, long> table; // (x mod q, y mod q) -> dlog
};

// dlog table for F_{l^2}^x = (O_K/l)^x, canonical generator = first (x, y)
// in lex order generating the group.
const DlogTable& inert_table(const QuadField& K, long ell) {
    static std::map<std::pair<long, long>, DlogTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(K.d, ell);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    long ord = ell * ell - 1;
    auto mul = [&](std::pair<long, long> a, std::pair<long, long> b) {
        // (x1 + y1 w)(x2 + y2 w) mod l
        long yy = a.second * b.second % ell;
        long x = ((a.first * b.first - (K.D % ell) * yy) % ell + ell) % ell;
        long y = ((a.first * b.second + a.second * b.first + yy) % ell) % ell;
        return std::make_pair(x, y);
    };
    DlogTable T;
    T.q = ell;
    T.ord = ord;
    for (long gx = 0; gx < ell && T.table.empty(); ++gx)
        for (long gy = 0; gy < ell && T.table.empty(); ++gy) {
            if (gx == 0 && gy == 0) continue;
            // candidate generator
            std::map<std::pair<long, long>, long> tab;
            std::pair<long, long> cur{1, 0};
            bool ok = true;
            for (long i = 0; i < ord; ++i) {
                if (tab.count(cur)) { ok = false; break; }
                tab[cur] = i;
                cur = mul(cur, {gx, gy});
            }
            if (ok && cur == std::make_pair(1L, 0L) && (long)tab.size() == ord) T.table = std::move(tab);
        }
    if (T.table.empty()) throw std::logic_error("inert_table: no generator (is ell inert and prime?)");
    return cache[key] = std::move(T);
}

long dlog_mod_p(long p, long residue) {
    long g = padic::least_primitive_root(p);
    long cur = 1;
    for (long i = 0; i < p - 1; ++i) {
        if (cur == residue) return i;
        cur = cur * g % p;
    }
    throw std::domain_error("dlog_mod_p: residue divisible by p");
}

long mod_pos(long a, long m) { return ((a % m) + m) % m; }

} // namespace

long dlog_split(const QuadField&, const QuadIdeal& P, long p, const QuadElem& x) {
    // x + y w mod [p, b + w]: w = -b
    long b = P.b().get_si();
    Int r = x.x - x.y * b;
    long residue = mod_pos((long)Int(r % p).get_si(), p);
    if (residue == 0) throw std::domain_error("dlog_split: element not coprime to P");
    return dlog_mod_p(p, residue);
}

QuadElem inert_generator(const QuadField& K, long ell) {
    const auto& T = inert_table(K, ell);
    for (const auto& [k, v] : T.table)
        if (v == 1) return QuadElem(Int(k.first), Int(k.second));
    throw std::logic_error("inert_generator");
}

long dlog_inert(const QuadField& K, long ell, const QuadElem& x) {
    const auto& T = inert_table(K, ell);
    long xr = mod_pos((long)Int(x.x % ell).get_si(), ell);
    long yr = mod_pos((long)Int(x.y % ell).get_si(), ell);
    auto it = T.table.find({xr, yr});
    if (it == T.table.end()) throw std::domain_error("dlog_inert: element not coprime to ell");
    return it->second;
}

void FiniteType::push(LocalComponent c) {
    // normalize conj_input away: split-prime conj moves to the conjugate
    // prime; inert conj is Frobenius x -> x^ell, i.e. e -> e*ell.
    if (c.conj_input) {
        if (c.kind == LocalComponent::Kind::split_prime) {
            c.modulus = c.modulus.conj(K_);
        } else {
            c.e = mod_pos(c.e * c.q, c.ord);
        }
        c.conj_input = false;
    }
    c.e = mod_pos(c.e, c.ord);
    if (c.e == 0) return;
    for (size_t i = 0; i < comps_.size(); ++i) {
        auto& ex = comps_[i];
        if (ex.kind == c.kind && ex.q == c.q && ex.modulus == c.modulus) {
            ex.e = mod_pos(ex.e + c.e, ex.ord);
            if (ex.e == 0) comps_.erase(comps_.begin() + (long)i);
            return;
        }
    }
    comps_.push_back(c);
}

FiniteType FiniteType::teichmuller_power(const QuadField& K, const QuadIdeal& P, long p, long e) {
    FiniteType f(K);
    LocalComponent c;
    c.kind = LocalComponent::Kind::split_prime;
    c.q = p;
    c.modulus = P;
    c.ord = p - 1;
    c.e = e;
    f.push(c);
    return f;
}

FiniteType FiniteType::inert_character(const QuadField& K, long ell, long e) {
    FiniteType f(K);
    LocalComponent c;
    c.kind = LocalComponent::Kind::inert_prime;
    c.q = ell;
    c.modulus = QuadIdeal(K, ell, 1, 0);
    c.ord = ell * ell - 1;
    c.e = e;
    f.push(c);
    return f;
}

FiniteType FiniteType::nu_character(const QuadField& K, long ell, long order) {
    if (quadfield::factor_rational_prime(K, ell).type != quadfield::SplitType::inert)
        throw std::invalid_argument("nu_character: ell is not inert in K");
    long N = ell * ell - 1;
    // trivial on F_ell^x  <=>  (ell - 1) | e; trivial on O_K^x adds the
    // subgroup of units: -1 = g^{N/2}, and for d = 3 the sixth roots.
    long ucond = (K.w_K == 6) ? 6 : 2;
    for (long e = 1; e < N; ++e) {
        if (e % (ell - 1)) continue;
        if ((e * (N / ucond)) % N) continue; // unit subgroup maps into index-ucond part
        if (N / std::gcd(e, N) != order) continue;
        return inert_character(K, ell, e);
    }
    throw std::invalid_argument("nu_character: no character of order " + std::to_string(order) +
                                " trivial on (Z/" + std::to_string(ell) + ")^x and O_K^x");
}

FiniteType FiniteType::times(const FiniteType& o) const {
    FiniteType f = *this;
    for (const auto& c : o.comps_) f.push(c);
    return f;
}

FiniteType FiniteType::inverse() const { return power(-1); }

FiniteType FiniteType::power(long j) const {
    FiniteType f(K_);
    for (auto c : comps_) {
        c.e = mod_pos((long)((__int128)c.e * j % c.ord), c.ord);
        f.push(c);
    }
    return f;
}

FiniteType FiniteType::conj_transport() const {
    FiniteType f(K_);
    for (auto c : comps_) {
        c.conj_input = true;
        f.push(c);
    }
    return f;
}

bool FiniteType::is_trivial() const { return comps_.empty(); }

QuadIdeal FiniteType::conductor() const {
    QuadIdeal m = QuadIdeal::unit_ideal(K_);
    for (const auto& c : comps_) m = ideal_mul(K_, m, c.modulus);
    return m;
}

long FiniteType::value_order() const {
    long L = 1;
    for (const auto& c : comps_) L = std::lcm(L, c.ord / std::gcd(c.ord, c.e));
    return L;
}

std::optional<std::pair<long, long>> FiniteType::value_exponent(const QuadElem& x) const {
    long L = value_order();
    long j = 0;
    for (const auto& c : comps_) {
        long dl;
        try {
            dl = (c.kind == LocalComponent::Kind::split_prime) ? dlog_split(K_, c.modulus, c.q, x)
                                                               : dlog_inert(K_, c.q, x);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
        // component value = zeta_ord^{e*dl} = zeta_L^{(e*dl)*(L/ord')}, ord' = ord/gcd
        long ordp = c.ord / std::gcd(c.ord, c.e);
        long expo = mod_pos((long)((__int128)c.e * dl % c.ord), c.ord);
        // expo is a multiple of ord/ordp
        long scaled = (expo / (c.ord / ordp)) * (L / ordp);
        j = mod_pos(j + scaled, L);
    }
    return std::make_pair(j, L);
}

AlgNum FiniteType::value(const FieldPtr& F, const QuadElem& x) const {
    auto ve = value_exponent(x);
    if (!ve) return AlgNum::zero(F);
    auto [j, L] = *ve;
    if (F->L % L != 0) throw std::domain_error("FiniteType::value: field lacks the needed roots of unity");
    return AlgNum::root_of_unity(F, j * (F->L / L));
}

bool FiniteType::trivial_on_units() const {
    for (const auto& u : quadfield::units(K_)) {
        auto ve = value_exponent(u);
        if (!ve || ve->first != 0) return false;
    }
    return true;
}

bool FiniteType::trivial_on_rational_residues() const {
    long modN = 1;
    for (const auto& c : comps_) modN *= c.q;
    for (long n = 1; n < modN; ++n) {
        if (std::gcd(n, modN) != 1) continue;
        auto ve = value_exponent(QuadElem(Int(n), Int(0)));
        if (!ve || ve->first != 0) return false;
    }
    return true;
}

std::optional<std::pair<long, long>> FiniteType::rational_value_exponent(long n) const {
    return value_exponent(QuadElem(Int(n), Int(0)));
}

HeckeCharacter::HeckeCharacter(QuadField K, long a, long b, FiniteType fin, int branch)
    : K_(K), a_(a), b_(b), fin_(std::move(fin)), branch_(branch) {
    long L = std::max(1L, fin_.value_order());
    F_ = NumberField::get(L, -K_.d);
    // unit compatibility: fin(u) u^a conj(u)^b = 1 for units u
    for (const auto& u : quadfield::units(K_)) {
        AlgNum val = eval_principal(u);
        if (!(val == AlgNum::one(F_)))
            throw std::invalid_argument("HeckeCharacter: finite type and infinity type are incompatible on units");
    }
    cls_ = quadfield::class_group(K_, fin_.conductor().min_rational());
    if (cls_.h == 1) {
        rep_values_ = {AlgNum::one(F_)};
    } else {
        throw std::invalid_argument("HeckeCharacter: exact class-group extension for h_K > 1 is not supported");
    }
    (void)branch_;
}

AlgNum HeckeCharacter::eval_principal(const QuadElem& beta) const {
    // fin(beta) * beta^a * conj(beta)^b
    AlgNum f = fin_.value(F_, beta);
    if (f.is_zero()) return f;
    // beta = x + y(1+rt)/2
    Rat half(1, 2);
    Cyclo u(F_, Rat(beta.x) + half * Rat(beta.y));
    Cyclo v(F_, half * Rat(beta.y));
    AlgNum B(u, v);
    AlgNum Bc = AlgNum(Cyclo(F_, Rat(beta.x) + half * Rat(beta.y)), Cyclo(F_, -half * Rat(beta.y)));
    return f * B.pow(a_) * Bc.pow(b_);
}

AlgNum HeckeCharacter::eval(const QuadIdeal& a) const {
    // zero on ideals not coprime to the conductor
    for (const auto& c : fin_.components())
        if (c.modulus.divides(K_, a)) return AlgNum::zero(F_);
    // content part is principal (g)
    AlgNum out = AlgNum::one(F_);
    if (a.content() != 1) out = out * eval_principal(QuadElem(a.content(), Int(0)));
    QuadIdeal a0(K_, Int(1), a.a(), a.b());
    int j = cls_.class_of(K_, a0);
    QuadIdeal b = ideal_mul(K_, a0, cls_.reps[j].conj(K_));
    auto beta = principal_generator(K_, b);
    if (!beta) throw std::logic_error("HeckeCharacter::eval: class-group bookkeeping failed");
    AlgNum num = eval_principal(*beta);
    AlgNum den = eval_principal(QuadElem(Int(cls_.reps[j].norm()), Int(0)));
    return out * num * rep_values_[j] * den.inverse();
}

Cplx HeckeCharacter::eval_complex(const QuadIdeal& a) const { return eval(a).embed_complex(); }

HeckeCharacter operator*(const HeckeCharacter& x, const HeckeCharacter& y) {
    return HeckeCharacter(x.K_, x.a_ + y.a_, x.b_ + y.b_, x.fin_.times(y.fin_), x.branch_);
}

HeckeCharacter HeckeCharacter::inverse() const {
    return HeckeCharacter(K_, -a_, -b_, fin_.inverse(), branch_);
}

HeckeCharacter HeckeCharacter::power(long j) const {
    return HeckeCharacter(K_, a_ * j, b_ * j, fin_.power(j), branch_);
}

HeckeCharacter HeckeCharacter::norm_twist(long j) const {
    return HeckeCharacter(K_, a_ + j, b_ + j, fin_, branch_);
}

HeckeCharacter HeckeCharacter::conj_c() const {
    return HeckeCharacter(K_, b_, a_, fin_.conj_transport(), branch_);
}

HeckeCharacter HeckeCharacter::conj_rho() const {
    return HeckeCharacter(K_, b_, a_, fin_.inverse(), branch_);
}

bool HeckeCharacter::central_character_trivial() const { return fin_.trivial_on_rational_residues(); }

Real HeckeCharacter::unitarity_defect(const QuadIdeal& a) const {
    Cplx v = eval_complex(a);
    Real expect = exp(Real(0.5) * Real((long)(a_ + b_)) * log(Real(a.norm())));
    return abs(abs(v) / expect - Real(1L));
}

PadicAlpha::PadicAlpha(QuadField K, long p, int prec, int branch)
    : K_(K), p_(p), M_(prec), branch_(branch) {
    if (p <= 2) throw std::invalid_argument("build_alpha: p must be an odd prime");
    if (K.d % p == 0) throw std::invalid_argument("build_alpha: p ramifies in K");
    auto sd = quadfield::factor_rational_prime(K_, p);
    if (sd.type != quadfield::SplitType::split)
        throw std::invalid_argument("build_alpha: p must split in K (inert/ramified rejected)");
    P_ = sd.primary;
    Pbar_ = *sd.conjugate;
    bP_ = P_.b().get_si();
    cls_ = quadfield::class_group(K_, Int(p));
    h_ = cls_.h;
    if (h_ % p == 0)
        throw std::invalid_argument("build_alpha: p divides h_K = " + std::to_string(h_) +
                                    "; the Lambda-coefficient case requires p coprime to h_K");
    // branch twist: character of Cl_K into mu_{p-1} (cyclic class groups)
    rep_tors_.assign(h_, PadicScalar::from_int(p_, M_, 1));
    if (branch_ != 0 && h_ > 1) {
        // find a generator of the class group
        int gen = -1;
        long maxord = 0;
        std::vector<long> ords(h_, 0);
        for (int i = 0; i < h_; ++i) {
            int c = i;
            long o = 1;
            while (c != 0) { c = cls_.compose(c, i); ++o; }
            ords[i] = o;
            if (o > maxord) { maxord = o; gen = i; }
        }
        if (maxord != h_)
            throw std::invalid_argument("build_alpha: nontrivial branch needs a cyclic class group");
        long t = std::gcd(maxord, p_ - 1);
        long g = padic::least_primitive_root(p_);
        PadicScalar zeta = padic::teichmuller(p_, M_, (u64)g).pow((p_ - 1) / t);
        // dlog of each class with respect to gen
        std::vector<int> pow_of_gen(h_, -1);
        int c = 0;
        for (long i = 0; i < maxord; ++i) {
            pow_of_gen[c] = (int)i;
            c = cls_.compose(c, gen);
        }
        for (int i = 0; i < h_; ++i)
            rep_tors_[i] = zeta.pow((long)branch_ * pow_of_gen[i]);
    }
}

PadicAlpha build_alpha(const QuadField& K, long p, int prec, int branch) {
    return PadicAlpha(K, p, prec, branch);
}

PadicScalar PadicAlpha::iota(const QuadElem& x) const {
    // t = root of T^2 - T + D with t = -bP mod p
    int M = M_ + 2;
    PadicScalar t = PadicScalar::from_int(p_, M, mod_pos(-bP_, p_));
    PadicScalar D = PadicScalar::from_int(p_, M, K_.D);
    PadicScalar one = PadicScalar::from_int(p_, M, 1), two = PadicScalar::from_int(p_, M, 2);
    for (int i = 0; i < M + 2; ++i) t = t - (t * t - t + D) / (two * t - one);
    return PadicScalar::from_rat(p_, M, Rat(x.x)) + PadicScalar::from_rat(p_, M, Rat(x.y)) * t;
}

PadicScalar PadicAlpha::one_unit_value(const QuadIdeal& a) const {
    // class order o with a^o principal; alpha(a)^o = <iota(beta) p^{-ord_P beta}>
    QuadIdeal a0(K_, Int(1), a.a(), a.b());
    int j = cls_.class_of(K_, a0);
    long o = 1;
    {
        int c = j;
        while (c != 0) { c = cls_.compose(c, j); ++o; }
        if (j == 0) o = 1;
    }
    QuadIdeal ao = ideal_pow(K_, a, (unsigned long)o);
    auto beta = principal_generator(K_, ao);
    if (!beta) throw std::logic_error("PadicAlpha: power of ideal not principal");
    long vP = ord_at(K_, QuadIdeal::principal(K_, *beta), P_);
    PadicScalar ib = iota(*beta);
    PadicScalar unit = ib / PadicScalar::from_int(p_, M_ + 4, p_).pow(vP);
    PadicScalar one_unit = padic::one_unit_part(unit);
    PadicScalar root = padic::one_unit_root(one_unit, o);
    return root;
}

PadicScalar PadicAlpha::eval(const QuadIdeal& a) const {
    PadicScalar u = one_unit_value(a);
    if (branch_ == 0 || h_ == 1) return u;
    QuadIdeal a0(K_, Int(1), a.a(), a.b());
    int j = cls_.class_of(K_, a0);
    return u * rep_tors_[j];
}

PadicHecke::PadicHecke(const HeckeCharacter& chi, const PadicAlpha& alpha, int prec)
    : chi_(chi), alpha_(alpha) {
    long rt_res = mod_pos(-2 * alpha.omega_residue() - 1, alpha.p());
    emb_ = padic::make_embedding(chi.value_field(), alpha.p(), prec, rt_res);
}

PadicScalar PadicHecke::eval(const QuadIdeal& a) const {
    const auto& K = chi_.K();
    long vP = ord_at(K, a, alpha_.P());
    long vPb = ord_at(K, a, alpha_.Pbar());
    AlgNum c = chi_.eval(a);
    PadicScalar val = emb_(c);
    // divide by p^{a*ordP + b*ordPbar}
    long shift = chi_.weight_a() * vP + chi_.weight_b() * vPb;
    return val / PadicScalar::from_int(alpha_.p(), emb_.M, alpha_.p()).pow(shift);
}

CharacterFamily::CharacterFamily(HeckeCharacter base, PadicAlpha alpha, long e1, long e2, Slot slot, long a)
    : base_(std::move(base)), alpha_(std::move(alpha)), e1_(e1), e2_(e2), slot_(slot), a_(a) {
    if (alpha_.branch() != 0)
        throw std::invalid_argument("CharacterFamily: families need the canonical (torsion-free) alpha branch");
}

HeckeCharacter CharacterFamily::specialize_classical(long m) const {
    long j1 = e1_, j2 = e2_;
    switch (slot_) {
    case Slot::A: j1 += m; break;
    case Slot::Ac: j2 += m; break;
    case Slot::AAcInv: j1 += m; j2 -= m; break;
    }
    FiniteType fin = base_.finite_type();
    if (j1 != 0) fin = fin.times(FiniteType::teichmuller_power(base_.K(), alpha_.P(), alpha_.p(), -j1));
    if (j2 != 0) fin = fin.times(FiniteType::teichmuller_power(base_.K(), alpha_.Pbar(), alpha_.p(), -j2));
    return HeckeCharacter(base_.K(), base_.weight_a() + j1, base_.weight_b() + j2, fin, base_.branch());
}

PadicScalar CharacterFamily::specialize_eval(long m, const QuadIdeal& a) const {
    long j1 = e1_, j2 = e2_;
    switch (slot_) {
    case Slot::A: j1 += m; break;
    case Slot::Ac: j2 += m; break;
    case Slot::AAcInv: j1 += m; j2 -= m; break;
    }
    PadicHecke base_p(base_, alpha_, alpha_.prec());
    PadicScalar v = base_p.eval(a);
    if (j1 != 0) v = v * alpha_.eval(a).pow(j1);
    if (j2 != 0) v = v * alpha_.eval(a.conj(base_.K())).pow(j2);
    return v;
}

padic::LambdaSeries CharacterFamily::lambda_value(const QuadIdeal& a, int M, int D) const {
    long p = alpha_.p();
    PadicHecke base_p(base_, alpha_, alpha_.prec());
    PadicScalar c = base_p.eval(a);
    if (e1_ != 0) c = c * alpha_.eval(a).pow(e1_);
    if (e2_ != 0) c = c * alpha_.eval(a.conj(base_.K())).pow(e2_);
    PadicScalar slotval;
    switch (slot_) {
    case Slot::A: slotval = alpha_.eval(a); break;
    case Slot::Ac: slotval = alpha_.eval(a.conj(base_.K())); break;
    case Slot::AAcInv: slotval = alpha_.eval(a) / alpha_.eval(a.conj(base_.K())); break;
    }
    return padic::LambdaSeries::constant(p, M, D, c) * padic::one_unit_to_lambda(p, M, D, slotval);
}

CharacterFamily build_xi_family(const HeckeCharacter& xi_a, long a, long k, const PadicAlpha& alpha) {
    if (xi_a.weight_a() != a - 1 || xi_a.weight_b() != -a + k + 1)
        throw std::invalid_argument("build_xi_family: xi_a must have weight (a-1, -a+k+1)");
    return CharacterFamily(xi_a, alpha, -a, a, CharacterFamily::Slot::AAcInv, mod_pos(a, alpha.p() - 1));
}

CharacterFamily build_psi_family(const HeckeCharacter& psi, long a, const PadicAlpha& alpha) {
    if (!psi.is_finite_order()) throw std::invalid_argument("build_psi_family: psi must be finite order");
    return CharacterFamily(psi, alpha, -1, 0, CharacterFamily::Slot::A, mod_pos(a, alpha.p() - 1));
}

CharacterFamily build_psi_rho_family(const HeckeCharacter& psi, long a, const PadicAlpha& alpha) {
    if (!psi.is_finite_order()) throw std::invalid_argument("build_psi_rho_family: psi must be finite order");
    // Psi^rho = psi^rho (omega^{a-1} o N) (alpha^c)^{-1} A^c
    const auto& K = psi.K();
    FiniteType omN = FiniteType::teichmuller_power(K, alpha.P(), alpha.p(), a - 1)
                         .times(FiniteType::teichmuller_power(K, alpha.Pbar(), alpha.p(), a - 1));
    HeckeCharacter base = psi.conj_rho() * HeckeCharacter(K, 0, 0, omN, psi.branch());
    return CharacterFamily(base, alpha, 0, -1, CharacterFamily::Slot::Ac, mod_pos(a, alpha.p() - 1));
}

PadicScalar padic_value_on_principal(const HeckeCharacter& chi, const PadicAlpha& alpha,
                                     const QuadIdeal& a, int prec) {
    const auto& K = chi.K();
    long p = alpha.p();
    auto beta = quadfield::principal_generator(K, a);
    if (!beta) throw std::invalid_argument("padic_value_on_principal: ideal is not principal");
    auto ve = chi.finite_type().value_exponent(*beta);
    if (!ve) return PadicScalar(p, prec); // zero: not coprime to the conductor
    auto [j, L] = *ve;
    if (L > 1 && (p - 1) % L != 0)
        throw std::domain_error("padic_value_on_principal: value order does not divide p-1");
    PadicScalar tors = PadicScalar::from_int(p, prec + 2, 1);
    if (L > 1) {
        long g0 = padic::least_primitive_root(p);
        tors = padic::teichmuller(p, prec + 2, (padic::u64)g0).pow(((p - 1) / L) * j);
    }
    PadicScalar ib = alpha.iota(*beta);
    PadicScalar ibc = alpha.iota(quadfield::elem_conj(*beta));
    return tors * ib.pow(chi.weight_a()) * ibc.pow(chi.weight_b());
}

padic::LambdaQExp lambda_adic_cm_form(const CharacterFamily& Psi, long B, int M, int D) {
    const auto& K = Psi.base().K();
    const auto& alpha = Psi.alpha();
    long p = alpha.p();
    QuadIdeal stab = (Psi.slot() == CharacterFamily::Slot::Ac) ? alpha.Pbar() : alpha.P();
    if (Psi.slot() == CharacterFamily::Slot::AAcInv)
        throw std::invalid_argument("lambda_adic_cm_form: anticyclotomic-slot families have no CM form");
    padic::LambdaQExp F;
    F.p = p;
    F.M = M;
    F.D = D;
    F.B = (int)B;
    // tame level d * N(prime-to-p conductor of the base)
    Int condN(1);
    for (const auto& c : Psi.base().finite_type().components())
        if (c.q != p) condN *= c.modulus.norm();
    F.tame_level = K.d * condN.get_si();
    // tame character chi_tame(n) = chi_K(n) * fin_base(n) * omega(n), mod d * (cond cap Z) * p
    {
        long rational_cond = 1;
        for (const auto& c : Psi.base().finite_type().components()) rational_cond *= c.q;
        long mod = K.d * rational_cond;
        if (mod % p != 0) mod *= p;
        F.tame_mod = mod;
        F.tame_values.assign((size_t)mod, padic::PadicScalar(p, M));
        long g0 = padic::least_primitive_root(p);
        for (long n = 0; n < mod; ++n) {
            if (std::gcd(n, mod) != 1) continue;
            auto fe = Psi.base().finite_type().rational_value_exponent(n);
            if (!fe) continue;
            auto [j, L] = *fe;
            if ((p - 1) % L != 0) throw std::logic_error("lambda_adic_cm_form: finite type does not embed");
            padic::PadicScalar z = padic::teichmuller(p, M + 4, (padic::u64)g0).pow(((p - 1) / L) * j);
            padic::PadicScalar w = padic::teichmuller(p, M + 4, (padic::u64)(((n % p) + p) % p));
            int kr = quadfield::kronecker_chi(K, n);
            padic::PadicScalar v = z * w;
            if (kr == -1) v = -v;
            F.tame_values[(size_t)n] = v;
        }
    }
    F.A.assign(B + 1, padic::LambdaSeries(p, M, D));
    for (long n = 1; n <= B; ++n) {
        padic::LambdaSeries s(p, M, D);
        for (const auto& id : quadfield::ideals_of_norm(K, n)) {
            if (stab.divides(K, id)) continue;
            // base character vanishes on ideals meeting its conductor
            bool skip = false;
            for (const auto& c : Psi.base().finite_type().components())
                if (c.modulus.divides(K, id)) { skip = true; break; }
            if (skip) continue;
            s = s + Psi.lambda_value(id, M, D);
        }
        F.A[n] = s;
    }
    return F;
}

PhiPsiEta build_phi_psi(const HeckeCharacter& xi_a, long a, long k, long lambda, long c_lambda,
                        const FiniteType& nu, const PadicAlpha& alpha) {
    const auto& K = xi_a.K();
    long p = alpha.p();
    long d = K.d;
    auto fail = [](const std::string& clause) {
        throw std::invalid_argument("build_phi_psi hypothesis violated: " + clause);
    };
    if (xi_a.weight_a() != a - 1 || xi_a.weight_b() != -a + k + 1) fail("xi_a has weight (a-1, -a+k+1)");
    if ((a - 1) % 2 != 0 || k % 2 != 0) fail("a-1 = k = 0 mod 2");
    if (d == 3 && (a - 1) % 6 != 0) fail("d = 3 requires a-1 = 0 mod 6");
    if (quadfield::factor_rational_prime(K, lambda).type != quadfield::SplitType::inert)
        fail("lambda inert in K");
    if (lambda == 2 || lambda == p || d % lambda == 0) fail("lambda coprime to 2pd");
    Int c_norm = xi_a.conductor().min_rational();
    if (gcd(c_norm, Int(lambda)) != 1) fail("lambda coprime to c");
    if (gcd(c_norm, Int(p)) != 1 || gcd(c_norm, Int(d)) != 1) fail("c coprime to pd");
    if (!xi_a.central_character_trivial()) fail("xi_a has trivial central character");
    if (c_lambda != 1) fail("c_lambda = 1 (higher lambda-power conductors not supported)");
    // nu trivial on (Z/lambda)^x and units
    for (long n = 1; n < lambda; ++n) {
        auto ve = nu.rational_value_exponent(n);
        if (!ve || ve->first != 0) fail("nu trivial on (Z/lambda^{c_lambda})^x");
    }
    if (!nu.trivial_on_units()) fail("nu trivial on O_K^x");

    PhiPsiEta out;
    out.a = a;
    out.k = k;
    out.lambda = lambda;
    out.c_lambda = c_lambda;

    FiniteType phi_fin = FiniteType::teichmuller_power(K, alpha.P(), p, a - k - 1)
                             .times(xi_a.finite_type())
                             .times(nu.inverse());
    out.phi = HeckeCharacter(K, 0, 0, phi_fin, xi_a.branch());

    FiniteType psi_fin = FiniteType::teichmuller_power(K, alpha.P(), p, a - 1).times(nu);
    out.psi = HeckeCharacter(K, 0, 0, psi_fin, xi_a.branch());

    FiniteType eta_fin = xi_a.finite_type().inverse().times(nu.power(2));
    out.eta = HeckeCharacter(K, k, 0, eta_fin, xi_a.branch());

    out.Phi = build_psi_family(out.phi, mod_pos(a - k, p - 1), alpha);
    out.Psi = build_psi_family(out.psi, mod_pos(a, p - 1), alpha);
    out.Psi_rho = build_psi_rho_family(out.psi, mod_pos(a, p - 1), alpha);
    return out;
}

} // namespace padiclf::heckechar

#include "padiclf/padic.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace padiclf::padic {

u64 pow_mod(u64 base, u64 exp, u64 mod) {
    unsigned __int128 acc = 1, b = base % mod;
    while (exp) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return (u64)acc;
}

u64 inv_mod(u64 a, u64 mod) {
    long long t = 0, newt = 1;
    long long r = (long long)mod, newr = (long long)(a % mod);
    while (newr != 0) {
        long long q = r / newr;
        t -= q * newt; std::swap(t, newt);
        r -= q * newr; std::swap(r, newr);
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    if (t < 0) t += (long long)mod;
    return (u64)t;
}

u64 p_power(long p, int M) {
    u64 r = 1;
    for (int i = 0; i < M; ++i) {
        if (r > (u64(1) << 63) / (u64)p) throw std::overflow_error("p^M exceeds 2^63");
        r *= (u64)p;
    }
    return r;
}

static u64 mul_mod(u64 a, u64 b, u64 mod) { return (u64)((unsigned __int128)a * b % mod); }

int PadicScalar::max_prec(long p) {
    int M = 0;
    u64 r = 1;
    while (r <= (u64(1) << 62) / (u64)p) {
        r *= (u64)p;
        ++M;
    }
    return M;
}

PadicScalar::PadicScalar(long p, int M) : p_(p), M_(std::min(M, p ? max_prec(p) : M)) {}

void PadicScalar::normalize() {
    // invariant: u_ == 0 (and not exact zero) encodes O(p^{v_}) with M_ = 0
    if (is_exact_zero()) { u_ = 0; M_ = 0; return; }
    if (u_ == 0) { v_ += M_; M_ = 0; return; }
    while (u_ % (u64)p_ == 0 && M_ > 0) {
        u_ /= (u64)p_;
        ++v_;
        --M_;
    }
    if (M_ == 0) { u_ = 0; }
}

PadicScalar PadicScalar::from_int(long p, int M, const Int& n) {
    M = std::min(M, max_prec(p));
    PadicScalar r(p, M);
    if (n == 0) return r;
    Int m = n;
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), (unsigned long)p)) { m /= p; ++v; }
    Int pm(p_power(p, M));
    Int res = ((m % pm) + pm) % pm;
    r.v_ = v;
    r.u_ = res.get_ui();
    r.M_ = M;
    return r;
}

PadicScalar PadicScalar::from_rat(long p, int M, const Rat& r) {
    PadicScalar num = from_int(p, M, r.get_num());
    PadicScalar den = from_int(p, M, r.get_den());
    return num / den;
}

PadicScalar PadicScalar::unit(long p, int M, u64 u, long v) {
    M = std::min(M, max_prec(p));
    PadicScalar r(p, M);
    r.v_ = v;
    r.u_ = (M > 0) ? u % p_power(p, M) : 0;
    r.M_ = M;
    r.normalize();
    return r;
}

u64 PadicScalar::residue(int j) const {
    if (is_exact_zero()) return 0;
    u64 pj = p_power(p_, j);
    if (u_ == 0) {
        if (v_ < j) throw std::domain_error("PadicScalar::residue: insufficient precision");
        return 0;
    }
    if (v_ < 0) throw std::domain_error("PadicScalar::residue: negative valuation");
    if (v_ + M_ < j) throw std::domain_error("PadicScalar::residue: insufficient precision");
    if (v_ >= j) return 0;
    return mul_mod(u_ % pj, p_power(p_, (int)v_) % pj, pj);
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    long p = a.p_;
    long Aa = (a.u_ == 0) ? a.v_ : a.v_ + a.M_;
    long Ab = (b.u_ == 0) ? b.v_ : b.v_ + b.M_;
    long A = std::min(Aa, Ab);
    long v = std::min(a.v_, b.v_);
    if (A <= v) {
        PadicScalar r(p, 0);
        r.v_ = A; r.u_ = 0; r.M_ = 0;
        return r;
    }
    int Mr = (int)(A - v);
    u64 pm = p_power(p, Mr);
    u64 s = 0;
    if (a.u_ != 0 && a.v_ - v < Mr) s = mul_mod(a.u_ % pm, p_power(p, (int)(a.v_ - v)) % pm, pm);
    if (b.u_ != 0 && b.v_ - v < Mr) s = (s + mul_mod(b.u_ % pm, p_power(p, (int)(b.v_ - v)) % pm, pm)) % pm;
    PadicScalar r(p, Mr);
    r.v_ = v; r.u_ = s; r.M_ = Mr;
    r.normalize();
    return r;
}

PadicScalar PadicScalar::operator-() const {
    PadicScalar r = *this;
    if (r.is_exact_zero() || r.u_ == 0) return r;
    u64 pm = p_power(p_, M_);
    r.u_ = (pm - u_) % pm;
    return r;
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    long p = a.p_ ? a.p_ : b.p_;
    if (a.is_exact_zero() || b.is_exact_zero()) return PadicScalar(p, std::max(a.M_, b.M_));
    if (a.u_ == 0 || b.u_ == 0) {
        PadicScalar r(p, 0);
        r.v_ = a.v_ + b.v_; r.u_ = 0; r.M_ = 0;
        return r;
    }
    int M = std::min(a.M_, b.M_);
    u64 pm = p_power(p, M);
    PadicScalar r(p, M);
    r.v_ = a.v_ + b.v_;
    r.u_ = mul_mod(a.u_ % pm, b.u_ % pm, pm);
    r.M_ = M;
    r.normalize();
    return r;
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
    if (b.is_exact_zero() || b.u_ == 0) throw std::domain_error("PadicScalar: division by (possible) zero");
    long p = b.p_;
    if (a.is_exact_zero()) return PadicScalar(p, a.M_);
    if (a.u_ == 0) {
        PadicScalar r(p, 0);
        r.v_ = a.v_ - b.v_; r.u_ = 0; r.M_ = 0;
        return r;
    }
    int M = std::min(a.M_, b.M_);
    u64 pm = p_power(p, M);
    PadicScalar r(p, M);
    r.v_ = a.v_ - b.v_;
    r.u_ = mul_mod(a.u_ % pm, inv_mod(b.u_ % pm, pm), pm);
    r.M_ = M;
    r.normalize();
    return r;
}

PadicScalar PadicScalar::pow(long e) const {
    if (e == 0) return from_int(p_, M_ ? M_ : 1, 1);
    if (e < 0) {
        PadicScalar one = from_int(p_, M_, 1);
        return (one / *this).pow(-e);
    }
    PadicScalar acc = from_int(p_, M_ ? M_ : 1, 1), base = *this;
    unsigned long n = (unsigned long)e;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool PadicScalar::congruent(const PadicScalar& a, const PadicScalar& b, int j) {
    return a.residue(j) == b.residue(j);
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    if (is_exact_zero()) { os << "0"; return os.str(); }
    if (u_ == 0) { os << "O(" << p_ << "^" << v_ << ")"; return os.str(); }
    os << u_ << "*" << p_ << "^" << v_ << " + O(" << p_ << "^" << (v_ + M_) << ")";
    return os.str();
}

PadicScalar teichmuller(long p, int M, u64 residue) {
    M = std::min(M, PadicScalar::max_prec(p));
    residue %= (u64)p;
    if (residue == 0) throw std::domain_error("teichmuller: residue divisible by p");
    u64 pm = p_power(p, M);
    u64 x = residue;
    for (int i = 0; i < M; ++i) x = pow_mod(x, (u64)p, pm);
    return PadicScalar::unit(p, M, x);
}

PadicScalar one_unit_part(const PadicScalar& x) {
    if (x.val() != 0) throw std::domain_error("one_unit_part: not a unit");
    PadicScalar w = teichmuller(x.p(), x.prec(), x.unit_part() % (u64)x.p());
    return x / w;
}

PadicScalar plog(const PadicScalar& x) {
    long p = x.p();
    int M = x.prec();
    if (x.val() != 0 || x.residue(1) != 1) throw std::domain_error("plog: need x in 1 + pZ_p");
    u64 pm = p_power(p, M);
    u64 t = (x.unit_part() + pm - 1) % pm;
    PadicScalar T = PadicScalar::unit(p, M, t, 0);
    PadicScalar acc(p, M), tp = T;
    int nmax = M + 2 * (M / (int)(p - 1)) + 4;
    for (int n = 1; n <= nmax; ++n) {
        PadicScalar term = tp / PadicScalar::from_int(p, M, n);
        if (n % 2 == 0) term = -term;
        acc = acc + term;
        tp = tp * T;
    }
    return acc;
}

int max_scalar_prec(long p) { return PadicScalar::max_prec(p); }

PadicScalar pexp(const PadicScalar& x) {
    long p = x.p();
    if (!x.is_exact_zero() && !x.is_zero_at_prec() && x.val() < 1)
        throw std::domain_error("pexp: need v(x) >= 1");
    // absolute precision of exp(x) equals that of x; the result is a unit
    long A;
    if (x.is_exact_zero()) A = max_scalar_prec(p);
    else if (x.is_zero_at_prec()) A = x.val();
    else A = x.val() + x.prec();
    int M = (int)std::min<long>(A, max_scalar_prec(p));
    if (M < 1) M = 1;
    PadicScalar acc = PadicScalar::from_int(p, M, 1), term = acc;
    int nmax = M + 2 * (M / (int)(p - 1)) + 4;
    for (int n = 1; n <= nmax; ++n) {
        term = term * x / PadicScalar::from_int(p, M, n);
        acc = acc + term;
        if (term.is_exact_zero() || (term.is_zero_at_prec() && term.val() >= A)) break;
    }
    return acc;
}

PadicScalar log_gamma(const PadicScalar& u) {
    long p = u.p();
    int M = u.prec();
    return plog(u) / plog(PadicScalar::from_int(p, M + 1, 1 + p));
}

PadicScalar pow_zp(const PadicScalar& u, const PadicScalar& e) {
    return pexp(e * plog(u));
}

PadicScalar one_unit_root(const PadicScalar& u, long h) {
    long p = u.p();
    if (h % p == 0) throw std::domain_error("one_unit_root: p | h");
    int M = u.prec();
    PadicScalar hinv = PadicScalar::from_int(p, M, 1) / PadicScalar::from_int(p, M, h);
    return pow_zp(u, hinv);
}

LambdaSeries::LambdaSeries(long p, int M, int D) : p_(p), M_(M), D_(D), c_(D, PadicScalar(p, M)) {
    if (D < 1) throw std::invalid_argument("LambdaSeries: D >= 1");
}

LambdaSeries LambdaSeries::constant(long p, int M, int D, const PadicScalar& c) {
    LambdaSeries r(p, M, D);
    r.c_[0] = c;
    return r;
}

LambdaSeries LambdaSeries::X(long p, int M, int D) {
    LambdaSeries r(p, M, D);
    r.c_.at(1) = PadicScalar::from_int(p, M, 1);
    return r;
}

bool LambdaSeries::is_unit() const {
    return !c_.empty() && !c_[0].is_exact_zero() && !c_[0].is_zero_at_prec() && c_[0].val() == 0;
}

LambdaSeries operator+(const LambdaSeries& a, const LambdaSeries& b) {
    LambdaSeries r = a;
    for (int i = 0; i < r.D_; ++i) r.c_[i] = r.c_[i] + b.c_[i];
    return r;
}

LambdaSeries operator-(const LambdaSeries& a, const LambdaSeries& b) {
    LambdaSeries r = a;
    for (int i = 0; i < r.D_; ++i) r.c_[i] = r.c_[i] - b.c_[i];
    return r;
}

LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b) {
    LambdaSeries r(a.p_, std::min(a.M_, b.M_), a.D_);
    for (int i = 0; i < a.D_; ++i) {
        if (a.c_[i].is_exact_zero()) continue;
        for (int j = 0; i + j < a.D_; ++j) {
            if (b.c_[j].is_exact_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
    }
    return r;
}

LambdaSeries LambdaSeries::inverse() const {
    if (!is_unit()) throw std::domain_error("LambdaSeries::inverse: non-unit");
    LambdaSeries r(p_, M_, D_);
    PadicScalar c0inv = PadicScalar::from_int(p_, M_, 1) / c_[0];
    r.c_[0] = c0inv;
    for (int n = 1; n < D_; ++n) {
        PadicScalar s(p_, M_);
        for (int j = 1; j <= n; ++j) s = s + c_[j] * r.c_[n - j];
        r.c_[n] = -(c0inv * s);
    }
    return r;
}

LambdaSeries LambdaSeries::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    LambdaSeries acc = LambdaSeries::constant(p_, M_, D_, PadicScalar::from_int(p_, M_, 1));
    LambdaSeries base = *this;
    unsigned long n = (unsigned long)e;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

std::string LambdaSeries::str() const {
    std::ostringstream os;
    for (int i = 0; i < std::min(D_, 4); ++i) {
        if (i) os << " + ";
        os << "(" << c_[i].str() << ")X^" << i;
    }
    if (D_ > 4) os << " + ...";
    return os.str();
}

LambdaSeries binomial_one_plus_X(long p, int M, int D, const PadicScalar& e) {
    // c_n = c_{n-1} * (e - n + 1) / n; the coefficients carry their own
    // (pessimistically tracked) precision, bounded by the precision of e.
    LambdaSeries acc(p, M, D);
    acc.coeff_ref(0) = PadicScalar::from_int(p, M, 1);
    int Mw = std::max(M + 8, e.is_exact_zero() ? M + 8 : e.prec() + 2);
    Mw = std::min(Mw, PadicScalar::max_prec(p));
    PadicScalar cn = PadicScalar::from_int(p, Mw, 1);
    for (int n = 1; n < D; ++n) {
        cn = cn * (e - PadicScalar::from_int(p, Mw, n - 1)) / PadicScalar::from_int(p, Mw, n);
        acc.coeff_ref(n) = cn;
    }
    return acc;
}

LambdaSeries one_unit_to_lambda(long p, int M, int D, const PadicScalar& u) {
    if (u.val() != 0 || u.residue(1) != 1) throw std::domain_error("one_unit_to_lambda: not a one-unit");
    PadicScalar e = log_gamma(u);
    return binomial_one_plus_X(p, M, D, e);
}

PadicScalar specialize_P_m(const LambdaSeries& F, long m) {
    long p = F.p();
    int M = F.prec();
    PadicScalar gp = PadicScalar::from_int(p, M + 2, 1 + p).pow(m);
    PadicScalar x = gp - PadicScalar::from_int(p, M + 2, 1);
    PadicScalar acc(p, M);
    for (int i = F.degree_bound() - 1; i >= 0; --i) acc = acc * x + F.coeff(i);
    return acc;
}

LambdaSeries sigma_shift(const LambdaSeries& F, long k) {
    long p = F.p();
    int M = F.prec(), D = F.degree_bound();
    PadicScalar c = PadicScalar::from_int(p, M + 2, 1 + p).pow(-k);
    PadicScalar c1 = c - PadicScalar::from_int(p, M + 2, 1);
    LambdaSeries lin = LambdaSeries::constant(p, M, D, c1) +
                       LambdaSeries::constant(p, M, D, c) * LambdaSeries::X(p, M, D);
    LambdaSeries acc(p, M, D);
    for (int i = D - 1; i >= 0; --i)
        acc = acc * lin + LambdaSeries::constant(p, M, D, F.coeff(i));
    return acc;
}

long least_primitive_root(long p) {
    long ord = p - 1;
    std::vector<long> primes;
    long m = ord;
    for (long f = 2; f * f <= m; ++f)
        if (m % f == 0) {
            primes.push_back(f);
            while (m % f == 0) m /= f;
        }
    if (m > 1) primes.push_back(m);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long f : primes)
            if (pow_mod((u64)g, (u64)(ord / f), (u64)p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("least_primitive_root: none found");
}

PadicEmbedding make_embedding(const FieldPtr& F, long p, int M, long rt_residue_mod_p) {
    PadicEmbedding E;
    E.p = p;
    E.M = M;
    E.F = F;
    if (F->L > 1) {
        if ((p - 1) % F->L != 0) throw std::domain_error("make_embedding: L does not divide p-1");
        long g = least_primitive_root(p);
        E.zeta_image = teichmuller(p, M, (u64)g).pow((p - 1) / F->L);
    } else {
        E.zeta_image = PadicScalar::from_int(p, M, 1);
    }
    if (F->s != 0) {
        long s = F->s;
        long smod = ((s % p) + p) % p;
        long r0 = ((rt_residue_mod_p % p) + p) % p;
        if ((r0 * r0) % p != smod) throw std::domain_error("make_embedding: rt residue does not square to s mod p");
        PadicScalar x = PadicScalar::from_int(p, M, r0);
        PadicScalar sc = PadicScalar::from_int(p, M, s);
        PadicScalar two = PadicScalar::from_int(p, M, 2);
        for (int i = 0; i < M + 2; ++i) x = x - (x * x - sc) / (two * x);
        E.rt_image = x;
    } else {
        E.rt_image = PadicScalar(p, M);
    }
    return E;
}

PadicScalar PadicEmbedding::operator()(const Rat& x) const { return PadicScalar::from_rat(p, M, x); }

PadicScalar PadicEmbedding::operator()(const AlgNum& x) const {
    auto eval_cyclo = [&](const Cyclo& c) {
        PadicScalar acc(p, M);
        for (int i = (int)c.coeffs().size() - 1; i >= 0; --i)
            acc = acc * zeta_image + PadicScalar::from_rat(p, M, c.coeffs()[i]);
        return acc;
    };
    PadicScalar r = eval_cyclo(x.u());
    if (!x.v().is_zero()) r = r + eval_cyclo(x.v()) * rt_image;
    return r;
}

LambdaQExp lambda_hecke_T(const LambdaQExp& F, long n) {
    LambdaQExp R = F;
    int Bp = (int)(F.B / n);
    R.B = Bp;
    R.A.assign(Bp + 1, LambdaSeries(F.p, F.M, F.D));
    for (long m = 1; m <= Bp; ++m) {
        LambdaSeries s(F.p, F.M, F.D);
        for (long e = 1; e <= std::min(m, n); ++e) {
            if (m % e || n % e) continue;
            if (std::gcd(e, F.tame_level * F.p) != 1) continue;
            long idx = (m / e) * (n / e);
            if (idx > F.B) throw std::domain_error("lambda_hecke_T: truncation shortfall; need B >= " + std::to_string(idx));
            PadicScalar ep = PadicScalar::from_int(F.p, F.M + 4, e);
            LambdaSeries diamond = one_unit_to_lambda(F.p, F.M, F.D, one_unit_part(ep));
            PadicScalar einv = PadicScalar::from_int(F.p, F.M, 1) / PadicScalar::from_int(F.p, F.M, e);
            PadicScalar chi = F.tame_at(e);
            if (chi.is_exact_zero() || chi.is_zero_at_prec()) continue;
            s = s + diamond * LambdaSeries::constant(F.p, F.M, F.D, chi * einv) * F.A[idx];
        }
        R.A[m] = s;
    }
    return R;
}

LambdaQExp lambda_qshift(const LambdaQExp& F, long M) {
    LambdaQExp R = F;
    R.A.assign(F.B + 1, LambdaSeries(F.p, F.M, F.D));
    for (long n = 0; n * M <= F.B; ++n) R.A[n * M] = F.A[n];
    R.tame_level = F.tame_level * M;
    return R;
}

LambdaQExp lambda_shift_multiply(const std::vector<PadicScalar>& f, long f_level,
                                 const LambdaQExp& F, long k) {
    LambdaQExp R = F;
    R.tame_level = std::lcm(F.tame_level, f_level);
    R.A.assign(F.B + 1, LambdaSeries(F.p, F.M, F.D));
    std::vector<LambdaSeries> shifted(F.B + 1, LambdaSeries(F.p, F.M, F.D));
    for (int n = 0; n <= F.B; ++n) shifted[n] = sigma_shift(F.A[n], k);
    for (int i = 0; i < (int)f.size() && i <= F.B; ++i) {
        if (f[i].is_exact_zero()) continue;
        LambdaSeries fi = LambdaSeries::constant(F.p, F.M, F.D, f[i]);
        for (int n = 0; i + n <= F.B; ++n) R.A[i + n] = R.A[i + n] + fi * shifted[n];
    }
    return R;
}

std::vector<PadicScalar> specialize_qexp(const LambdaQExp& F, long m) {
    std::vector<PadicScalar> out(F.B + 1, PadicScalar(F.p, F.M));
    for (int n = 0; n <= F.B; ++n) out[n] = specialize_P_m(F.A[n], m);
    return out;
}

} // namespace padiclf::padic

#include "padiclf/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace padiclf {

namespace {

// Exact division of polynomials over Q; remainder must vanish.
std::vector<Rat> poly_divexact(std::vector<Rat> num, const std::vector<Rat>& den) {
    long dn = (long)num.size() - 1, dd = (long)den.size() - 1;
    std::vector<Rat> q(dn - dd + 1, Rat(0));
    for (long i = dn; i >= dd; --i) {
        Rat c = num[i] / den[dd];
        q[i - dd] = c;
        if (c != 0)
            for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (auto& r : num)
        if (r != 0) throw std::logic_error("poly_divexact: nonzero remainder");
    return q;
}

std::vector<Rat> cyclotomic_poly(long L) {
    // x^L - 1 divided by Phi_d for all proper divisors d of L.
    std::vector<Rat> p(L + 1, Rat(0));
    p[0] = -1; p[L] = 1;
    for (long d = 1; d < L; ++d) {
        if (L % d) continue;
        std::vector<Rat> phid = cyclotomic_poly(d);
        p = poly_divexact(std::move(p), phid);
    }
    return p;
}

} // namespace

std::shared_ptr<const NumberField> NumberField::get(long L, long s) {
    static std::map<std::pair<long, long>, std::shared_ptr<const NumberField>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(L, s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    if (L < 1) throw std::invalid_argument("NumberField: L must be >= 1");
    // keep Q(zeta_L)(rt) a field: for s = -d (d = 3 mod 4 squarefree), sqrt(s)
    // already lies in Q(zeta_L) when d | L
    if (s < 0 && (-s) % 4 == 3 && L % (-s) == 0)
        throw std::invalid_argument("NumberField: sqrt(" + std::to_string(s) +
                                    ") is already cyclotomic at L = " + std::to_string(L) +
                                    "; the quadratic extension degenerates");
    auto F = std::make_shared<NumberField>();
    F->L = L;
    F->s = s;
    F->phi = cyclotomic_poly(L);
    F->deg = (long)F->phi.size() - 1;
    // Tables x^j mod Phi for j = deg .. 2deg-2 (products of reduced elements
    // have degree at most 2deg-2).
    long deg = F->deg;
    long jmax = std::max(2 * deg - 2, L - 1);
    std::vector<Rat> cur(F->phi.begin(), F->phi.end() - 1);
    for (auto& c : cur) c = -c; // x^deg = -(phi - x^deg)
    for (long j = deg; j <= jmax; ++j) {
        F->xpow.push_back(cur);
        // multiply cur by x, reduce
        std::vector<Rat> nxt(deg, Rat(0));
        for (long i = 0; i + 1 < deg; ++i) nxt[i + 1] = cur[i];
        if (cur[deg - 1] != 0)
            for (long i = 0; i < deg; ++i) nxt[i] += cur[deg - 1] * F->xpow[0][i];
        cur = std::move(nxt);
    }
    cache[key] = F;
    return F;
}

void Cyclo::resize() { c_.resize(F_->deg, Rat(0)); }

void Cyclo::reduce() {
    long deg = F_->deg;
    if ((long)c_.size() <= deg) { resize(); return; }
    std::vector<Rat> out(deg, Rat(0));
    for (long i = 0; i < (long)c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (i < deg) out[i] += c_[i];
        else {
            if (i - deg >= (long)F_->xpow.size()) throw std::logic_error("Cyclo::reduce: degree too high");
            const auto& row = F_->xpow[i - deg];
            for (long j = 0; j < deg; ++j) out[j] += c_[i] * row[j];
        }
    }
    c_ = std::move(out);
}

Cyclo Cyclo::root_of_unity(const FieldPtr& F, long j) {
    j %= F->L;
    if (j < 0) j += F->L;
    std::vector<Rat> c(j + 1, Rat(0));
    c[j] = 1;
    return Cyclo(F, std::move(c));
}

bool Cyclo::is_zero() const {
    for (const auto& r : c_)
        if (r != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    Cyclo r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    Cyclo r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    long deg = a.F_->deg;
    std::vector<Rat> prod(2 * deg - 1, Rat(0));
    for (long i = 0; i < deg; ++i) {
        if (a.c_[i] == 0) continue;
        for (long j = 0; j < deg; ++j)
            if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    return Cyclo(a.F_, std::move(prod));
}

bool operator==(const Cyclo& a, const Cyclo& b) { return (a - b).is_zero(); }

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("Cyclo::inverse of zero");
    // Extended Euclid in Q[x]: find u with u*this + w*Phi = gcd = const.
    std::vector<Rat> r0(F_->phi), r1(c_);
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)}; // coefficients on `this`
    auto degof = [](const std::vector<Rat>& p) { return (long)p.size() - 1; };
    while (degof(r1) > 0) {
        // divide r0 by r1
        std::vector<Rat> q(std::max<long>(degof(r0) - degof(r1) + 1, 1), Rat(0));
        std::vector<Rat> rem = r0;
        for (long i = degof(rem); i >= degof(r1); --i) {
            if (rem[i] == 0) continue;
            Rat c = rem[i] / r1.back();
            q[i - degof(r1)] = c;
            for (long j = 0; j <= degof(r1); ++j) rem[i - degof(r1) + j] -= c * r1[j];
        }
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        // s2 = s0 - q*s1
        std::vector<Rat> qs(q.size() + s1.size() - 1, Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0)
                for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        std::vector<Rat> s2(std::max(s0.size(), qs.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        r0 = std::move(r1); r1 = std::move(rem);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("Cyclo::inverse: zero divisor (non-primitive modulus?)");
    Rat lead = r1[0];
    for (auto& c : s1) c /= lead;
    return Cyclo(F_, std::move(s1));
}

Cyclo Cyclo::galois(long j) const {
    j %= F_->L;
    if (j < 0) j += F_->L;
    std::vector<Rat> out;
    out.assign((size_t)((F_->deg - 1) * j + 1), Rat(0));
    if (out.empty()) out.assign(1, Rat(0));
    Cyclo acc = Cyclo::zero(F_);
    for (long i = 0; i < (long)c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Cyclo term = Cyclo::root_of_unity(F_, i * j);
        for (auto& t : const_cast<std::vector<Rat>&>(term.c_)) t *= c_[i];
        acc = acc + term;
    }
    return acc;
}

Cplx Cyclo::embed_complex() const {
    Real two_pi = Real(2L) * Real::pi();
    Cplx zeta = exp(Cplx(Real(0L), two_pi / Real((long)F_->L)));
    Cplx acc(Real(0L), Real(0L)), zp(Real(1L), Real(0L));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) acc += Cplx(Real(c_[i])) * zp;
        zp = zp * zeta;
    }
    return acc;
}

AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    // (u1 + v1 rt)(u2 + v2 rt) = u1u2 + s v1v2 + (u1v2 + v1u2) rt
    const auto& F = a.field();
    Cyclo svv = a.v_ * b.v_;
    if (F->s != 0) {
        Cyclo sc(F, Rat(F->s));
        svv = svv * sc;
    } else if (!svv.is_zero()) {
        throw std::logic_error("AlgNum: rt used in field with s = 0");
    }
    return {a.u_ * b.u_ + svv, a.u_ * b.v_ + a.v_ * b.u_};
}

AlgNum AlgNum::inverse() const {
    const auto& F = field();
    // (u + v rt)^{-1} = (u - v rt) / (u^2 - s v^2)
    Cyclo den = u_ * u_;
    if (F->s != 0) den = den - v_ * v_ * Cyclo(F, Rat(F->s));
    Cyclo deninv = den.inverse();
    return {u_ * deninv, (-v_) * deninv};
}

AlgNum AlgNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    AlgNum acc = AlgNum::one(field());
    AlgNum base = *this;
    unsigned long n = (unsigned long)e;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

AlgNum AlgNum::conj_rho() const {
    Cyclo uu = u_.galois(-1), vv = v_.galois(-1);
    if (field()->s < 0) vv = -vv;
    return {std::move(uu), std::move(vv)};
}

Cplx AlgNum::embed_complex() const {
    Cplx uc = u_.embed_complex();
    if (v_.is_zero()) return uc;
    Cplx vc = v_.embed_complex();
    long s = field()->s;
    Cplx rt = (s >= 0) ? Cplx(sqrt(Real((long)s))) : Cplx(Real(0L), sqrt(Real(-(long)s)));
    return uc + vc * rt;
}

std::string AlgNum::str() const {
    std::ostringstream os;
    auto put = [&](const Cyclo& c) {
        os << "[";
        for (size_t i = 0; i < c.coeffs().size(); ++i) {
            if (i) os << ",";
            os << c.coeffs()[i];
        }
        os << "]";
    };
    put(u_);
    if (!v_.is_zero()) {
        os << " + ";
        put(v_);
        os << "*rt(" << field()->s << ")";
    }
    return os.str();
}

} // namespace padiclf

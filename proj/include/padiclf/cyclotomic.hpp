#pragma once

#include <gmpxx.h>
#include <memory>
#include <vector>
#include <string>

#include "padiclf/real.hpp"

namespace padiclf {

using Rat = mpq_class;
using Int = mpz_class;

// The coefficient field for exact character and q-expansion values:
// Q(zeta_L)(sqrt(s)), a cyclotomic field with one square root adjoined.
// s = 0 means no square root (plain cyclotomic); L = 1 gives Q or Q(sqrt s).
struct NumberField {
    long L = 1;       // root-of-unity order
    long s = 0;       // rt^2 = s (s squarefree, nonzero when present)
    std::vector<Rat> phi;          // cyclotomic polynomial Phi_L, monic, degree = deg
    std::vector<std::vector<Rat>> xpow; // x^j reduced mod Phi_L for j = deg .. 2deg-2
    long deg = 1;

    static std::shared_ptr<const NumberField> get(long L, long s);
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q[x]/Phi_L(x); dense rational coefficients.
class Cyclo {
public:
    Cyclo() = default;
    Cyclo(FieldPtr F, Rat c) : F_(std::move(F)), c_(1, std::move(c)) { resize(); }
    Cyclo(FieldPtr F, std::vector<Rat> c) : F_(std::move(F)), c_(std::move(c)) { reduce(); }

    static Cyclo zero(const FieldPtr& F) { return Cyclo(F, Rat(0)); }
    static Cyclo one(const FieldPtr& F) { return Cyclo(F, Rat(1)); }
    // zeta_L^j
    static Cyclo root_of_unity(const FieldPtr& F, long j);

    const FieldPtr& field() const { return F_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_part() const { return c_.empty() ? Rat(0) : c_[0]; }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    Cyclo operator-() const;
    friend bool operator==(const Cyclo& a, const Cyclo& b);

    Cyclo inverse() const; // extended gcd with Phi_L
    Cyclo galois(long j) const; // x -> x^j (gcd(j, L) = 1)

    Cplx embed_complex() const;

private:
    FieldPtr F_;
    std::vector<Rat> c_;
    void resize();
    void reduce(); // reduce degrees >= deg via xpow tables
};

// u + v*rt with rt^2 = s.
class AlgNum {
public:
    AlgNum() = default;
    AlgNum(Cyclo u, Cyclo v) : u_(std::move(u)), v_(std::move(v)) {}
    AlgNum(FieldPtr F, Rat c) : u_(F, std::move(c)), v_(Cyclo::zero(F)) {}

    static AlgNum zero(const FieldPtr& F) { return AlgNum(F, Rat(0)); }
    static AlgNum one(const FieldPtr& F) { return AlgNum(F, Rat(1)); }
    static AlgNum sqrt_s(const FieldPtr& F) { return AlgNum(Cyclo::zero(F), Cyclo::one(F)); }
    static AlgNum root_of_unity(const FieldPtr& F, long j) {
        return AlgNum(Cyclo::root_of_unity(F, j), Cyclo::zero(F));
    }

    const FieldPtr& field() const { return u_.field(); }
    const Cyclo& u() const { return u_; }
    const Cyclo& v() const { return v_; }

    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
    bool is_rational() const { return v_.is_zero() && u_.is_rational(); }
    Rat rational_part() const { return u_.rational_part(); }

    friend AlgNum operator+(const AlgNum& a, const AlgNum& b) { return {a.u_ + b.u_, a.v_ + b.v_}; }
    friend AlgNum operator-(const AlgNum& a, const AlgNum& b) { return {a.u_ - b.u_, a.v_ - b.v_}; }
    friend AlgNum operator*(const AlgNum& a, const AlgNum& b);
    AlgNum operator-() const { return {-u_, -v_}; }
    friend bool operator==(const AlgNum& a, const AlgNum& b) { return a.u_ == b.u_ && a.v_ == b.v_; }
    friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

    AlgNum inverse() const;
    AlgNum pow(long e) const;

    // Complex conjugation: zeta -> zeta^{-1}, rt -> -rt when s < 0 (rt is i*sqrt|s|),
    // rt -> rt when s > 0 (rt real).
    AlgNum conj_rho() const;

    Cplx embed_complex() const;

    std::string str() const;

private:
    Cyclo u_, v_;
};

} // namespace padiclf

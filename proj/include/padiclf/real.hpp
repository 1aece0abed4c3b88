#pragma once

#include <mpfr.h>
#include <gmpxx.h>
#include <string>
#include <iosfwd>

namespace padiclf {

// Arbitrary-precision real, RAII over mpfr_t. Precision is per-value, in bits;
// binary operations take the max precision of their operands.
class Real {
public:
    Real() { mpfr_init2(x_, default_prec()); mpfr_set_zero(x_, 1); }
    static Real with_prec(mpfr_prec_t prec) {
        Real r;
        mpfr_set_prec(r.x_, prec);
        mpfr_set_zero(r.x_, 1);
        return r;
    }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, 2); mpfr_swap(x_, o.x_); }
    Real(double d) { mpfr_init2(x_, default_prec()); mpfr_set_d(x_, d, MPFR_RNDN); }
    Real(long n) { mpfr_init2(x_, default_prec()); mpfr_set_si(x_, n, MPFR_RNDN); }
    Real(int n) : Real(static_cast<long>(n)) {}
    Real(const mpz_class& z) { mpfr_init2(x_, default_prec()); mpfr_set_z(x_, z.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& q) { mpfr_init2(x_, default_prec()); mpfr_set_q(x_, q.get_mpq_t(), MPFR_RNDN); }
    ~Real() { mpfr_clear(x_); }

    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }

    // Default working precision for newly constructed values (bits).
    static mpfr_prec_t& default_prec();
    static void set_default_decimal_digits(int digits);

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    std::string str(int digits = 20) const;

    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }

    friend Real operator+(const Real& a, const Real& b) { Real r = with_prec(std::max(a.prec(), b.prec())); mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r = with_prec(std::max(a.prec(), b.prec())); mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r = with_prec(std::max(a.prec(), b.prec())); mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r = with_prec(std::max(a.prec(), b.prec())); mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    Real operator-() const { Real r = with_prec(prec()); mpfr_neg(r.x_, x_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.x_, b.x_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.x_, b.x_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.x_, b.x_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.x_, b.x_); }

    friend Real abs(const Real& a) { Real r = with_prec(a.prec()); mpfr_abs(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real sqrt(const Real& a) { Real r = with_prec(a.prec()); mpfr_sqrt(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real exp(const Real& a) { Real r = with_prec(a.prec()); mpfr_exp(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real log(const Real& a) { Real r = with_prec(a.prec()); mpfr_log(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real sin(const Real& a) { Real r = with_prec(a.prec()); mpfr_sin(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real cos(const Real& a) { Real r = with_prec(a.prec()); mpfr_cos(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real pow_si(const Real& a, long e) { Real r = with_prec(a.prec()); mpfr_pow_si(r.x_, a.x_, e, MPFR_RNDN); return r; }
    friend Real atan2r(const Real& y, const Real& x) { Real r = with_prec(std::max(y.prec(), x.prec())); mpfr_atan2(r.x_, y.x_, x.x_, MPFR_RNDN); return r; }

    static Real pi(mpfr_prec_t prec = 0);

    friend std::ostream& operator<<(std::ostream& os, const Real& r);

private:
    mpfr_t x_;
};

// Complex numbers over Real.
struct Cplx {
    Real re, im;

    Cplx() = default;
    Cplx(Real r) : re(std::move(r)), im(0L) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(double r) : re(r), im(0.0) {}
    Cplx(double r, double i) : re(r), im(i) {}

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cplx operator-() const { return {-re, -im}; }
    Cplx& operator+=(const Cplx& b) { re += b.re; im += b.im; return *this; }
    Cplx& operator-=(const Cplx& b) { re -= b.re; im -= b.im; return *this; }
    Cplx& operator*=(const Cplx& b) { *this = *this * b; return *this; }

    friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
    friend Real norm(const Cplx& a) { return a.re * a.re + a.im * a.im; }
    friend Real abs(const Cplx& a) { return sqrt(norm(a)); }
    // e^{x+iy} = e^x (cos y + i sin y)
    friend Cplx exp(const Cplx& a) {
        Real m = exp(a.re);
        return {m * cos(a.im), m * sin(a.im)};
    }
    friend Cplx pow_si(const Cplx& a, long e);
    // principal branch
    friend Cplx csqrt(const Cplx& a) {
        Real r = abs(a);
        Real theta = atan2r(a.im, a.re);
        Real half(0.5);
        Real m = sqrt(r);
        return {m * cos(half * theta), m * sin(half * theta)};
    }

    std::string str(int digits = 20) const;
};

} // namespace padiclf

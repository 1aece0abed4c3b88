#include "padiclf/real.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace padiclf {

mpfr_prec_t& Real::default_prec() {
    static mpfr_prec_t prec = 200; // ~60 decimal digits
    return prec;
}

void Real::set_default_decimal_digits(int digits) {
    default_prec() = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219281)) + 16;
}

std::string Real::str(int digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, x_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real Real::pi(mpfr_prec_t prec) {
    Real r = Real::with_prec(prec ? prec : default_prec());
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

std::ostream& operator<<(std::ostream& os, const Real& r) { return os << r.str(); }

Cplx pow_si(const Cplx& a, long e) {
    if (e == 0) return Cplx(Real(1L), Real(0L));
    bool inv = e < 0;
    unsigned long n = inv ? -(unsigned long)e : (unsigned long)e;
    Cplx base = a, acc(Real(1L), Real(0L));
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (inv) acc = Cplx(Real(1L), Real(0L)) / acc;
    return acc;
}

std::string Cplx::str(int digits) const {
    std::ostringstream os;
    os << re.str(digits) << (im.sign() < 0 ? " - " : " + ") << abs(im).str(digits) << "i";
    return os.str();
}

} // namespace padiclf

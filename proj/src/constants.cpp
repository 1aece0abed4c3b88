#include "padiclf/constants.hpp"

#include <numeric>
#include <sstream>

namespace padiclf::padic {

namespace {

Int factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument (parameter range violated)");
    Int f(1);
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

Rat int_pow(const Rat& b, long e) {
    Rat v(1);
    Rat x = (e < 0) ? Rat(1) / b : b;
    long n = std::abs(e);
    for (long i = 0; i < n; ++i) v *= x;
    return v;
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    for (long q = 2; q * q <= n || n > 1; ++q) {
        if (q * q > n) q = n;
        if (n % q) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    return out;
}

Rat one_plus_inv_prod(long n, int expo) {
    Rat v(1);
    for (long q : prime_divisors(n)) v *= int_pow(Rat(q + 1, q), expo);
    return v;
}

} // namespace

SymbolicScalar& SymbolicScalar::times_padic(const PadicScalar& v) {
    if (!has_padic) {
        padic_part = v;
        has_padic = true;
    } else {
        padic_part = padic_part * v;
    }
    return *this;
}

SymbolicScalar& SymbolicScalar::times(const SymbolicScalar& o) {
    rational *= o.rational;
    pi_exp += o.pi_exp;
    sqrt_d_exp += o.sqrt_d_exp;
    omega_inf_exp += o.omega_inf_exp;
    omega_p_exp += o.omega_p_exp;
    for (const auto& [k, v] : o.slots) slots[k] += v;
    if (o.has_padic) times_padic(o.padic_part);
    return *this;
}

SymbolicScalar& SymbolicScalar::inv() {
    rational = Rat(1) / rational;
    pi_exp = -pi_exp;
    sqrt_d_exp = -sqrt_d_exp;
    omega_inf_exp = -omega_inf_exp;
    omega_p_exp = -omega_p_exp;
    for (auto& [k, v] : slots) v = -v;
    if (has_padic) padic_part = PadicScalar::from_int(padic_part.p(), padic_part.prec(), 1) / padic_part;
    return *this;
}

SymbolicScalar& SymbolicScalar::fold_sqrt_d(long d) {
    while (sqrt_d_exp >= 2) {
        rational *= d;
        sqrt_d_exp -= 2;
    }
    while (sqrt_d_exp <= -2) {
        rational /= d;
        sqrt_d_exp += 2;
    }
    return *this;
}

std::string SymbolicScalar::str() const {
    std::ostringstream os;
    os << rational;
    if (pi_exp) os << " * pi^" << pi_exp;
    if (sqrt_d_exp) os << " * sqrt(d)^" << sqrt_d_exp;
    if (omega_inf_exp) os << " * Omega_inf^" << omega_inf_exp;
    if (omega_p_exp) os << " * Omega_p^" << omega_p_exp;
    for (const auto& [k, v] : slots)
        if (v) os << " * [" << k << "]^" << v;
    if (has_padic) os << " * (" << padic_part.str() << ")";
    return os.str();
}

SymbolicScalar explicit_ichino_scalar(const LedgerParams& P, long m) {
    if (m <= P.k || m < 2) throw std::invalid_argument("explicit_ichino_scalar: need m > k");
    long N = P.N0;
    for (long i = 0; i < P.r0; ++i) N *= P.p;
    SymbolicScalar S;
    S.rational = Rat(9) * Rat(factorial(m - 2)) * Rat(factorial(P.k - 1)) * Rat(factorial(m - P.k - 1));
    S.rational /= int_pow(Rat(2), 4 * m - 2);
    S.rational /= Rat(P.d);
    S.rational /= int_pow(Rat(P.lambda), 2 * P.c_lambda);
    S.rational /= int_pow(Rat(P.c) * Rat(P.c) * Rat(N), m + 1);
    S.rational *= one_plus_inv_prod(P.c * N * P.d * P.lambda, -2);
    S.pi_exp = -(2 * m + 2);
    return S;
}

SymbolicScalar l_alg_factor(const LedgerParams& P, long m, const Rat& cond) {
    if (m <= P.k) throw std::invalid_argument("l_alg_factor: need m > k (factorial domain)");
    SymbolicScalar F;
    F.rational = Rat(P.w_K) * Rat(factorial(m - 2)) * Rat(factorial(m - P.k - 1));
    F.rational *= int_pow(cond, 2 * m - P.k + 2);
    F.rational /= int_pow(Rat(2), 2 * m - P.k - 3);
    F.pi_exp = 2 * m - P.k - 3;
    F.sqrt_d_exp = -(2 * m - P.k - 3);
    F.omega_inf_exp = -(4 * m - 2 * P.k - 4);
    return F;
}

SymbolicScalar l_alg_factor_eta(const LedgerParams& P, const Rat& cond) {
    SymbolicScalar F;
    F.rational = Rat(P.w_K) * Rat(factorial(P.k - 1));
    F.rational *= int_pow(cond, P.k + 4);
    F.rational /= int_pow(Rat(2), P.k - 1);
    F.pi_exp = P.k - 1;
    F.sqrt_d_exp = -(P.k - 1);
    F.omega_inf_exp = -(2 * P.k);
    return F;
}

SymbolicScalar constant_C1(const LedgerParams& P, long m, const PadicScalar& alpha_h) {
    SymbolicScalar C;
    long r = P.r();
    C.rational = int_pow(Rat(2), 2 * m) * Rat(P.w_K) * Rat(P.w_K) / Rat(9);
    C.rational /= int_pow(Rat(P.d), m - 3);
    C.rational *= int_pow(Rat(P.c), 4 * m + 8) * int_pow(Rat(P.N0), 2 * m + 4);
    C.rational *= int_pow(Rat(P.p), 2 * m * (r - 1));
    C.rational *= one_plus_inv_prod(P.c * P.N0 * P.d * P.lambda, 2);
    C.pi_exp = 4 * m - 2;
    if (r > 1) C.times_padic(alpha_h.pow(-2 * (r - 1)));
    return C;
}

SymbolicScalar constant_C2(const LedgerParams& P, long m) {
    // product of the two L_alg factors with the chain conductor constants:
    // cond(xi_m) = c, cond(eta) = c lambda^{2 c_lambda}
    SymbolicScalar A = l_alg_factor(P, m, Rat(P.c));
    SymbolicScalar B = l_alg_factor_eta(P, Rat(P.c) * int_pow(Rat(P.lambda), 2 * P.c_lambda));
    A.times(B);
    // the Omega powers belong to the L-value slots, not to C2 itself
    A.omega_inf_exp = 0;
    return A;
}

SymbolicScalar constant_C3(const LedgerParams& P, long m, const PadicScalar& alpha_h, const Rat& star) {
    SymbolicScalar C = constant_C1(P, m, alpha_h);
    C.times(explicit_ichino_scalar(P, m));
    C.times_rat(star);
    SymbolicScalar C2inv = constant_C2(P, m);
    C2inv.inv();
    C.times(C2inv);
    C.fold_sqrt_d(P.d);
    return C;
}

SymbolicScalar constant_C4(const LedgerParams& P, long m, const Rat& star, const PadicScalar& eta_pbar) {
    // closed form eta(Pbar)^{-r0} (*) N0^{m+3} / (2^2 lambda^{2 c_lambda (k+5)});
    // equals C3 times the removed-Euler-factor ratio (checked in tests)
    SymbolicScalar C;
    C.rational = star * int_pow(Rat(P.N0), m + 3) / (Rat(4) * int_pow(Rat(P.lambda), 2 * P.c_lambda * (P.k + 5)));
    if (P.r0 != 0) C.times_padic(eta_pbar.pow(-P.r0));
    return C;
}

LambdaSeries script_C(const LedgerParams& P, const PadicScalar& eta_pbar, int M, int D) {
    long p = P.p;
    // constant part: 2^2 lambda^{2 c_lambda (k+5)} / N0^3 * omega(N0)^{-a} * eta(Pbar)^{r0}
    PadicScalar c0 = PadicScalar::from_rat(p, M + 6, Rat(4) * int_pow(Rat(P.lambda), 2 * P.c_lambda * (P.k + 5)) /
                                                          int_pow(Rat(P.N0), 3));
    PadicScalar wN0 = teichmuller(p, M + 6, (u64)(((P.N0 % p) + p) % p));
    c0 = c0 * wN0.pow(-P.a);
    if (P.r0 != 0) c0 = c0 * eta_pbar.pow(P.r0);
    // interpolating part: <N0>^{-m} = P_m((1+X)^{-log_Gamma <N0>})
    PadicScalar n0 = PadicScalar::from_int(p, M + 6, P.N0);
    PadicScalar one_unit = one_unit_part(n0);
    PadicScalar e = log_gamma(one_unit);
    LambdaSeries interp = binomial_one_plus_X(p, M, D, -e);
    return LambdaSeries::constant(p, M, D, c0) * interp;
}

PadicScalar euler_e_p(long r0, const TripleRoots& R) {
    long p = R.alpha_h.p();
    int M = R.alpha_h.prec();
    PadicScalar one = PadicScalar::from_int(p, M, 1);
    PadicScalar pinv = one / PadicScalar::from_int(p, M, p);
    PadicScalar alpha_h_bar = R.chi_h_at_p.pow(-1) * R.beta_h; // Ramanujan: conj(alpha_h) = chibar(p) beta_h
    switch (r0 < 2 ? r0 : 2) {
    case 0:
        return (one - R.beta_g * R.alpha_f / R.alpha_h) * (one - R.beta_g * R.beta_f / R.alpha_h);
    case 1:
        return PadicScalar::from_int(p, M, p) * alpha_h_bar * (one + pinv) *
               (one - R.beta_g * R.a_f / R.alpha_h);
    default:
        return PadicScalar::from_int(p, M, p) * alpha_h_bar * (one + pinv);
    }
}

PadicScalar euler_e_p_rho(long r0, const TripleRoots& R) {
    long p = R.alpha_h.p();
    int M = R.alpha_h.prec();
    PadicScalar one = PadicScalar::from_int(p, M, 1);
    PadicScalar pinv = one / PadicScalar::from_int(p, M, p);
    // rho-side roots: alpha_{h^rho} = conj(beta_h), so conj(alpha_{h^rho}) = beta_h;
    // beta_{g^rho} = conj(alpha_g) = chibar_g(p) beta_g with chi_g = chi_h here,
    // and a_{f^rho} = a_f (trivial nebentypus of f)
    PadicScalar alpha_hr = R.chi_h_at_p.pow(-1) * R.alpha_h; // conj(beta_h)
    PadicScalar beta_gr = R.chi_h_at_p.pow(-1) * R.beta_g;   // conj(alpha_g)
    switch (r0 < 2 ? r0 : 2) {
    case 0: {
        PadicScalar t1 = one - beta_gr * R.beta_f / alpha_hr; // conj(alpha_f) = beta_f
        PadicScalar t2 = one - beta_gr * R.alpha_f / alpha_hr;
        return t1 * t2;
    }
    case 1:
        return PadicScalar::from_int(p, M, p) * R.beta_h * (one + pinv) *
               (one - beta_gr * R.a_f / alpha_hr);
    default:
        return PadicScalar::from_int(p, M, p) * R.beta_h * (one + pinv);
    }
}

PadicScalar euler_e_p_L(long r0, long k, const PadicScalar& a_p, const PadicScalar& alpha_f,
                        const PadicScalar& beta_f, const PadicScalar& xi_pbar_inv, long p, int prec) {
    PadicScalar one = PadicScalar::from_int(p, prec, 1);
    if (r0 == 0) {
        // (1 - a_p xi^{-1}(Pbar) + xi^{-2}(Pbar) p^{k-1})^2 = ((1 - alpha xi^{-1})(1 - beta xi^{-1}))^2
        PadicScalar v = (one - alpha_f * xi_pbar_inv) * (one - beta_f * xi_pbar_inv);
        return v * v;
    }
    PadicScalar base = PadicScalar::from_int(p, prec, p);
    PadicScalar half_pow = base.pow(k / 2) * xi_pbar_inv; // p^{k/2} xi_m(Pbar)^{-1}
    if (r0 == 1) {
        PadicScalar t = one - a_p * xi_pbar_inv;
        return half_pow * t * t;
    }
    return half_pow.pow(r0);
}

} // namespace padiclf::padic

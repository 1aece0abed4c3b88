#include "padiclf/localint.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace padiclf::localint {

LocalRep LocalRep::unramified(long q, C alpha) {
    LocalRep r;
    r.kind = Kind::unramified_ps;
    r.q = q;
    r.alpha = alpha;
    r.central = C(1, 0);
    return r;
}

LocalRep LocalRep::ramified_c1(long q, C mu) {
    LocalRep r;
    r.kind = Kind::ramified_ps_c1;
    r.q = q;
    r.mu = mu;
    r.central = C(1, 0); // chi(pi) = 1 by normalization
    return r;
}

LocalRep LocalRep::special_rep(long q, C twist) {
    LocalRep r;
    r.kind = Kind::special;
    r.q = q;
    r.alpha = twist;
    r.central = twist * twist;
    return r;
}

LocalRep LocalRep::supercuspidal(long q, long n, C alpha_param) {
    if (n < 2 || n % 2) throw std::invalid_argument("supercuspidal type 1: conductor must be even and >= 2");
    LocalRep r;
    r.kind = Kind::supercuspidal_type1;
    r.q = q;
    r.n = n;
    r.alpha = alpha_param;
    r.central = C(1, 0);
    return r;
}

C whittaker_value(const LocalRep& pi, long v, int i, C eps) {
    if (pi.kind != LocalRep::Kind::ramified_ps_c1)
        throw std::invalid_argument("whittaker_value: closed form implemented for conductor-1 ramified principal series");
    double q = (double)pi.q;
    double root = std::sqrt(1.0 - 1.0 / q);
    if (i == 1) {
        if (v < 0) return C(0, 0);
        // chi(y) mu(y) |y|^{1/2} (1-1/q)^{1/2}, with chi(pi) = 1
        return std::pow(pi.mu, (double)v) * std::pow(q, -0.5 * v) * root;
    }
    if (i == 0) {
        if (v < -1) return C(0, 0);
        // mu^{-1}(y pi^2) |y|^{1/2} (1-1/q)^{1/2} q^{-1/2} psi(y) eps(1/2, chi, psibar);
        // psi(y) is 1 for v >= 0 and a unit-modulus phase at v = -1, folded into
        // the token (it cancels against the conjugate-psi vector in pairings).
        return std::pow(pi.mu, -(double)(v + 2)) * std::pow(q, -0.5 * v) * root * std::pow(q, -0.5) * eps;
    }
    throw std::invalid_argument("whittaker_value: i must be 0 or 1");
}

std::vector<double> haar_weights(long q, long n) {
    double iq = 1.0 / (double)q;
    double norm = 1.0 / (1.0 + iq);
    std::vector<double> v((size_t)n + 1, 0.0);
    v[0] = norm;
    for (long i = 1; i < n; ++i) v[(size_t)i] = (1.0 - iq) * std::pow(iq, (double)i) * norm;
    v[(size_t)n] = std::pow(iq, (double)n) * norm;
    return v;
}

BruteResult rs_integral_brute(const LocalRep& pi2, const LocalRep& pi3, C s, int V, C eps) {
    if (pi2.q != pi3.q) throw std::invalid_argument("rs_integral_brute: mismatched residue characteristic");
    long q = pi2.q;
    double r = std::pow((double)q, -0.5 - s.real()) * std::abs(pi2.mu) * std::abs(pi3.mu);
    if (r >= 1.0) throw std::invalid_argument("rs_integral_brute: parameters outside the convergence range");
    auto w = haar_weights(q, 1); // w[0] at i = 0-coset, w[1] at i = 1-coset
    double lnq = std::log((double)q);
    C acc(0, 0);
    for (int i = 1; i >= 0; --i) {
        long v0 = (i == 0) ? -1 : 0;
        double weight = (i == 0) ? w[0] : w[1];
        for (long v = v0; v <= V; ++v) {
            C W2 = whittaker_value(pi2, v, i, eps);
            C W3 = whittaker_value(pi3, v, i, std::conj(eps));
            acc += C(weight) * std::exp(-(s - C(0.5, 0)) * (double)v * lnq) * W2 * W3;
        }
    }
    BruteResult out;
    out.value = acc;
    double last = std::pow(r, (double)V);
    out.tail_bound = 2.0 * last * r / (1.0 - r);
    return out;
}

C rs_integral_brute_i1(const LocalRep& pi2, const LocalRep& pi3, C s, int V) {
    long q = pi2.q;
    auto w = haar_weights(q, 1);
    double lnq = std::log((double)q);
    C acc(0, 0);
    for (long v = 0; v <= V; ++v) {
        C W2 = whittaker_value(pi2, v, 1);
        C W3 = whittaker_value(pi3, v, 1);
        acc += C(w[1]) * std::exp(-(s - C(0.5, 0)) * (double)v * lnq) * W2 * W3;
    }
    return acc;
}

C rs_integral_closed_star(const LocalRep& pi2, const LocalRep& pi3, C s) {
    // J* = (1+1/q)^{-1} (1-1/q) q^{-1/2} (xi mu nu)^{-1}(pi); collecting the two
    // geometric series leaves the inverse of (mu nu)(pi), which the brute-force
    // oracle confirms (the twisted-pair product is unaffected).
    double q = (double)pi2.q;
    C xi_inv_at_pi = std::exp(s * std::log(q)); // xi^{-1}(pi) = q^{s}
    return (1.0 / (1.0 + 1.0 / q)) * (1.0 - 1.0 / q) * std::pow(q, -0.5) * xi_inv_at_pi / (pi2.mu * pi3.mu);
}

C rs_integral_closed(const LocalRep& pi2, const LocalRep& pi3, C s) {
    double q = (double)pi2.q;
    C qs = std::exp(-(C(0.5, 0) + s) * std::log(q)); // q^{-1/2-s}
    C mn = pi2.mu * pi3.mu;
    C L = 1.0 / ((1.0 - mn * qs) * (1.0 - qs / mn));
    C zeta = 1.0 / (1.0 - std::exp(-(C(1, 0) + 2.0 * s) * std::log(q)));
    return rs_integral_closed_star(pi2, pi3, s) * L / zeta;
}

LocalRep contragredient(const LocalRep& pi) {
    LocalRep r = pi;
    switch (pi.kind) {
    case LocalRep::Kind::ramified_ps_c1: r.mu = 1.0 / pi.mu; break;
    case LocalRep::Kind::unramified_ps: r.alpha = 1.0 / pi.alpha; break;
    case LocalRep::Kind::special: r.alpha = 1.0 / pi.alpha; break;
    case LocalRep::Kind::supercuspidal_type1: break; // self-dual here
    }
    return r;
}

C ichino_via_mv(const LocalRep& pi2, const LocalRep& pi3, C s) {
    double q = (double)pi2.q;
    C Lad = 1.0 / (1.0 - 1.0 / q); // L(ad pi, 1) for conductor-1 ramified PS
    C J1 = rs_integral_closed_star(pi2, pi3, s);
    C J2 = rs_integral_closed_star(contragredient(pi2), contragredient(pi3), -s);
    return std::pow(1.0 + 1.0 / q, 2.0) * Lad * Lad * J1 * J2;
}

Rat E_q_row(const LocalRep& pi) {
    long q = pi.q;
    switch (pi.kind) {
    case LocalRep::Kind::unramified_ps:
        return Rat(1);
    case LocalRep::Kind::special:
        // L^H = (1-q^{-2})^{-1}(1+q^{-1})^{-1}; L(ad St, 1) = (1-q^{-2})^{-1}
        return Rat(q, q + 1);
    case LocalRep::Kind::ramified_ps_c1:
        // L^H = (1-q^{-2})^{-1} (level and nebentypus conductor both exactly q);
        // L(ad, 1) = (1-q^{-1})^{-1}
        return Rat(q, q + 1);
    case LocalRep::Kind::supercuspidal_type1:
        // L^H = (1+q^{-1})^{-1}; L(ad, 1) = (1+q^{-1})^{-1}
        return Rat(1);
    }
    return Rat(1);
}

Rat E_q_factor(const LocalRep& f, const LocalRep& g, const LocalRep& h) {
    return E_q_row(f) * E_q_row(g) * E_q_row(h);
}

namespace {

bool is_unram(const LocalRep& r) { return r.kind == LocalRep::Kind::unramified_ps; }

} // namespace

IchinoResult ichino_I_star(const LocalRep& pi1, const LocalRep& pi2, const LocalRep& pi3,
                           bool conductor_flag_ok) {
    IchinoResult out;
    long q = pi1.q;
    if (pi2.q != q || pi3.q != q) throw std::invalid_argument("ichino_I_star: mismatched places");
    C prod_central = pi1.central * pi2.central * pi3.central;
    if (std::abs(prod_central - C(1, 0)) > 1e-9) {
        out.resolved = false;
        out.why_unresolved = "product of central characters is not trivial";
        return out;
    }
    std::array<const LocalRep*, 3> pis = {&pi1, &pi2, &pi3};
    int n_unram = 0;
    for (auto* r : pis) n_unram += is_unram(*r) ? 1 : 0;

    auto finish = [&](const char* kind, C EI, Rat E) {
        out.resolved = true;
        out.kind = kind;
        out.EI = EI;
        out.E_q = E;
        out.I_star = EI / mpq_get_d(E.get_mpq_t());
        return out;
    };

    if (n_unram == 3) {
        out.resolved = true;
        out.kind = "all-unramified";
        out.I_star = C(1, 0);
        out.E_q = 1;
        out.EI = C(1, 0);
        return out;
    }
    if (n_unram == 2) {
        const LocalRep* ram = nullptr;
        for (auto* r : pis)
            if (!is_unram(*r)) ram = r;
        long c3 = ram->conductor();
        C EI = std::pow((double)q, -(double)c3) * std::pow(1.0 + 1.0 / q, -2.0);
        return finish("two-unramified", EI, E_q_factor(pi1, pi2, pi3));
    }
    if (n_unram == 1) {
        std::array<const LocalRep*, 2> ram{};
        int j = 0;
        const LocalRep* unram = nullptr;
        for (auto* r : pis) {
            if (is_unram(*r)) unram = r;
            else if (j < 2) ram[(size_t)j++] = r;
        }
        if (ram[0]->kind == LocalRep::Kind::ramified_ps_c1 &&
            ram[1]->kind == LocalRep::Kind::ramified_ps_c1) {
            C EI = (1.0 / (double)q) * std::pow(1.0 + 1.0 / q, -2.0);
            auto r = finish("two-half-ramified", EI, E_q_factor(pi1, pi2, pi3));
            r.I_star = C(1.0 / (double)q, 0);
            return r;
        }
        if (ram[0]->kind == LocalRep::Kind::supercuspidal_type1 &&
            ram[1]->kind == LocalRep::Kind::supercuspidal_type1) {
            if (!conductor_flag_ok) {
                out.resolved = false;
                out.why_unresolved = "caller did not assert conductor(pi x pi) = conductor(pi)";
                return out;
            }
            if (ram[0]->n != ram[1]->n) {
                out.resolved = false;
                out.why_unresolved = "supercuspidal conductors differ";
                return out;
            }
            long n = ram[0]->n;
            C star = star_supercuspidal(unram->alpha, q, n);
            C EI = std::pow((double)q, -(double)n) * std::pow(1.0 + 1.0 / q, -2.0) * star;
            return finish("two-supercuspidal", EI, E_q_factor(pi1, pi2, pi3));
        }
    }
    out.resolved = false;
    out.why_unresolved = "no closed form for this combination of local types";
    return out;
}

C star_f_lambda(C alpha, long lambda, long k, long c_lambda) {
    C r = alpha / std::pow((double)lambda, 0.5 * (double)(k - 1));
    C s1(0, 0), s2(0, 0);
    for (long i = 0; i <= c_lambda; ++i) s1 += std::pow(r, (double)(2 * i - c_lambda));
    for (long i = 0; i < c_lambda; ++i) s2 += std::pow(r, (double)(2 * i - c_lambda));
    return s1 - s2 / (double)lambda;
}

Rat star_f_lambda_exact(const Rat& ratio, long lambda, long c_lambda) {
    if (ratio == 0) throw std::invalid_argument("star_f_lambda_exact: zero ratio");
    auto rpow = [&](long e) {
        Rat v(1);
        Rat r = ratio;
        if (e < 0) { r = Rat(1) / r; e = -e; }
        for (long i = 0; i < e; ++i) v *= r;
        return v;
    };
    Rat s1(0), s2(0);
    for (long i = 0; i <= c_lambda; ++i) s1 += rpow(2 * i - c_lambda);
    for (long i = 0; i < c_lambda; ++i) s2 += rpow(2 * i - c_lambda);
    return s1 - s2 / Rat(lambda);
}

C star_supercuspidal(C alpha, long q, long n) {
    if (n < 2 || n % 2) throw std::invalid_argument("star_supercuspidal: n must be even, >= 2");
    if (std::abs(alpha - C(1, 0)) < 1e-12 || std::abs(alpha + C(1, 0)) < 1e-12)
        throw std::domain_error("star_supercuspidal: alpha = +-1 is a pole of the quotient; use star_supercuspidal_limit");
    auto p = [&](double e) { return std::pow(alpha, e); };
    double h = 0.5 * (double)n;
    C num = (p(h + 1) - p(-h - 1)) - (p(h - 1) - p(-h + 1)) / (double)q;
    C den = alpha - 1.0 / alpha;
    C b = num / den;
    return b * b;
}

double star_supercuspidal_limit(long q, long n) {
    double h = 0.5 * (double)n;
    double b = (h + 1) - (h - 1) / (double)q;
    return b * b;
}

} // namespace padiclf::localint

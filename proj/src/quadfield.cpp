#include "padiclf/quadfield.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>

namespace padiclf::quadfield {

QuadField::QuadField(long d_) : d(d_) {
    if (d <= 0 || d % 4 != 3) throw std::invalid_argument("QuadField: need d > 0, d = 3 mod 4 (odd fundamental discriminant)");
    for (long f = 2; f * f <= d; ++f)
        if (d % (f * f) == 0) throw std::invalid_argument("QuadField: d must be squarefree");
    D = (1 + d) / 4;
    w_K = (d == 3) ? 6 : 2;
}

Int elem_norm(const QuadField& K, const QuadElem& e) {
    return e.x * e.x + e.x * e.y + Int(K.D) * e.y * e.y;
}

QuadElem elem_mul(const QuadField& K, const QuadElem& a, const QuadElem& b) {
    // (x1 + y1 w)(x2 + y2 w),  w^2 = w - D
    Int yy = a.y * b.y;
    return QuadElem(a.x * b.x - Int(K.D) * yy, a.x * b.y + a.y * b.x + yy);
}

QuadElem elem_conj(const QuadElem& a) { return QuadElem(a.x + a.y, -a.y); }

QuadElem elem_pow(const QuadField& K, QuadElem a, unsigned long e) {
    QuadElem acc(1, 0);
    while (e) {
        if (e & 1) acc = elem_mul(K, acc, a);
        a = elem_mul(K, a, a);
        e >>= 1;
    }
    return acc;
}

std::vector<QuadElem> units(const QuadField& K) {
    if (K.d == 3) {
        // powers of w = primitive sixth root of unity
        std::vector<QuadElem> u;
        QuadElem z(1, 0);
        for (int i = 0; i < 6; ++i) {
            u.push_back(z);
            z = elem_mul(K, z, QuadElem(0, 1));
        }
        return u;
    }
    return {QuadElem(1, 0), QuadElem(-1, 0)};
}

QuadIdeal::QuadIdeal(const QuadField& K, Int g, Int a, Int b) : g_(std::move(g)), a_(std::move(a)), b_(std::move(b)) {
    if (g_ <= 0 || a_ <= 0) throw std::invalid_argument("QuadIdeal: need positive content and a");
    b_ = ((b_ % a_) + a_) % a_;
    Int nb = b_ * b_ + b_ + Int(K.D);
    if (nb % a_ != 0) throw std::invalid_argument("QuadIdeal: N(b + w) not divisible by a");
}

QuadIdeal QuadIdeal::unit_ideal(const QuadField&) { return QuadIdeal(); }

QuadIdeal QuadIdeal::from_generators(const QuadField& K, const std::vector<QuadElem>& gens) {
    // HNF of the 2 x 2k matrix of module generators (spanning with O_K
    // multiples so the module is an ideal is the caller's concern).
    std::vector<std::array<Int, 2>> cols; // (x, y) coordinates
    for (const auto& e : gens) {
        cols.push_back({e.x, e.y});
    }
    // gcd down the y-row
    Int g(0), xg(0);
    for (auto& c : cols) {
        if (c[1] == 0) continue;
        if (g == 0) {
            g = c[1];
            xg = c[0];
            if (g < 0) { g = -g; xg = -xg; }
            continue;
        }
        // combine: gcdext
        Int s, t, gg;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), c[1].get_mpz_t());
        Int nx = s * xg + t * c[0];
        // the two columns reduce to (nx, gg) and multiples of (.., 0)
        Int u = g / gg, v = c[1] / gg;
        Int zero_col = u * c[0] - v * xg; // y-component cancels
        g = gg; xg = nx;
        c = {zero_col, Int(0)};
    }
    Int a(0);
    for (auto& c : cols) {
        if (c[1] != 0) continue;
        if (c[0] != 0) a = (a == 0) ? abs(c[0]) : Int(gcd(a, c[0]));
    }
    if (g == 0) throw std::invalid_argument("from_generators: module of rank < 2 (zero ideal)");
    if (a == 0) throw std::invalid_argument("from_generators: module of rank < 2");
    if (xg % g != 0 || a % g != 0) throw std::logic_error("from_generators: module is not an ideal");
    Int ap = a / g, bp = xg / g;
    return QuadIdeal(K, g, ap, bp);
}

QuadIdeal QuadIdeal::principal(const QuadField& K, const QuadElem& beta) {
    if (beta.x == 0 && beta.y == 0) throw std::invalid_argument("principal: zero element");
    QuadElem bw = elem_mul(K, beta, QuadElem(0, 1));
    return from_generators(K, {beta, bw});
}

bool QuadIdeal::contains(const QuadField&, const QuadElem& e) const {
    if (e.y % g_ != 0) return false;
    Int l = e.y / g_;
    Int rem = e.x - g_ * l * b_;
    return rem % (g_ * a_) == 0;
}

bool QuadIdeal::divides(const QuadField& K, const QuadIdeal& other) const {
    // self | other <=> other subset self (Dedekind domain: to divide is to contain)
    QuadElem g1(other.g_ * other.a_, 0), g2(other.g_ * other.b_, other.g_);
    return contains(K, g1) && contains(K, g2);
}

QuadIdeal QuadIdeal::conj(const QuadField& K) const {
    return QuadIdeal(K, g_, a_, -b_ - 1);
}

std::string QuadIdeal::str() const {
    std::ostringstream os;
    os << "[" << (g_ * a_) << ", " << (g_ * b_) << " + " << g_ << "w]";
    return os.str();
}

QuadIdeal ideal_mul(const QuadField& K, const QuadIdeal& p, const QuadIdeal& q) {
    QuadElem pa(p.content() * p.a(), 0), pb(p.content() * p.b(), p.content());
    QuadElem qa(q.content() * q.a(), 0), qb(q.content() * q.b(), q.content());
    std::vector<QuadElem> gens = {
        elem_mul(K, pa, qa), elem_mul(K, pa, qb), elem_mul(K, pb, qa), elem_mul(K, pb, qb)};
    return QuadIdeal::from_generators(K, gens);
}

QuadIdeal ideal_pow(const QuadField& K, const QuadIdeal& p, unsigned long e) {
    QuadIdeal acc = QuadIdeal::unit_ideal(K);
    QuadIdeal base = p;
    while (e) {
        if (e & 1) acc = ideal_mul(K, acc, base);
        base = ideal_mul(K, base, base);
        e >>= 1;
    }
    return acc;
}

Int ideal_norm(const QuadIdeal& p) { return p.norm(); }

long ord_at(const QuadField& K, const QuadIdeal& a, const QuadIdeal& prime) {
    long ord = 0;
    QuadIdeal pw = prime;
    while (pw.divides(K, a)) {
        ++ord;
        pw = ideal_mul(K, pw, prime);
    }
    return ord;
}

namespace {

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

// roots of x^2 + x + D mod q (q odd prime)
std::vector<long> local_roots(const QuadField& K, long q) {
    std::vector<long> roots;
    for (long b = 0; b < q; ++b)
        if ((b * b + b + K.D) % q == 0) roots.push_back(b);
    return roots;
}

} // namespace

int kronecker_chi(const QuadField& K, long m) {
    Int disc(-K.d), mm(m);
    return mpz_kronecker(disc.get_mpz_t(), mm.get_mpz_t());
}

SplittingData factor_rational_prime(const QuadField& K, long q) {
    if (!is_prime_long(q)) throw std::invalid_argument("factor_rational_prime: q must be prime");
    if (q == 2) {
        // -d = 5 mod 8 -> inert; -d = 1 mod 8 -> split (d = 3 mod 4 so q = 2 is unramified)
        long r = ((-K.d) % 8 + 8) % 8;
        if (r == 1) {
            auto roots = local_roots(K, 2);
            QuadIdeal p1(K, 1, 2, roots[0]), p2(K, 1, 2, roots[1]);
            if (p2 < p1) std::swap(p1, p2);
            return {SplitType::split, p1, p2};
        }
        return {SplitType::inert, QuadIdeal(K, 2, 1, 0), std::nullopt};
    }
    if (K.d % q == 0) {
        auto roots = local_roots(K, q);
        return {SplitType::ramified, QuadIdeal(K, 1, q, roots.at(0)), std::nullopt};
    }
    auto roots = local_roots(K, q);
    if (roots.empty()) return {SplitType::inert, QuadIdeal(K, q, 1, 0), std::nullopt};
    QuadIdeal p1(K, 1, q, roots.at(0)), p2(K, 1, q, roots.at(1));
    if (p2 < p1) std::swap(p1, p2);
    return {SplitType::split, p1, p2};
}

std::vector<QuadIdeal> ideals_of_norm(const QuadField& K, long n) {
    if (n < 1) throw std::invalid_argument("ideals_of_norm: n >= 1");
    std::vector<QuadIdeal> result{QuadIdeal::unit_ideal(K)};
    long m = n;
    for (long q = 2; q * q <= m || (m > 1 && q <= m); ++q) {
        if (m % q != 0) continue;
        int e = 0;
        while (m % q == 0) { m /= q; ++e; }
        auto sd = factor_rational_prime(K, q);
        std::vector<QuadIdeal> local;
        switch (sd.type) {
        case SplitType::split:
            for (int i = 0; i <= e; ++i) {
                QuadIdeal id = ideal_mul(K, ideal_pow(K, sd.primary, i), ideal_pow(K, *sd.conjugate, e - i));
                local.push_back(id);
            }
            break;
        case SplitType::inert:
            if (e % 2 == 0) local.push_back(ideal_pow(K, QuadIdeal(K, q, 1, 0), e / 2));
            break;
        case SplitType::ramified:
            local.push_back(ideal_pow(K, sd.primary, e));
            break;
        }
        if (local.empty()) return {};
        std::vector<QuadIdeal> next;
        for (const auto& r : result)
            for (const auto& l : local) next.push_back(ideal_mul(K, r, l));
        result = std::move(next);
    }
    std::sort(result.begin(), result.end());
    return result;
}

long zeta_coefficient(const QuadField& K, long n) {
    long count = 0;
    for (long m = 1; m <= n; ++m)
        if (n % m == 0) count += kronecker_chi(K, m);
    return count;
}

namespace {

std::array<long, 3> reduce_form(std::array<long, 3> f) {
    auto& [A, B, C] = f;
    while (true) {
        if (C < A) { std::swap(A, C); B = -B; }
        if (B > A || B <= -A) {
            // normalize B into (-A, A]
            long k = (B - A) / (2 * A);
            if (B - 2 * k * A > A) ++k;
            while (B - 2 * k * A > A) ++k;
            while (B - 2 * k * A <= -A) --k;
            C = C - k * B + k * k * A;
            B = B - 2 * k * A;
            continue;
        }
        if (C < A) continue;
        break;
    }
    if (A == C && B < 0) B = -B;
    if (B == -A) B = A; // boundary normalization
    return f;
}

std::array<long, 3> ideal_to_form(const QuadField& K, const QuadIdeal& id) {
    // primitive part [a, b+w] <-> (a, 2b+1, ((2b+1)^2 + d)/(4a))
    long a = id.a().get_si();
    long b = id.b().get_si();
    long B = 2 * b + 1;
    long C = (long)Int((Int(B) * B + K.d) / (4 * a)).get_si();
    return reduce_form({a, B, C});
}

} // namespace

int ClassGroup::class_of(const QuadField& K, const QuadIdeal& a) const {
    auto f = ideal_to_form(K, a);
    for (size_t i = 0; i < forms.size(); ++i)
        if (forms[i] == f) return (int)i;
    throw std::logic_error("ClassGroup::class_of: form not found");
}

int ClassGroup::inverse_class(int i) const {
    for (int j = 0; j < (int)table.size(); ++j)
        if (table[i][j] == 0) return j;
    throw std::logic_error("ClassGroup: no inverse");
}

ClassGroup class_group(const QuadField& K, const Int& avoid_norm) {
    ClassGroup G;
    // enumerate reduced forms: |B| <= A <= sqrt(d/3), B odd, B^2 - 4AC = -d
    std::vector<std::array<long, 3>> forms;
    for (long A = 1; 3 * A * A <= K.d; ++A) {
        for (long B = -A + 1; B <= A; ++B) {
            long num = B * B + K.d;
            if (num % (4 * A) != 0) continue;
            long C = num / (4 * A);
            if (C < A) continue;
            if (A == C && B < 0) continue;
            forms.push_back({A, B, C});
        }
    }
    // identity (principal form) first: (1, 1, (1+d)/4)
    std::array<long, 3> principal = reduce_form({1, 1, K.D});
    std::stable_sort(forms.begin(), forms.end(), [&](const auto& f, const auto& g) {
        if ((f == principal) != (g == principal)) return f == principal;
        return f < g;
    });
    G.forms = forms;
    G.h = (long)forms.size();

    // representatives: small-norm integral ideals, coprime to avoid_norm if asked
    G.reps.assign(G.h, QuadIdeal::unit_ideal(K));
    std::vector<bool> found(G.h, false);
    found[0] = true;
    int remaining = G.h - 1;
    for (long n = 2; remaining > 0 && n < 100000; ++n) {
        if (avoid_norm != 1 && gcd(Int(n), avoid_norm) != 1) continue;
        for (const auto& id : ideals_of_norm(K, n)) {
            if (id.content() != 1) continue;
            int c = G.class_of(K, id);
            if (!found[c]) { found[c] = true; G.reps[c] = id; --remaining; }
        }
    }
    if (remaining > 0) throw std::logic_error("class_group: representative search exhausted");

    G.table.assign(G.h, std::vector<int>(G.h, 0));
    for (int i = 0; i < G.h; ++i)
        for (int j = 0; j < G.h; ++j)
            G.table[i][j] = G.class_of(K, ideal_mul(K, G.reps[i], G.reps[j]));
    return G;
}

std::optional<QuadElem> principal_generator(const QuadField& K, const QuadIdeal& a) {
    Int n = a.norm();
    // x^2 + xy + D y^2 = n; y^2 <= 4n/d
    Int ymax_sq = 4 * n / K.d;
    long ymax = (long)Int(sqrt(ymax_sq)).get_si() + 1;
    for (long y = -ymax; y <= ymax; ++y) {
        // x = (-y +/- t)/2 with t^2 = 4n - d y^2
        Int t2 = 4 * n - Int(K.d) * y * y;
        if (t2 < 0) continue;
        Int t = sqrt(t2);
        if (t * t != t2) continue;
        for (int sgn = 0; sgn < (t == 0 ? 1 : 2); ++sgn) {
            Int num = -Int(y) + (sgn ? -t : t);
            if (num % 2 != 0) continue;
            QuadElem cand(num / 2, Int(y));
            if (elem_norm(K, cand) == n && a.contains(K, cand)) return cand;
        }
    }
    return std::nullopt;
}

} // namespace padiclf::quadfield

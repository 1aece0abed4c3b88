#pragma once

#include <gmpxx.h>
#include <optional>
#include <vector>
#include <string>

namespace padiclf::quadfield {

using Int = mpz_class;

// K = Q(sqrt(-d)) with odd fundamental discriminant -d, ring O_K = Z[w],
// w = (1 + sqrt(-d))/2, w^2 = w - D with D = (1+d)/4.
struct QuadField {
    long d = 0;
    long D = 0;      // (1+d)/4
    int w_K = 2;     // unit group order: 6 iff d = 3

    explicit QuadField(long d);

    long disc() const { return -d; }
};

// x + y*w in O_K.
struct QuadElem {
    Int x, y;

    QuadElem() : x(0), y(0) {}
    QuadElem(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool operator==(const QuadElem& o) const { return x == o.x && y == o.y; }
};

Int elem_norm(const QuadField& K, const QuadElem& e);
QuadElem elem_mul(const QuadField& K, const QuadElem& a, const QuadElem& b);
QuadElem elem_conj(const QuadElem& a); // x + y*w -> (x+y) - y*w
QuadElem elem_pow(const QuadField& K, QuadElem a, unsigned long e);
std::vector<QuadElem> units(const QuadField& K);

// Integral ideal g * (Z*a + Z*(b + w)), primitive part in HNF:
// 0 <= b < a, a | N(b + w). Norm = g^2 * a. Smallest positive rational
// integer contained in the ideal is g*a.
class QuadIdeal {
public:
    QuadIdeal() = default; // unit ideal
    QuadIdeal(const QuadField& K, Int g, Int a, Int b);

    static QuadIdeal unit_ideal(const QuadField& K);
    static QuadIdeal principal(const QuadField& K, const QuadElem& beta);
    // Module generated by a list of elements.
    static QuadIdeal from_generators(const QuadField& K, const std::vector<QuadElem>& gens);

    const Int& content() const { return g_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    Int min_rational() const { return g_ * a_; }
    Int norm() const { return g_ * g_ * a_; }

    bool is_unit_ideal() const { return g_ == 1 && a_ == 1; }
    bool contains(const QuadField& K, const QuadElem& e) const;
    bool divides(const QuadField& K, const QuadIdeal& other) const; // contains as module

    QuadIdeal conj(const QuadField& K) const;
    friend bool operator==(const QuadIdeal& p, const QuadIdeal& q) {
        return p.g_ == q.g_ && p.a_ == q.a_ && p.b_ == q.b_;
    }
    friend bool operator!=(const QuadIdeal& p, const QuadIdeal& q) { return !(p == q); }
    // lexicographic in (min_rational, b); used for deterministic enumeration order
    friend bool operator<(const QuadIdeal& p, const QuadIdeal& q) {
        if (p.min_rational() != q.min_rational()) return p.min_rational() < q.min_rational();
        return p.b_ < q.b_;
    }

    std::string str() const;

private:
    Int g_{1}, a_{1}, b_{0};
};

QuadIdeal ideal_mul(const QuadField& K, const QuadIdeal& p, const QuadIdeal& q);
QuadIdeal ideal_pow(const QuadField& K, const QuadIdeal& p, unsigned long e);
Int ideal_norm(const QuadIdeal& p);
long ord_at(const QuadField& K, const QuadIdeal& a, const QuadIdeal& prime);

enum class SplitType { split, inert, ramified };

struct SplittingData {
    SplitType type;
    QuadIdeal primary;        // norm q (split/ramified) or q^2 (inert)
    std::optional<QuadIdeal> conjugate; // the other factor when split
};

SplittingData factor_rational_prime(const QuadField& K, long q);

// All integral ideals of norm n, sorted lexicographically in (a, b) of the
// presentation (min_rational, b).
std::vector<QuadIdeal> ideals_of_norm(const QuadField& K, long n);

// Independent count via the Dedekind zeta Dirichlet coefficient
// sum_{m | n} chi_K(m); used as the enumeration oracle in tests.
long zeta_coefficient(const QuadField& K, long n);

int kronecker_chi(const QuadField& K, long m); // chi_K(m) = (disc/m)

struct ClassGroup {
    long h = 1;
    // reduced primitive forms (A, B, C) of discriminant -d, identity first
    std::vector<std::array<long, 3>> forms;
    std::vector<QuadIdeal> reps; // one integral ideal per class, identity = O_K
    std::vector<std::vector<int>> table; // composition table on class indices

    int class_of(const QuadField& K, const QuadIdeal& a) const;
    int compose(int i, int j) const { return table[i][j]; }
    int inverse_class(int i) const;
};

// Class group via reduced binary quadratic forms. When avoid_norm != 1,
// representatives are chosen with norm coprime to it.
ClassGroup class_group(const QuadField& K, const Int& avoid_norm = Int(1));

// Generator search over lattice points of the given norm; nullopt if the
// ideal is not principal.
std::optional<QuadElem> principal_generator(const QuadField& K, const QuadIdeal& a);

} // namespace padiclf::quadfield

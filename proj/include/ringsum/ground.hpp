#pragma once

#include <set>

#include "ringsum/cyclotomic.hpp"

namespace ringsum {

// Dense univariate polynomial in x over K. Zero is the empty vector.
class KPoly {
public:
    KPoly() = default;
    explicit KPoly(Cyclotomic c);
    static KPoly variable();
    static KPoly from_coeffs(std::vector<Cyclotomic> c);

    bool is_zero() const { return c_.empty(); }
    long degree() const { return (long)c_.size() - 1; }
    const Cyclotomic& coeff(long i) const;
    const Cyclotomic& lead() const;
    const std::vector<Cyclotomic>& coeffs() const { return c_; }

    friend KPoly operator+(const KPoly&, const KPoly&);
    friend KPoly operator-(const KPoly&, const KPoly&);
    friend KPoly operator*(const KPoly&, const KPoly&);
    KPoly operator-() const;
    KPoly operator*(const Cyclotomic& s) const;
    bool operator==(const KPoly&) const;
    bool operator!=(const KPoly& o) const { return !(*this == o); }

    KPoly pow(unsigned long e) const;
    KPoly monic() const;  // pre: nonzero
    static void divrem(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r);
    static KPoly gcd(const KPoly& a, const KPoly& b);  // monic (or zero)
    static KPoly lcm(const KPoly& a, const KPoly& b);
    static bool divides(const KPoly& b, const KPoly& a);
    static KPoly divexact(const KPoly& a, const KPoly& b);

    KPoly shifted(long j) const;                                     // x -> x + j
    KPoly scaled_arg(const Cyclotomic& a, const Cyclotomic& b) const;  // x -> a*x + b
    Cyclotomic evaluate(const Cyclotomic& v) const;
    Cyclotomic evaluate_int(long k) const;

    // Resultant over the field K (zero if either argument is zero and the other nonconstant).
    static Cyclotomic resultant(const KPoly& a, const KPoly& b);

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::vector<Cyclotomic> c_;
    void trim();
};

// All k in Z with p(k) = 0 identically in the parameters. pre: p != 0.
std::set<long> integer_roots(const KPoly& p);

// All j >= 0 with gcd(p(x), q(x+j)) nonconstant. pre: p, q != 0.
std::set<long> dispersion_set(const KPoly& p, const KPoly& q);
// Same but over all j in Z.
std::set<long> dispersion_set_signed(const KPoly& p, const KPoly& q);
// The spec-facing orientation: all j >= 0 with gcd(p(x+j), q(x)) nonconstant,
// so dispersion(x, x+3) = {3}.
std::set<long> dispersion(const KPoly& p, const KPoly& q);

// Element of the rational difference field F = K(x) in canonical form:
// denominator monic, numerator and denominator coprime.
class Ground {
public:
    Ground() : num_(), den_(Cyclotomic(1)) {}
    Ground(KPoly num, KPoly den);  // normalize(num, den); throws on den = 0
    explicit Ground(Cyclotomic c) : num_(std::move(c)), den_(Cyclotomic(1)) {}
    explicit Ground(const Rat& q) : Ground(Cyclotomic(q)) {}
    explicit Ground(long c) : Ground(Cyclotomic(c)) {}
    static Ground variable();

    const KPoly& num() const { return num_; }
    const KPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    std::optional<Cyclotomic> as_constant() const;

    friend Ground operator+(const Ground&, const Ground&);
    friend Ground operator-(const Ground&, const Ground&);
    friend Ground operator*(const Ground&, const Ground&);
    friend Ground operator/(const Ground&, const Ground&);
    Ground operator-() const;
    Ground inverse() const;  // throws "division by zero"
    Ground pow(long e) const;
    bool operator==(const Ground& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Ground& o) const { return !(*this == o); }

    Ground shifted(long j) const;  // x -> x + j; the ground automorphism sigma^j
    Ground scaled_arg(const Cyclotomic& a, const Cyclotomic& b) const;

    // Evaluation with the 0-for-pole convention of the sequence embedding.
    Cyclotomic evaluate_int(long k) const;
    bool has_pole_at(long k) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    KPoly num_, den_;
};

}  // namespace ringsum

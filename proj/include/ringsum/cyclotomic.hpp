#pragma once

#include "ringsum/params.hpp"

namespace ringsum {

// Element of K = Q(zeta_m)(n_0,...,n_{v-1}) in the power basis 1, z, ..., z^(phi(m)-1)
// reduced modulo the m-th cyclotomic polynomial. Each value carries its own order m;
// arithmetic between different orders lifts both operands to the lcm. Values are
// immutable after construction and safe to share between threads.
class Cyclotomic {
public:
    Cyclotomic() : order_(1) {}
    explicit Cyclotomic(const Rat& q);
    explicit Cyclotomic(long c) : Cyclotomic(Rat(c)) {}
    explicit Cyclotomic(const ParamRational& r);

    // Primitive m-th root of unity; throws on m = 0.
    static Cyclotomic zeta(unsigned m);

    unsigned order() const { return order_; }
    // Same number viewed in Q(zeta_M); requires order() | M.
    Cyclotomic lifted(unsigned M) const;

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    bool is_param_free() const;
    // Present iff the value lies in Q(params); always present when order()'s phi is 1.
    std::optional<ParamRational> as_param_rational() const;
    std::optional<Rat> as_rational() const;

    friend Cyclotomic operator+(const Cyclotomic&, const Cyclotomic&);
    friend Cyclotomic operator-(const Cyclotomic&, const Cyclotomic&);
    friend Cyclotomic operator*(const Cyclotomic&, const Cyclotomic&);
    friend Cyclotomic operator/(const Cyclotomic&, const Cyclotomic&);
    Cyclotomic operator-() const;
    Cyclotomic inverse() const;  // throws "division by zero" on zero
    Cyclotomic pow(long e) const;
    bool operator==(const Cyclotomic&) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Multiplicative order when the value is a root of unity (necessarily
    // parameter-free); nullopt otherwise. Throws on zero.
    std::optional<unsigned> root_of_unity_order() const;

    // Substitutes parameter values; the zeta part must reduce away (order 1 or 2
    // style coefficients stay symbolic otherwise). Returns the value in Q(zeta_m)
    // with constant coefficients.
    Cyclotomic specialize(const std::vector<Rat>& values) const;

    const std::vector<ParamRational>& coeffs() const { return coeffs_; }

    std::string to_string(const std::vector<std::string>& names) const;

private:
    unsigned order_;
    std::vector<ParamRational> coeffs_;  // size phi(order_) when nonzero, empty when zero
    void trim();
};

unsigned euler_phi(unsigned m);
// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<Int>& cyclotomic_poly(unsigned m);

}  // namespace ringsum

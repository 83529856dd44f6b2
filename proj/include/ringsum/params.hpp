#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringsum {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Resource caps (degree caps, order caps); CLI exit code 3.
struct CapError : Error {
    using Error::Error;
};
// Inputs outside the supported class; CLI exit code 2.
struct UnsupportedError : Error {
    using Error::Error;
};

// Exponent vector over the session parameters; trailing zeros trimmed so that
// equal monomials compare equal regardless of how many parameters are in play.
using Mono = std::vector<int>;

long mono_degree(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);

// Graded lexicographic order with the fixed parameter ordering n_0 < n_1 < ...
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse multivariate polynomial over Z in the parameters.
class ParamPoly {
public:
    using Terms = std::map<Mono, Int, MonoLess>;

    ParamPoly() = default;
    explicit ParamPoly(Int c);
    explicit ParamPoly(long c) : ParamPoly(Int(c)) {}
    static ParamPoly variable(int index);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const Int& constant_value() const;  // pre: is_constant()
    const Terms& terms() const { return terms_; }

    long total_degree() const;  // -1 for zero
    long degree_in(int var) const;
    int max_var() const;  // largest parameter index present, -1 if constant

    friend ParamPoly operator+(const ParamPoly&, const ParamPoly&);
    friend ParamPoly operator-(const ParamPoly&, const ParamPoly&);
    friend ParamPoly operator*(const ParamPoly&, const ParamPoly&);
    ParamPoly operator-() const;
    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }

    ParamPoly pow(unsigned long e) const;

    // Leading data under the graded lex order.
    const Int& leading_coeff() const;  // pre: !is_zero()
    const Mono& leading_mono() const;  // pre: !is_zero()

    Int content() const;  // gcd of coefficients, >= 0; 0 for zero
    ParamPoly primitive_part() const;

    // Exact division; throws if the division does not come out even.
    static ParamPoly divexact(const ParamPoly& a, const ParamPoly& b);
    static bool divides(const ParamPoly& b, const ParamPoly& a);
    static ParamPoly gcd(const ParamPoly& a, const ParamPoly& b);

    Rat evaluate(const std::vector<Rat>& values) const;

    void add_term(const Mono& m, const Int& c);
    std::string to_string(const std::vector<std::string>& names) const;

private:
    Terms terms_;
};

// Quotient of two ParamPoly in canonical form: num/den coprime over Z[params]
// (including integer content) and den with positive leading coefficient.
class ParamRational {
public:
    ParamRational() : num_(), den_(Int(1)) {}
    ParamRational(ParamPoly num, ParamPoly den);  // normalizes; throws on den = 0
    explicit ParamRational(const Int& c) : num_(c), den_(Int(1)) {}
    explicit ParamRational(long c) : num_(Int(c)), den_(Int(1)) {}
    explicit ParamRational(const Rat& q);
    static ParamRational variable(int index);

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const;     // free of parameters
    Rat constant_value() const;   // pre: is_constant()

    friend ParamRational operator+(const ParamRational&, const ParamRational&);
    friend ParamRational operator-(const ParamRational&, const ParamRational&);
    friend ParamRational operator*(const ParamRational&, const ParamRational&);
    friend ParamRational operator/(const ParamRational&, const ParamRational&);
    ParamRational operator-() const;
    ParamRational inverse() const;  // throws on zero
    bool operator==(const ParamRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ParamRational& o) const { return !(*this == o); }

    Rat evaluate(const std::vector<Rat>& values) const;  // throws if den vanishes

    std::string to_string(const std::vector<std::string>& names) const;

private:
    ParamPoly num_, den_;
};

// Rendering helper: true when s has a top-level '+' or '-' past position 0
// (i.e. the string denotes a sum and needs parentheses as a factor).
bool render_sum_like(const std::string& s);

// Small integer helpers shared across the engine.
Int int_gcd(const Int& a, const Int& b);
Int int_lcm(const Int& a, const Int& b);
// g = a*x + b*y with g = gcd(a, b) >= 0.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y);
// Prime factorization by trial division; throws CapError past the bound.
std::map<Int, long> factor_integer(Int n);
std::vector<Int> divisors(const Int& n);

}  // namespace ringsum

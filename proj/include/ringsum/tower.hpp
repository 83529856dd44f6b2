#pragma once

#include <memory>

#include "ringsum/ground.hpp"

namespace ringsum {

enum class GenKind { A, Pi, Sigma };
enum class Verified { Unverified, VerifiedRPS, Refuted };

// Sparse element of the tower E = K(x)<t_0>...<t_{e-1}>. Keys are exponent
// vectors (one slot per generator, trailing zeros trimmed): Laurent integers
// at Pi positions, residues mod lambda at A positions, non-negative at Sigma
// positions. Canonical, so structural equality is mathematical equality.
class RingElement {
public:
    using Exps = std::vector<long>;
    using Terms = std::map<Exps, Ground>;

    RingElement() = default;
    explicit RingElement(Ground g);
    explicit RingElement(long c) : RingElement(Ground(c)) {}

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    // Number of generator slots actually used (= 1 + max index with nonzero exponent).
    size_t width() const;

    // Tower-free ring operations.
    friend RingElement operator+(const RingElement&, const RingElement&);
    friend RingElement operator-(const RingElement&, const RingElement&);
    RingElement operator-() const;
    RingElement scaled(const Ground& g) const;
    bool operator==(const RingElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // The coefficient of the all-zero exponent vector.
    Ground constant_coeff() const;
    std::optional<Ground> as_ground() const;  // present iff no generator occurs

    // True when the element is a single term; outputs its data.
    bool monomial(Exps* e = nullptr, Ground* coeff = nullptr) const;

    void add_term(Exps e, Ground c);  // low-level; folds nothing

    static Exps trim(Exps e);

private:
    Terms terms_;
};

struct Generator {
    std::string name;
    GenKind kind;
    unsigned order = 0;       // A only
    Cyclotomic alpha_const;   // A only; alpha in K*, alpha^order = 1
    RingElement multiplicand; // Pi only; unit monomial over the subtower, free of A/Sigma gens
    RingElement summand;      // Sigma only; any element over the subtower
    RingElement inv_image;    // cached sigma^{-1}(t), element over gens up to and including this one
    Verified verified = Verified::Unverified;
};

// Immutable tower over the rational difference field K(x), sigma(x) = x+1.
// Adjoining returns a new tower sharing generator nodes.
class Tower {
public:
    Tower() = default;

    size_t size() const { return gens_.size(); }
    const Generator& gen(size_t i) const { return *gens_.at(i); }
    int index_of(const std::string& name) const;

    Tower prefix(size_t k) const;
    Tower adjoin_a(const std::string& name, unsigned order, const Cyclotomic& alpha) const;
    Tower adjoin_pi(const std::string& name, const RingElement& alpha) const;
    Tower adjoin_sigma(const std::string& name, const RingElement& beta) const;
    Tower with_verified(size_t i, Verified v) const;
    Tower with_generator(size_t i, std::shared_ptr<const Generator> g) const;

    bool all_verified(size_t upto) const;  // gens_[0..upto) all VerifiedRPS
    std::vector<size_t> a_indices() const;

    // lcm(2, all A-orders); the session cyclotomic order.
    unsigned session_order() const;

private:
    std::vector<std::shared_ptr<const Generator>> gens_;
};

// Tower-aware element operations. All results are canonical (A-exponents
// folded eagerly, no zero coefficients).
RingElement re_one();
RingElement re_gen(const Tower& t, size_t idx, long exp = 1);
RingElement re_fold(const Tower& t, const RingElement& f);
RingElement re_mul(const Tower& t, const RingElement& a, const RingElement& b);
RingElement re_pow(const Tower& t, const RingElement& a, long e);  // negative e: a must be a unit
Ground re_coeff(const RingElement& f, const RingElement::Exps& e);

// sigma^j as a ring automorphism. apply_sigma(t, f, j) with j < 0 uses the
// cached inverse images.
RingElement apply_sigma(const Tower& t, const RingElement& f, long j);

// Splits f by the exponent of generator `idx`: exponent value -> element with
// that slot zeroed (an element of the tower without t_idx when idx is topmost).
std::map<long, RingElement> split_by_gen(const RingElement& f, size_t idx);
RingElement join_gen(const Tower& t, size_t idx, const std::map<long, RingElement>& parts);

// Largest generator index occurring with nonzero exponent, or -1.
int top_gen_index(const RingElement& f);

// Unit recognition (Lemma-level characterization through the character
// decomposition of the A-part). Requires the generators occurring in f to be
// verified; throws "verify tower first" otherwise.
bool is_unit(const Tower& t, const RingElement& f, RingElement* inverse = nullptr);

// Zero-divisor test; requires at most one A-generator (merge first).
// Zero input counts as a zero divisor (0 annihilates everything).
bool is_zero_divisor(const Tower& t, const RingElement& f);

// Inverts a single-term element whose Sigma-exponents vanish, without any
// verification requirement (used for Pi-multiplicands and internal twists).
RingElement invert_monomial(const Tower& t, const RingElement& f);

enum class TowerOrder { APS, PAS, Depth };

struct Reordering {
    Tower tower;                // permuted tower
    std::vector<size_t> perm;   // new index -> old index
    std::vector<size_t> inv;    // old index -> new index
    RingElement transport(const RingElement& f) const;      // old coords -> new
    RingElement transport_back(const RingElement& f) const; // new coords -> old
};

// Reorders a basic tower into the requested normal form; throws
// "reordering requires basic extension" when a Pi-multiplicand involves
// A- or Sigma-generators.
Reordering reorder(const Tower& t, TowerOrder target);

std::string re_to_string(const Tower& t, const RingElement& f, const std::vector<std::string>& params);

}  // namespace ringsum

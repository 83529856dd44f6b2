#pragma once

#include "ringsum/linalg.hpp"
#include "ringsum/ground.hpp"

namespace ringsum {

struct SolverOptions {
    long degree_cap = 200;
    bool trace = false;
};

// Basis row of the K-space {(c, g) in K^d x F : sigma(g) + a g = sum_i c_i f_i}.
struct PfldeRow {
    KVec c;
    Ground g;
};

// Complete solution basis via Abramov universal denominators, a degree bound
// from leading-coefficient analysis, and exact linear algebra over K.
// Every returned row re-substitutes exactly (asserted before returning).
std::vector<PfldeRow> solve_pflde(const Ground& a, const std::vector<Ground>& f,
                                  const SolverOptions& opts = {});

// Basis row of the lattice {z in Z^d : sigma(g)/g = prod f_i^{z_i}, g in F*}.
struct PmtRow {
    std::vector<Int> z;
    Ground witness;
};

// f = c * m with c in K* and m monic (monic numerator and denominator).
std::pair<Cyclotomic, Ground> monic_split(const Ground& f);

// Shift-class and constant-factor data for a list of nonzero f_i, exposing the
// homogeneous integer conditions and the congruence that cut out the PMT
// lattice. The verifier reuses this to build joint monomial lattices.
class MultiplicativeSystem {
public:
    explicit MultiplicativeSystem(const std::vector<Ground>& f);

    size_t dim() const { return f_.size(); }
    const std::vector<std::vector<Int>>& rows() const { return rows_; }
    const std::vector<Int>& congruence() const { return congruence_; }
    const Int& modulus() const { return modulus_; }

    // Witness w with sigma(w)/w = prod f_i^{z_i}; pre: z satisfies the
    // conditions. The result is verified exactly before returning.
    Ground witness(const std::vector<Int>& z) const;

    std::vector<PmtRow> solve() const;

private:
    std::vector<Ground> f_;
    std::vector<Cyclotomic> consts_;
    // shift classes: representative polynomials; per input i a sparse map
    // (class, offset) -> exponent covering numerator minus denominator
    std::vector<KPoly> class_reps_;
    std::vector<std::map<std::pair<size_t, long>, long>> class_exps_;
    std::vector<std::vector<Int>> rows_;
    std::vector<Int> congruence_;
    Int modulus_;
};

std::vector<PmtRow> solve_pmt(const std::vector<Ground>& f, const SolverOptions& opts = {});

// Termwise telescoper in K[y]/(y^n - 1): returns g with sigma(g) - g = rhs,
// where rhs is given by its coefficient vector at y^0..y^(n-1) and must have
// zero y^0 component. alpha must be a primitive n-th root of unity.
std::vector<Cyclotomic> telescope_constant_ring(const Cyclotomic& alpha, unsigned order,
                                                const std::vector<Cyclotomic>& rhs);

}  // namespace ringsum

#pragma once

#include "ringsum/solvers.hpp"
#include "ringsum/tower.hpp"

namespace ringsum {

// Idempotent decomposition of a tower with (at most) one R-monomial of order n
// into n A-free components cyclically permuted by sigma. Components are stored
// as plain elements of the ambient tower with zero exponent at the A-slot.
struct IdempotentBasis {
    unsigned n = 1;
    Cyclotomic alpha;             // primitive n-th root (the A-multiplicand)
    int a_index = -1;             // -1 when the tower has no A-generator
    std::vector<RingElement> e;   // e_0..e_{n-1}; n = 1 gives {1}
};

// Throws when the tower has more than one A-generator (merge first); asserts
// the idempotent identities at construction.
IdempotentBasis idempotents(const Tower& t);

struct ComponentContext {
    Tower tower;   // the ambient tower E
    IdempotentBasis idem;

    // f with y -> alpha^{n-1-s}: the component f_s (free of the A-generator).
    RingElement component(const RingElement& f, unsigned s) const;
    std::vector<RingElement> decompose(const RingElement& f) const;
    RingElement recompose(const std::vector<RingElement>& comps) const;  // sum_s e_s f_s

    // sigma_s(f) = sigma^n(f)|_{y -> alpha^{n-1-s}} on A-free elements.
    RingElement sigma_s(const RingElement& f, unsigned s) const;
};

ComponentContext make_components(const Tower& t);

// Rotation law for sigma on component lists: j applications of
// sigma(e_s f_s) = e_{s+1 mod n} sigma(f_s)|_{y -> alpha^{n-2-s}}.
std::vector<RingElement> sigma_on_components(const ComponentContext& ctx,
                                             std::vector<RingElement> comps, long j);

// The component difference ring (E-tilde, sigma_s) realized as an ordinary
// tower over K(X) with sigma(X) = X + 1 through the substitution x = n*X.
// Elements move between the ambient x-coordinates and solver X-coordinates.
struct ComponentSolver {
    Tower solver_tower;
    unsigned s = 0;
    unsigned n = 1;
    int a_index = -1;
    std::vector<size_t> old_of_new;  // solver index -> ambient index

    RingElement to_solver(const RingElement& f) const;    // pre: f free of the A-gen
    RingElement from_solver(const RingElement& f) const;
};

ComponentSolver make_component_solver(const ComponentContext& ctx, unsigned s);

// Per-generator table of sigma_s (the spec's component_automorphism): image of
// each non-A generator under sigma_s, in ambient coordinates.
std::vector<std::pair<std::string, RingElement>> component_automorphism_table(
    const ComponentContext& ctx, unsigned s);

// lambda_s: picks entries at indices n*r + (n-1-s).
template <class T>
std::vector<T> subsequence(const std::vector<T>& seq, unsigned n, unsigned s) {
    std::vector<T> out;
    for (size_t r = 0; n * r + (n - 1 - s) < seq.size(); ++r) out.push_back(seq[n * r + (n - 1 - s)]);
    return out;
}

}  // namespace ringsum

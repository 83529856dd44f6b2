#pragma once

#include <functional>

#include "ringsum/interlacing.hpp"

namespace ringsum {

// Basis row of V(f, E) = {(c, g) in K^d x E : sigma(g) - g = sum_i c_i f_i}.
struct PtdrRow {
    KVec c;
    RingElement g;
};

// Joint monomial lattice over a verified tower: basis of
//   { m in Z^k : sigma(M)/M = prod_j targets_j^{m_j} for some unit monomial M },
// each with a witness M. Targets must be unit monomials (coefficient in F*,
// exponents only at A- and Pi-generators).
struct MonomialLatticeRow {
    std::vector<Int> m;
    RingElement witness;
};
std::vector<MonomialLatticeRow> monomial_product_lattice(const Tower& t,
                                                         const std::vector<RingElement>& targets);

// First-order parameterized equation in the tower:
//   basis of { (c, g) in K^d x E : sigma(g) = a*g + sum_i c_i f_i },
// with a a unit monomial whose exponents avoid the topmost generator layer it
// is used in (PTDR passes a = 1). Requires the occurring generators verified.
// Every returned row re-substitutes exactly.
std::vector<PtdrRow> solve_first_order(const Tower& t, const RingElement& a,
                                       const std::vector<RingElement>& f,
                                       const SolverOptions& opts = {});

enum class Strategy { Auto, Recursive, Interlacing };

// Recursive layer-peeling strategy.
std::vector<PtdrRow> solve_ptdr_recursive(const Tower& t, const std::vector<RingElement>& f,
                                          const SolverOptions& opts = {});

// Interlacing strategy: per-component telescoping in (E-tilde, sigma_s), exact
// intersection of the parameter spaces, and the constant-ring residue step.
// Requires at most one A-generator (merge first). Optionally reports the
// intermediate data of the reduction for one distinguished row.
struct InterlacingTrace {
    std::vector<RingElement> g_tilde;  // per-component solutions (ambient coords)
    RingElement residual;              // f' in K[y]
    RingElement constant_part;         // g' with sigma(g') - g' = f'
};
std::vector<PtdrRow> solve_ptdr_interlacing(const Tower& t, const std::vector<RingElement>& f,
                                            const SolverOptions& opts = {},
                                            std::vector<InterlacingTrace>* traces = nullptr);

// Strategy::Auto uses interlacing when an A-generator is present.
std::vector<PtdrRow> solve_ptdr(const Tower& t, const std::vector<RingElement>& f,
                                Strategy strategy = Strategy::Auto, const SolverOptions& opts = {});

// Canonical K-space reduction of rows (drops dependent rows); also normalizes
// the additive constant of every row with c != 0 when a pure constant row is
// in the span (the witness convention used throughout).
std::vector<PtdrRow> reduce_ptdr_rows(const Tower& t, std::vector<PtdrRow> rows);

// True iff (c, g) lies in the K-span of rows.
bool ptdr_in_span(const Tower& t, const std::vector<PtdrRow>& rows, const KVec& c, const RingElement& g);

struct CreativeResult {
    size_t order = 0;
    KVec c;
    RingElement g;
};

// Increments d from 1, solving parameterized telescoping on the first d
// summand images produced by `summand(i)` (i = 0-based); returns at the first
// nontrivial solution or throws CapError at max_order.
CreativeResult creative_telescope_elements(const Tower& t,
                                           const std::function<RingElement(size_t)>& summand,
                                           size_t max_order, Strategy strategy = Strategy::Auto,
                                           const SolverOptions& opts = {});

struct IndependenceResult {
    bool independent = false;
    Strategy strategy_used = Strategy::Auto;
    // refutation data when !independent
    KVec c;
    RingElement g;
    size_t dimension = 0;  // solution-space dimension observed
};

// Certificate that adjoining Sigma-generators for the f_i keeps constants
// fixed (hence the corresponding sum sequences are algebraically independent),
// or the explicit relation (c, g) refuting it.
IndependenceResult certify_independence(const Tower& t, const std::vector<RingElement>& f,
                                        Strategy strategy = Strategy::Auto,
                                        const SolverOptions& opts = {});

}  // namespace ringsum

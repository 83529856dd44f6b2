#include "ringsum/telescoper.hpp"

#include <algorithm>
#include <future>

namespace ringsum {

namespace {

// ---- element linearization over K -------------------------------------------

// K-coordinates of tower elements against a shared term/denominator frame,
// used for span tests and kernels on (c, g) rows.
struct ElementFrame {
    std::vector<RingElement::Exps> keys;
    KPoly den{Cyclotomic(1L)};
    long maxdeg = 0;

    static ElementFrame build(const std::vector<const RingElement*>& elems) {
        ElementFrame fr;
        std::set<RingElement::Exps> keyset;
        for (const auto* e : elems)
            for (const auto& [k, c] : e->terms()) {
                keyset.insert(k);
                if (!c.is_zero()) fr.den = KPoly::lcm(fr.den, c.den());
            }
        fr.keys.assign(keyset.begin(), keyset.end());
        for (const auto* e : elems)
            for (const auto& [k, c] : e->terms()) {
                KPoly p = c.num() * KPoly::divexact(fr.den, c.den());
                fr.maxdeg = std::max(fr.maxdeg, p.degree());
            }
        return fr;
    }

    KVec coords(const RingElement& e) const {
        KVec out(keys.size() * (size_t)(maxdeg + 1));
        for (const auto& [k, c] : e.terms()) {
            auto it = std::lower_bound(keys.begin(), keys.end(), k);
            if (it == keys.end() || *it != k) throw Error("element frame: key outside frame");
            size_t ki = (size_t)(it - keys.begin());
            KPoly p = c.num() * KPoly::divexact(den, c.den());
            for (long d = 0; d <= p.degree(); ++d) out[ki * (maxdeg + 1) + d] = p.coeff(d);
        }
        return out;
    }
};

// kernel over K of sum_k mu_k v_k = 0.
std::vector<KVec> element_kernel(const std::vector<RingElement>& v) {
    std::vector<const RingElement*> ptrs;
    for (const auto& e : v) ptrs.push_back(&e);
    ElementFrame fr = ElementFrame::build(ptrs);
    size_t dim = fr.keys.size() * (size_t)(fr.maxdeg + 1);
    KMat m(dim, KVec(v.size()));
    for (size_t k = 0; k < v.size(); ++k) {
        KVec col = fr.coords(v[k]);
        for (size_t r = 0; r < dim; ++r) m[r][k] = col[r];
    }
    return kernel_basis(std::move(m), v.size());
}

// ---- twists ------------------------------------------------------------------

struct Monomial {
    RingElement::Exps exps;
    Ground coeff;
};

Monomial as_unit_monomial(const Tower& t, const RingElement& a) {
    Monomial m;
    if (!a.monomial(&m.exps, &m.coeff) || m.coeff.is_zero())
        throw Error("expected a unit monomial twist");
    for (size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] != 0 && t.gen(i).kind == GenKind::Sigma)
            throw Error("expected a unit monomial twist");
    return m;
}

// ---- monomial product lattice -------------------------------------------------

}  // namespace

std::vector<MonomialLatticeRow> monomial_product_lattice(const Tower& t,
                                                         const std::vector<RingElement>& targets) {
    const size_t k = targets.size();
    std::vector<size_t> agens, pgens;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t.gen(i).kind == GenKind::A) agens.push_back(i);
        if (t.gen(i).kind == GenKind::Pi) pgens.push_back(i);
    }
    const size_t na = agens.size(), np = pgens.size();
    std::vector<Monomial> tg;
    for (const auto& target : targets) tg.push_back(as_unit_monomial(t, target));

    // Pi-multiplicand data: alpha_i = u_i * (p-monomial)
    std::vector<Ground> u(np);
    std::vector<std::vector<long>> mult_p(np, std::vector<long>(np, 0));
    for (size_t pi = 0; pi < np; ++pi) {
        Monomial m = as_unit_monomial(t, t.gen(pgens[pi]).multiplicand);
        u[pi] = m.coeff;
        for (size_t q = 0; q < np; ++q)
            mult_p[pi][q] = pgens[q] < m.exps.size() ? m.exps[pgens[q]] : 0;
    }

    // variable layout: m_0..m_{k-1}, xi_0..xi_{na-1}, pi_0..pi_{np-1}
    size_t cols = k + na + np;
    auto exp_at = [](const Monomial& m, size_t idx) -> long {
        return idx < m.exps.size() ? m.exps[idx] : 0;
    };

    std::vector<std::vector<Int>> rows;
    std::vector<std::pair<std::vector<Int>, Int>> congs;
    // (a) p-part: sum_i pi_i * mult_p[i][q] - sum_j m_j * tg_p[j][q] = 0
    for (size_t q = 0; q < np; ++q) {
        std::vector<Int> row(cols, Int(0));
        for (size_t j = 0; j < k; ++j) row[j] = Int(-exp_at(tg[j], pgens[q]));
        for (size_t i = 0; i < np; ++i) row[k + na + i] = Int(mult_p[i][q]);
        rows.push_back(std::move(row));
    }
    // (b) y-part: sum_j m_j * tg_y[j][i] = 0 (mod lambda_i)
    for (size_t i = 0; i < na; ++i) {
        std::vector<Int> cong(cols, Int(0));
        for (size_t j = 0; j < k; ++j) cong[j] = Int(exp_at(tg[j], agens[i]));
        congs.emplace_back(std::move(cong), Int(t.gen(agens[i]).order));
    }
    // (c) F*-part via the ground multiplicative system on
    //     (w_j..., a_i..., u_i...): sigma(w)/w = prod w_j^{m_j} a_i^{-xi_i} u_i^{-pi_i}
    std::vector<Ground> flist;
    for (const auto& m : tg) flist.push_back(m.coeff);
    for (size_t i = 0; i < na; ++i) flist.push_back(Ground(t.gen(agens[i]).alpha_const));
    for (size_t i = 0; i < np; ++i) flist.push_back(u[i]);
    MultiplicativeSystem sys(flist);
    auto sign_of = [&](size_t col) -> Int { return col < k ? Int(1) : Int(-1); };
    for (const auto& r : sys.rows()) {
        std::vector<Int> row(cols, Int(0));
        for (size_t c = 0; c < cols; ++c) row[c] = r[c] * sign_of(c);
        rows.push_back(std::move(row));
    }
    {
        std::vector<Int> cong(cols, Int(0));
        for (size_t c = 0; c < cols; ++c) cong[c] = sys.congruence()[c] * sign_of(c);
        congs.emplace_back(std::move(cong), sys.modulus());
    }

    auto lattice = integer_kernel_with_congruences(rows, cols, congs);
    std::vector<MonomialLatticeRow> out;
    for (const auto& v : lattice) {
        MonomialLatticeRow row;
        row.m.assign(v.begin(), v.begin() + k);
        // witness M = w * y^xi * p^pi
        std::vector<Int> zground(flist.size());
        for (size_t c = 0; c < cols; ++c) zground[c] = v[c] * sign_of(c);
        Ground w = sys.witness(zground);
        RingElement::Exps e(t.size(), 0);
        for (size_t i = 0; i < na; ++i) {
            Int xi = v[k + i] % Int(t.gen(agens[i]).order);
            if (xi < 0) xi += Int(t.gen(agens[i]).order);
            e[agens[i]] = xi.get_si();
        }
        for (size_t i = 0; i < np; ++i) {
            if (!v[k + na + i].fits_slong_p()) throw CapError("monomial lattice exponent too large");
            e[pgens[i]] = v[k + na + i].get_si();
        }
        RingElement M;
        M.add_term(RingElement::trim(e), w);
        // verify sigma(M) = M * prod targets^m exactly
        RingElement target = re_one();
        for (size_t j = 0; j < k; ++j) {
            if (!row.m[j].fits_slong_p()) throw CapError("monomial lattice exponent too large");
            long mj = row.m[j].get_si();
            RingElement pw = mj >= 0 ? re_pow(t, targets[j], mj)
                                     : re_pow(t, invert_monomial(t, targets[j]), -mj);
            target = re_mul(t, target, pw);
        }
        if (apply_sigma(t, M, 1) != re_mul(t, M, target))
            throw Error("monomial lattice: internal verification failed");
        row.witness = M;
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

// ---- first-order recursion -----------------------------------------------------

struct Column {
    KVec c;          // length d
    RingElement g;   // partial solution over the full tower
};

// restriction of (c, g)-rows: verify and wrap
std::vector<PtdrRow> finish_rows(const Tower& t, const RingElement& a,
                                 const std::vector<RingElement>& f, std::vector<Column> cols) {
    std::vector<PtdrRow> out;
    for (auto& col : cols) {
        RingElement rhs;
        for (size_t i = 0; i < f.size(); ++i) rhs = rhs + f[i].scaled(Ground(col.c[i]));
        RingElement lhs = apply_sigma(t, col.g, 1) - re_mul(t, a, col.g);
        if (lhs != rhs) throw Error("solve_first_order: internal verification failed");
        bool trivial = col.g.is_zero() &&
                       std::all_of(col.c.begin(), col.c.end(), [](const Cyclotomic& x) { return x.is_zero(); });
        if (!trivial) out.push_back(PtdrRow{std::move(col.c), std::move(col.g)});
    }
    return out;
}

// Exponents l admitting homogeneous unit-monomial solutions sigma(M) = a*alpha^{-l}*M
// over the subtower; at most one exists in a verified tower.
std::optional<long> homogeneous_exponent(const Tower& sub, const RingElement& a,
                                         const RingElement& alpha) {
    auto lattice = monomial_product_lattice(sub, {a, alpha});
    // want vectors with m_0 = 1; l = -m_1
    // compute gcd of m_0 components and a combination reaching it
    std::vector<Int> m0s;
    for (const auto& r : lattice) m0s.push_back(r.m[0]);
    Int g(0);
    std::vector<Int> combo(lattice.size(), Int(0));
    for (size_t i = 0; i < lattice.size(); ++i) {
        if (m0s[i] == 0) continue;
        if (g == 0) {
            g = m0s[i];
            std::fill(combo.begin(), combo.end(), Int(0));
            combo[i] = 1;
        } else {
            Int x, y;
            Int g2 = ext_gcd(g, m0s[i], x, y);
            for (auto& cc : combo) cc *= x;
            combo[i] += y;
            g = g2;
        }
    }
    if (g == 0) return std::nullopt;
    if (g != 1 && g != -1) return std::nullopt;  // cannot reach m_0 = 1
    Int l(0);
    for (size_t i = 0; i < lattice.size(); ++i) l += combo[i] * lattice[i].m[1];
    if (g == -1) l = -l;
    l = -l;
    if (!l.fits_slong_p()) return std::nullopt;
    return l.get_si();
}

std::vector<Column> intersect_columns(const std::vector<Column>& A, const std::vector<Column>& B,
                                      const Tower& t, size_t d) {
    // {(c, gA + gB) : (c, gA) in span A, (c, gB) in span B}
    KMat m(d, KVec(A.size() + B.size()));
    for (size_t i = 0; i < d; ++i) {
        for (size_t k = 0; k < A.size(); ++k) m[i][k] = A[k].c[i];
        for (size_t k = 0; k < B.size(); ++k) m[i][A.size() + k] = -B[k].c[i];
    }
    std::vector<Column> out;
    for (const auto& v : kernel_basis(std::move(m), A.size() + B.size())) {
        Column col;
        col.c.assign(d, Cyclotomic());
        for (size_t i = 0; i < d; ++i)
            for (size_t k = 0; k < A.size(); ++k) col.c[i] = col.c[i] + v[k] * A[k].c[i];
        for (size_t k = 0; k < A.size(); ++k)
            if (!v[k].is_zero()) col.g = col.g + A[k].g.scaled(Ground(v[k]));
        for (size_t k = 0; k < B.size(); ++k)
            if (!v[A.size() + k].is_zero()) col.g = col.g + B[k].g.scaled(Ground(v[A.size() + k]));
        out.push_back(std::move(col));
    }
    return out;
}

RingElement lift_from_sub(const RingElement& sub, size_t top, long exp) {
    RingElement out;
    for (const auto& [e, c] : sub.terms()) {
        RingElement::Exps ee = e;
        if (ee.size() <= top) ee.resize(top + 1, 0);
        if (ee[top] != 0) throw Error("lift_from_sub: element not free of top generator");
        ee[top] = exp;
        out.add_term(RingElement::trim(ee), c);
    }
    return out;
}

std::vector<PtdrRow> first_order_rec(const Tower& t, const RingElement& a,
                                     const std::vector<RingElement>& f, const SolverOptions& opts);

// Independent-exponent layers (Pi with twist exponent 0, and A): solve a
// twisted subproblem per exponent and intersect the parameter spaces.
std::vector<PtdrRow> solve_split_layer(const Tower& t, size_t top, const RingElement& a,
                                       const std::vector<RingElement>& f,
                                       const std::set<long>& support, bool a_gen,
                                       const SolverOptions& opts) {
    const Tower sub = t.prefix(top);
    const size_t d = f.size();
    const Generator& g = t.gen(top);
    std::vector<std::map<long, RingElement>> fsplit;
    for (const auto& fi : f) fsplit.push_back(split_by_gen(fi, top));

    bool first = true;
    std::vector<Column> acc;
    for (long l : support) {
        // twist a * alpha^{-l}; inputs alpha^{-l} * f_{i,l}
        RingElement alpha_ml;
        if (a_gen) {
            long r = ((-l) % g.order + g.order) % g.order;
            alpha_ml = RingElement(Ground(g.alpha_const.pow(r)));
            // alpha is a constant root of unity: alpha^{-l} = alpha^{r}
        } else {
            alpha_ml = l >= 0 ? re_pow(sub, invert_monomial(sub, g.multiplicand), l)
                              : re_pow(sub, g.multiplicand, -l);
        }
        RingElement twist = re_mul(sub, a, alpha_ml);
        std::vector<RingElement> inputs;
        for (size_t i = 0; i < d; ++i) {
            auto it = fsplit[i].find(l);
            RingElement fi = it == fsplit[i].end() ? RingElement() : it->second;
            inputs.push_back(re_mul(sub, alpha_ml, fi));
        }
        auto rows = first_order_rec(sub, twist, inputs, opts);
        std::vector<Column> cols;
        for (auto& r : rows) cols.push_back(Column{r.c, lift_from_sub(r.g, top, l)});
        if (first) {
            acc = std::move(cols);
            first = false;
        } else {
            acc = intersect_columns(acc, cols, t, d);
        }
    }
    if (first) {
        // empty support: g = 0, c must make the rhs vanish (f all zero here)
        std::vector<Column> cols;
        for (size_t i = 0; i < d; ++i) {
            Column col;
            col.c.assign(d, Cyclotomic());
            col.c[i] = Cyclotomic(1L);
            cols.push_back(std::move(col));
        }
        acc = std::move(cols);
    }
    return finish_rows(t, a, f, std::move(acc));
}

// Pi-layer with nonzero twist exponent w at the top generator: exponent chains
// are determined directly; boundary equations become constraints on the span.
std::vector<PtdrRow> solve_pi_chain_layer(const Tower& t, size_t top, const Monomial& am,
                                          const RingElement& a, const std::vector<RingElement>& f,
                                          long w, const SolverOptions& opts) {
    const Tower sub = t.prefix(top);
    const size_t d = f.size();
    const Generator& g = t.gen(top);
    std::vector<std::map<long, RingElement>> fsplit;
    for (const auto& fi : f) fsplit.push_back(split_by_gen(fi, top));
    long lo = 0, hi = 0;
    bool any = false;
    for (const auto& m : fsplit)
        for (const auto& [e, part] : m) {
            if (!any) lo = hi = e;
            any = true;
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    if (!any) {
        // no rhs and no homogeneous solutions for w != 0: c free, g = 0
        std::vector<Column> cols;
        for (size_t i = 0; i < d; ++i) {
            Column col;
            col.c.assign(d, Cyclotomic());
            col.c[i] = Cyclotomic(1L);
            cols.push_back(std::move(col));
        }
        return finish_rows(t, a, f, std::move(cols));
    }
    // a = a_rest * p^w
    RingElement::Exps rest_e = am.exps;
    if (rest_e.size() <= top) rest_e.resize(top + 1, 0);
    rest_e[top] = 0;
    RingElement a_rest;
    a_rest.add_term(RingElement::trim(rest_e), am.coeff);
    RingElement a_rest_inv = invert_monomial(sub, a_rest);

    // columns: one per original parameter; g-parts per exponent determined below
    std::vector<Column> cols;
    for (size_t i = 0; i < d; ++i) {
        Column col;
        col.c.assign(d, Cyclotomic());
        col.c[i] = Cyclotomic(1L);
        cols.push_back(std::move(col));
    }
    std::vector<std::map<long, RingElement>> gparts(d);  // per column, exponent -> sub element
    auto gpart = [&](size_t k, long e) -> RingElement {
        auto it = gparts[k].find(e);
        return it == gparts[k].end() ? RingElement() : it->second;
    };
    std::vector<std::vector<RingElement>> constraints(d);

    // process equations sigma(g_e) alpha^e - a_rest g_{e-w} = sum_i c_i f_{i,e};
    // each determines g_{e-w} from g_e, so walk against the chain direction
    std::vector<long> eqs;
    for (long e = lo; e <= hi; ++e) eqs.push_back(e);
    if (w > 0) std::reverse(eqs.begin(), eqs.end());
    for (long e : eqs) {
        // alpha^e over the subtower
        RingElement alpha_e = e >= 0 ? re_pow(sub, g.multiplicand, e)
                                     : re_pow(sub, invert_monomial(sub, g.multiplicand), -e);
        long target = e - w;
        bool in_range = (w > 0) ? (target >= lo) : (target <= hi);
        for (size_t k = 0; k < d; ++k) {
            RingElement rhs_k;  // f_{k,e} for the unit column k
            auto it = fsplit[k].find(e);
            if (it != fsplit[k].end()) rhs_k = it->second;
            RingElement val = re_mul(sub, alpha_e, apply_sigma(sub, gpart(k, e), 1)) - rhs_k;
            if (in_range) {
                gparts[k][target] = re_mul(sub, a_rest_inv, val);
            } else {
                constraints[k].push_back(val);  // must vanish
            }
        }
    }
    // kernel over the constraint system
    size_t ncons = constraints[0].size();
    std::vector<Column> final_cols;
    if (ncons == 0) {
        final_cols = cols;
        for (size_t k = 0; k < d; ++k)
            for (const auto& [e, part] : gparts[k]) final_cols[k].g = final_cols[k].g + lift_from_sub(part, top, e);
    } else {
        // mu-kernel of stacked constraints
        std::vector<RingElement> stacked(d);
        for (size_t k = 0; k < d; ++k) {
            // pack all constraints of column k into one element with disjoint slots:
            // use an extra virtual exponent slot per constraint index via lift
            RingElement pack;
            for (size_t ci = 0; ci < ncons; ++ci)
                pack = pack + lift_from_sub(constraints[k][ci], top, (long)ci + 1);
            stacked[k] = pack;
        }
        for (const auto& mu : element_kernel(stacked)) {
            Column col;
            col.c.assign(d, Cyclotomic());
            RingElement gtotal;
            for (size_t k = 0; k < d; ++k) {
                if (mu[k].is_zero()) continue;
                col.c[k] = mu[k];
                for (const auto& [e, part] : gparts[k])
                    gtotal = gtotal + lift_from_sub(part, top, e).scaled(Ground(mu[k]));
            }
            col.g = gtotal;
            final_cols.push_back(std::move(col));
        }
    }
    return finish_rows(t, a, f, std::move(final_cols));
}

std::vector<PtdrRow> solve_sigma_layer(const Tower& t, size_t top, const RingElement& a,
                                       const std::vector<RingElement>& f, const SolverOptions& opts) {
    const Tower sub = t.prefix(top);
    const size_t d = f.size();
    std::vector<std::map<long, RingElement>> fsplit;
    long D = 0;
    for (const auto& fi : f) {
        fsplit.push_back(split_by_gen(fi, top));
        for (const auto& [e, part] : fsplit.back()) D = std::max(D, e + 1);
    }
    // columns evolve level by level from s^D down to s^0
    std::vector<Column> cols;
    for (size_t i = 0; i < d; ++i) {
        Column col;
        col.c.assign(d, Cyclotomic());
        col.c[i] = Cyclotomic(1L);
        cols.push_back(std::move(col));
    }
    for (long j = D; j >= 0; --j) {
        // rhs of column k at level j: [s^j](sum_i c_i f_i - (sigma(G_k) - a G_k))
        std::vector<RingElement> rhs;
        for (const auto& col : cols) {
            RingElement R;
            for (size_t i = 0; i < d; ++i)
                if (!col.c[i].is_zero()) R = R + f[i].scaled(Ground(col.c[i]));
            R = R - (apply_sigma(t, col.g, 1) - re_mul(t, a, col.g));
            auto parts = split_by_gen(R, top);
            for (const auto& [e, part] : parts)
                if (e > j) throw Error("sigma layer: level invariant violated");
            auto it = parts.find(j);
            rhs.push_back(it == parts.end() ? RingElement() : it->second);
        }
        auto rows = first_order_rec(sub, a, rhs, opts);
        std::vector<Column> next;
        for (const auto& r : rows) {
            Column col;
            col.c.assign(d, Cyclotomic());
            for (size_t k = 0; k < cols.size(); ++k) {
                if (r.c[k].is_zero()) continue;
                for (size_t i = 0; i < d; ++i) col.c[i] = col.c[i] + r.c[k] * cols[k].c[i];
                col.g = col.g + cols[k].g.scaled(Ground(r.c[k]));
            }
            col.g = col.g + lift_from_sub(r.g, top, j);
            next.push_back(std::move(col));
        }
        cols = std::move(next);
    }
    return finish_rows(t, a, f, std::move(cols));
}

std::vector<PtdrRow> first_order_rec(const Tower& t, const RingElement& a,
                                     const std::vector<RingElement>& f, const SolverOptions& opts) {
    if (t.size() == 0) {
        auto ag = a.as_ground();
        if (!ag || ag->is_zero()) throw Error("solve_first_order: bad ground twist");
        std::vector<Ground> fg;
        for (const auto& fi : f) {
            auto gopt = fi.as_ground();
            if (!gopt) throw Error("solve_first_order: element wider than tower");
            fg.push_back(*gopt);
        }
        auto rows = solve_pflde(-*ag, fg, opts);
        std::vector<PtdrRow> out;
        for (auto& r : rows) out.push_back(PtdrRow{std::move(r.c), RingElement(std::move(r.g))});
        return out;
    }
    size_t top = t.size() - 1;
    const Generator& g = t.gen(top);
    Monomial am = as_unit_monomial(t, a);
    long w = top < am.exps.size() ? am.exps[top] : 0;

    if (g.kind == GenKind::Sigma) {
        if (w != 0) throw Error("sigma layer: twist involves the top generator");
        return solve_sigma_layer(t, top, a, f, opts);
    }
    if (g.kind == GenKind::Pi) {
        if (w != 0) return solve_pi_chain_layer(t, top, am, a, f, w, opts);
        // support = union of f-supports plus the homogeneous exponent
        std::set<long> support;
        for (const auto& fi : f)
            for (const auto& [e, c] : split_by_gen(fi, top))
                if (!c.is_zero()) support.insert(e);
        Tower sub = t.prefix(top);
        if (auto lh = homogeneous_exponent(sub, a, g.multiplicand)) support.insert(*lh);
        return solve_split_layer(t, top, a, f, support, /*a_gen=*/false, opts);
    }
    // A-layer
    if (w != 0) throw Error("A layer: twist involves the top generator");
    std::set<long> support;
    for (const auto& fi : f)
        for (const auto& [e, c] : split_by_gen(fi, top))
            if (!c.is_zero()) support.insert(e);
    Tower sub = t.prefix(top);
    if (auto lh = homogeneous_exponent(sub, a, RingElement(Ground(g.alpha_const)))) {
        long r = ((*lh) % g.order + g.order) % g.order;
        support.insert(r);
    }
    return solve_split_layer(t, top, a, f, support, /*a_gen=*/true, opts);
}

}  // namespace

std::vector<PtdrRow> solve_first_order(const Tower& t, const RingElement& a,
                                       const std::vector<RingElement>& f, const SolverOptions& opts) {
    for (const auto& fi : f)
        if (fi.width() > t.size()) throw Error("solve_first_order: element wider than tower");
    return first_order_rec(t, a, f, opts);
}

std::vector<PtdrRow> solve_ptdr_recursive(const Tower& t, const std::vector<RingElement>& f,
                                          const SolverOptions& opts) {
    if (!t.all_verified(t.size())) throw Error("verify tower first");
    return reduce_ptdr_rows(t, solve_first_order(t, re_one(), f, opts));
}

std::vector<PtdrRow> solve_ptdr_interlacing(const Tower& t, const std::vector<RingElement>& f,
                                            const SolverOptions& opts,
                                            std::vector<InterlacingTrace>* traces) {
    if (!t.all_verified(t.size())) throw Error("verify tower first");
    ComponentContext ctx = make_components(t);
    const unsigned n = ctx.idem.n;
    const size_t d = f.size();
    if (n == 1) {
        auto rows = solve_ptdr_recursive(t, f, opts);
        if (traces)
            for (const auto& r : rows) traces->push_back(InterlacingTrace{{r.g}, RingElement(), RingElement()});
        return rows;
    }
    // f~_{i,s} = (sum_{j<n} sigma^j(f_i)) | y -> alpha^{n-1-s}
    std::vector<RingElement> fsum(d);
    for (size_t i = 0; i < d; ++i)
        for (unsigned j = 0; j < n; ++j) fsum[i] = fsum[i] + apply_sigma(t, f[i], j);

    struct CompRows {
        ComponentSolver solver;
        std::vector<PtdrRow> rows;
    };
    auto solve_component = [&](unsigned s) {
        CompRows cr{make_component_solver(ctx, s), {}};
        std::vector<RingElement> inputs;
        for (size_t i = 0; i < d; ++i) inputs.push_back(cr.solver.to_solver(ctx.component(fsum[i], s)));
        cr.rows = solve_first_order(cr.solver.solver_tower, re_one(), inputs, opts);
        return cr;
    };
    std::vector<CompRows> comp(n);
    if (n > 1) {
        std::vector<std::future<CompRows>> futs;
        for (unsigned s = 0; s < n; ++s)
            futs.push_back(std::async(std::launch::async, solve_component, s));
        for (unsigned s = 0; s < n; ++s) comp[s] = futs[s].get();
    }

    // intersect the parameter spaces; carry per-component solutions in ambient coords
    struct WRow {
        KVec c;
        std::vector<RingElement> gs;  // per component, ambient coords
    };
    std::vector<WRow> acc;
    for (unsigned s = 0; s < n; ++s) {
        std::vector<WRow> rows_s;
        for (const auto& r : comp[s].rows) {
            WRow w;
            w.c = r.c;
            w.gs.assign(n, RingElement());
            w.gs[s] = comp[s].solver.from_solver(r.g);
            rows_s.push_back(std::move(w));
        }
        if (s == 0) {
            acc = std::move(rows_s);
            continue;
        }
        // kernel of [acc.c | -rows_s.c]
        KMat m(d, KVec(acc.size() + rows_s.size()));
        for (size_t i = 0; i < d; ++i) {
            for (size_t k = 0; k < acc.size(); ++k) m[i][k] = acc[k].c[i];
            for (size_t k = 0; k < rows_s.size(); ++k) m[i][acc.size() + k] = -rows_s[k].c[i];
        }
        std::vector<WRow> next;
        for (const auto& v : kernel_basis(std::move(m), acc.size() + rows_s.size())) {
            WRow w;
            w.c.assign(d, Cyclotomic());
            w.gs.assign(n, RingElement());
            for (size_t k = 0; k < acc.size(); ++k) {
                if (v[k].is_zero()) continue;
                for (size_t i = 0; i < d; ++i) w.c[i] = w.c[i] + v[k] * acc[k].c[i];
                for (unsigned q = 0; q < n; ++q) w.gs[q] = w.gs[q] + acc[k].gs[q].scaled(Ground(v[k]));
            }
            for (size_t k = 0; k < rows_s.size(); ++k) {
                if (v[acc.size() + k].is_zero()) continue;
                w.gs[s] = w.gs[s] + rows_s[k].gs[s].scaled(Ground(v[acc.size() + k]));
            }
            next.push_back(std::move(w));
        }
        acc = std::move(next);
    }

    // finish each row: g~ = sum e_s g_s; f' = c.f - (sigma(g~) - g~) in K[y];
    // g' from the constant ring; g = g~ + g'
    std::vector<PtdrRow> out;
    for (const auto& w : acc) {
        RingElement gt = ctx.recompose(w.gs);
        RingElement rhs;
        for (size_t i = 0; i < d; ++i)
            if (!w.c[i].is_zero()) rhs = rhs + f[i].scaled(Ground(w.c[i]));
        RingElement resid = rhs - (apply_sigma(t, gt, 1) - gt);
        // residual must lie in K[y]
        std::vector<Cyclotomic> coeffs(n);
        for (const auto& [e, c] : resid.terms()) {
            long yexp = 0;
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if ((long)i != ctx.idem.a_index) throw Error("interlacing: residual not in K[y]");
                yexp = e[i];
            }
            auto cv = c.as_constant();
            if (!cv) throw Error("interlacing: residual not in K[y]");
            coeffs[yexp] = *cv;
        }
        auto gc = telescope_constant_ring(ctx.idem.alpha, n, coeffs);
        RingElement gprime;
        for (size_t i = 0; i < gc.size(); ++i) {
            if (gc[i].is_zero()) continue;
            gprime = gprime + re_gen(t, ctx.idem.a_index, (long)i).scaled(Ground(gc[i]));
        }
        RingElement g = gt + gprime;
        RingElement lhs = apply_sigma(t, g, 1) - g;
        if (lhs != rhs) throw Error("interlacing: internal verification failed");
        if (traces) traces->push_back(InterlacingTrace{w.gs, resid, gprime});
        out.push_back(PtdrRow{w.c, g});
    }
    return reduce_ptdr_rows(t, std::move(out));
}

std::vector<PtdrRow> solve_ptdr(const Tower& t, const std::vector<RingElement>& f, Strategy strategy,
                                const SolverOptions& opts) {
    if (strategy == Strategy::Auto)
        strategy = t.a_indices().size() == 1 ? Strategy::Interlacing : Strategy::Recursive;
    if (strategy == Strategy::Interlacing) return solve_ptdr_interlacing(t, f, opts);
    return solve_ptdr_recursive(t, f, opts);
}

std::vector<PtdrRow> reduce_ptdr_rows(const Tower& t, std::vector<PtdrRow> rows) {
    if (rows.empty()) return rows;
    const size_t d = rows[0].c.size();
    // coordinates: c-part then linearized g-part
    std::vector<const RingElement*> elems;
    for (const auto& r : rows) elems.push_back(&r.g);
    ElementFrame fr = ElementFrame::build(elems);
    std::vector<KVec> vecs;
    for (const auto& r : rows) {
        KVec v = r.c;
        KVec gc = fr.coords(r.g);
        v.insert(v.end(), gc.begin(), gc.end());
        vecs.push_back(std::move(v));
    }
    std::vector<KVec> reduced = row_reduce(std::move(vecs));
    std::vector<PtdrRow> out;
    std::optional<size_t> const_row;
    for (const auto& v : reduced) {
        PtdrRow r;
        r.c.assign(v.begin(), v.begin() + d);
        // rebuild g from coordinates
        RingElement g;
        for (size_t ki = 0; ki < fr.keys.size(); ++ki) {
            std::vector<Cyclotomic> pc;
            for (long deg = 0; deg <= fr.maxdeg; ++deg) pc.push_back(v[d + ki * (fr.maxdeg + 1) + deg]);
            KPoly num = KPoly::from_coeffs(pc);
            if (num.is_zero()) continue;
            RingElement term;
            term.add_term(fr.keys[ki], Ground(num, fr.den));
            g = g + term;
        }
        r.g = g;
        bool czero = std::all_of(r.c.begin(), r.c.end(), [](const Cyclotomic& x) { return x.is_zero(); });
        if (czero) {
            auto cc = r.g.as_ground();
            if (cc && cc->as_constant()) const_row = out.size();
        }
        out.push_back(std::move(r));
    }
    // normalize the additive constant of the c != 0 rows against the constant row
    if (const_row) {
        Cyclotomic unit = *out[*const_row].g.as_ground()->as_constant();
        for (size_t i = 0; i < out.size(); ++i) {
            if (i == *const_row) continue;
            Ground cc = out[i].g.constant_coeff();
            if (cc.is_zero()) continue;
            // constant coefficient of the polynomial part of the unit term
            KPoly q, rem;
            KPoly::divrem(cc.num(), cc.den(), q, rem);
            Cyclotomic c0 = q.coeff(0);
            if (c0.is_zero()) continue;
            out[i].g = out[i].g - out[*const_row].g.scaled(Ground(c0 / unit));
        }
    }
    return out;
}

bool ptdr_in_span(const Tower& t, const std::vector<PtdrRow>& rows, const KVec& c,
                  const RingElement& g) {
    std::vector<const RingElement*> elems;
    for (const auto& r : rows) elems.push_back(&r.g);
    elems.push_back(&g);
    ElementFrame fr = ElementFrame::build(elems);
    size_t d = c.size();
    size_t gdim = fr.keys.size() * (size_t)(fr.maxdeg + 1);
    KMat m(d + gdim, KVec(rows.size()));
    KVec rhs(d + gdim);
    for (size_t k = 0; k < rows.size(); ++k) {
        for (size_t i = 0; i < d; ++i) m[i][k] = rows[k].c[i];
        KVec gc = fr.coords(rows[k].g);
        for (size_t i = 0; i < gdim; ++i) m[d + i][k] = gc[i];
    }
    for (size_t i = 0; i < d; ++i) rhs[i] = c[i];
    KVec gc = fr.coords(g);
    for (size_t i = 0; i < gdim; ++i) rhs[d + i] = gc[i];
    return solve_linear(std::move(m), std::move(rhs)).has_value();
}

CreativeResult creative_telescope_elements(const Tower& t,
                                           const std::function<RingElement(size_t)>& summand,
                                           size_t max_order, Strategy strategy,
                                           const SolverOptions& opts) {
    std::vector<RingElement> f;
    for (size_t d = 1; d <= max_order; ++d) {
        f.push_back(summand(d - 1));
        auto rows = solve_ptdr(t, f, strategy, opts);
        for (const auto& r : rows) {
            bool nontrivial = false;
            for (const auto& ci : r.c)
                if (!ci.is_zero()) nontrivial = true;
            if (nontrivial) return CreativeResult{d, r.c, r.g};
        }
    }
    throw CapError("no recurrence found up to order cap");
}

IndependenceResult certify_independence(const Tower& t, const std::vector<RingElement>& f,
                                        Strategy strategy, const SolverOptions& opts) {
    auto rows = solve_ptdr(t, f, strategy, opts);
    IndependenceResult res;
    res.strategy_used = strategy;
    res.dimension = rows.size();
    for (const auto& r : rows) {
        bool nontrivial = false;
        for (const auto& ci : r.c)
            if (!ci.is_zero()) nontrivial = true;
        if (nontrivial) {
            res.independent = false;
            res.c = r.c;
            res.g = r.g;
            return res;
        }
    }
    res.independent = true;
    return res;
}

}  // namespace ringsum

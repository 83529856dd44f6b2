#include "ringsum/interlacing.hpp"

namespace ringsum {

namespace {

// f with the A-generator substituted by the constant v (a power of alpha).
RingElement substitute_a(const Tower& t, const RingElement& f, size_t a_index, const Cyclotomic& v) {
    RingElement out;
    for (const auto& [e, c] : f.terms()) {
        long exp = a_index < e.size() ? e[a_index] : 0;
        RingElement::Exps rest = e;
        if (a_index < rest.size()) rest[a_index] = 0;
        Ground coeff = c;
        if (exp != 0) coeff = coeff * Ground(v.pow(exp));
        out.add_term(RingElement::trim(rest), coeff);
    }
    return out;
}

}  // namespace

IdempotentBasis idempotents(const Tower& t) {
    IdempotentBasis b;
    auto agens = t.a_indices();
    if (agens.size() > 1) throw Error("multiple unmerged A-generators; merge first");
    if (agens.empty()) {
        b.n = 1;
        b.alpha = Cyclotomic(1L);
        b.a_index = -1;
        b.e = {re_one()};
        return b;
    }
    size_t ai = agens[0];
    const Generator& g = t.gen(ai);
    b.n = g.order;
    b.alpha = g.alpha_const;
    b.a_index = (int)ai;
    auto ord = b.alpha.root_of_unity_order();
    if (!ord || *ord != b.n) throw Error("idempotents: A-multiplicand not primitive of its order");
    RingElement y = re_gen(t, ai);
    for (unsigned s = 0; s < b.n; ++s) {
        RingElement num = re_one();
        Cyclotomic den(1L);
        Cyclotomic at = b.alpha.pow((long)(b.n - 1 - s));
        for (unsigned j = 0; j < b.n; ++j) {
            if (j == b.n - 1 - s) continue;
            Cyclotomic aj = b.alpha.pow((long)j);
            num = re_mul(t, num, y - RingElement(Ground(aj)));
            den = den * (at - aj);
        }
        b.e.push_back(num.scaled(Ground(den.inverse())));
    }
    // Idempotent algebra, asserted at construction.
    RingElement sum;
    for (unsigned s = 0; s < b.n; ++s) {
        if (re_mul(t, b.e[s], b.e[s]) != b.e[s]) throw Error("idempotents: e_s^2 != e_s");
        for (unsigned j = s + 1; j < b.n; ++j)
            if (!re_mul(t, b.e[s], b.e[j]).is_zero()) throw Error("idempotents: not orthogonal");
        sum = sum + b.e[s];
        // shift law e_s(alpha y) = e_{s+1 mod n}
        RingElement shifted;
        for (const auto& [e, c] : b.e[s].terms()) {
            long exp = (size_t)b.a_index < e.size() ? e[b.a_index] : 0;
            shifted.add_term(e, c * Ground(b.alpha.pow(exp)));
        }
        if (shifted != b.e[(s + 1) % b.n]) throw Error("idempotents: shift law violated");
    }
    if (sum != re_one()) throw Error("idempotents: sum != 1");
    return b;
}

RingElement ComponentContext::component(const RingElement& f, unsigned s) const {
    if (idem.a_index < 0) return f;
    return substitute_a(tower, f, (size_t)idem.a_index, idem.alpha.pow((long)(idem.n - 1 - s)));
}

std::vector<RingElement> ComponentContext::decompose(const RingElement& f) const {
    std::vector<RingElement> out;
    for (unsigned s = 0; s < idem.n; ++s) out.push_back(component(f, s));
    return out;
}

RingElement ComponentContext::recompose(const std::vector<RingElement>& comps) const {
    RingElement out;
    for (unsigned s = 0; s < idem.n && s < comps.size(); ++s)
        out = out + re_mul(tower, idem.e[s], comps[s]);
    return out;
}

RingElement ComponentContext::sigma_s(const RingElement& f, unsigned s) const {
    RingElement img = apply_sigma(tower, f, idem.n);
    return component(img, s);
}

ComponentContext make_components(const Tower& t) {
    ComponentContext ctx;
    ctx.tower = t;
    ctx.idem = idempotents(t);
    return ctx;
}

std::vector<RingElement> sigma_on_components(const ComponentContext& ctx,
                                             std::vector<RingElement> comps, long j) {
    if (j < 0) throw Error("sigma_on_components: negative shift unsupported");
    unsigned n = ctx.idem.n;
    comps.resize(n);
    for (long step = 0; step < j; ++step) {
        std::vector<RingElement> next(n);
        for (unsigned i = 0; i < n; ++i) {
            unsigned prev = (i + n - 1) % n;
            RingElement img = apply_sigma(ctx.tower, comps[prev], 1);
            next[i] = ctx.component(img, i);  // y -> alpha^{n-1-i}
        }
        comps = std::move(next);
    }
    return comps;
}

ComponentSolver make_component_solver(const ComponentContext& ctx, unsigned s) {
    ComponentSolver cs;
    cs.s = s;
    cs.n = ctx.idem.n;
    cs.a_index = ctx.idem.a_index;
    const Tower& t = ctx.tower;
    Cyclotomic stride(Rat(cs.n));

    // transform an A-free ambient element into solver coordinates
    auto transform = [&](const RingElement& f, const std::vector<long>& newidx) {
        RingElement out;
        for (const auto& [e, c] : f.terms()) {
            RingElement::Exps ne;
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if ((long)i == cs.a_index) throw Error("component solver: element not A-free");
                long ni = newidx[i];
                if (ni < 0) throw Error("component solver: bad index");
                if ((long)ne.size() <= ni) ne.resize(ni + 1, 0);
                ne[ni] = e[i];
            }
            out.add_term(RingElement::trim(ne), c.scaled_arg(stride, Cyclotomic()));
        }
        return out;
    };

    std::vector<long> newidx(t.size(), -1);
    Tower st;
    bool verified_all = true;
    for (size_t i = 0; i < t.size(); ++i) {
        const Generator& g = t.gen(i);
        if ((long)i == cs.a_index) continue;
        newidx[i] = (long)st.size();
        cs.old_of_new.push_back(i);
        if (g.verified != Verified::VerifiedRPS) verified_all = false;
        if (g.kind == GenKind::Pi) {
            // alpha~ = prod_{k<n} sigma^k(alpha): free of A- and Sigma-generators
            RingElement am = re_one();
            for (unsigned k = 0; k < cs.n; ++k)
                am = re_mul(t, am, apply_sigma(t, g.multiplicand, (long)k));
            st = st.adjoin_pi(g.name, transform(am, newidx));
        } else if (g.kind == GenKind::Sigma) {
            // beta~_s = (sum_{k<n} sigma^k(beta)) | y -> alpha^{n-1-s}
            RingElement bs;
            for (unsigned k = 0; k < cs.n; ++k) bs = bs + apply_sigma(t, g.summand, (long)k);
            bs = ctx.component(bs, s);
            st = st.adjoin_sigma(g.name, transform(bs, newidx));
        } else {
            throw Error("component solver: unexpected A-generator");
        }
        if (verified_all) st = st.with_verified(st.size() - 1, Verified::VerifiedRPS);
    }
    cs.solver_tower = st;
    return cs;
}

RingElement ComponentSolver::to_solver(const RingElement& f) const {
    Cyclotomic stride{Rat(n)};
    RingElement out;
    for (const auto& [e, c] : f.terms()) {
        RingElement::Exps ne;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if ((long)i == a_index) throw Error("component solver: element not A-free");
            long ni = -1;
            for (size_t k = 0; k < old_of_new.size(); ++k)
                if (old_of_new[k] == i) ni = (long)k;
            if (ni < 0) throw Error("component solver: bad index");
            if ((long)ne.size() <= ni) ne.resize(ni + 1, 0);
            ne[ni] = e[i];
        }
        out.add_term(RingElement::trim(ne), c.scaled_arg(stride, Cyclotomic()));
    }
    return out;
}

RingElement ComponentSolver::from_solver(const RingElement& f) const {
    Cyclotomic inv_stride{Rat(1, n)};
    RingElement out;
    for (const auto& [e, c] : f.terms()) {
        RingElement::Exps ne;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            size_t oi = old_of_new.at(i);
            if (ne.size() <= oi) ne.resize(oi + 1, 0);
            ne[oi] = e[i];
        }
        out.add_term(RingElement::trim(ne), c.scaled_arg(inv_stride, Cyclotomic()));
    }
    return out;
}

std::vector<std::pair<std::string, RingElement>> component_automorphism_table(
    const ComponentContext& ctx, unsigned s) {
    std::vector<std::pair<std::string, RingElement>> out;
    for (size_t i = 0; i < ctx.tower.size(); ++i) {
        if ((long)i == ctx.idem.a_index) continue;
        out.emplace_back(ctx.tower.gen(i).name, ctx.sigma_s(re_gen(ctx.tower, i), s));
    }
    return out;
}

}  // namespace ringsum

#include "ringsum/tower.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ringsum {

RingElement::Exps RingElement::trim(Exps e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
}

RingElement::RingElement(Ground g) {
    if (!g.is_zero()) terms_.emplace(Exps{}, std::move(g));
}

size_t RingElement::width() const {
    size_t w = 0;
    for (const auto& [e, c] : terms_) w = std::max(w, e.size());
    return w;
}

void RingElement::add_term(Exps e, Ground c) {
    if (c.is_zero()) return;
    e = trim(std::move(e));
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(std::move(e), std::move(c));
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    RingElement r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement RingElement::operator-() const {
    RingElement r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

RingElement RingElement::scaled(const Ground& g) const {
    RingElement r;
    if (g.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * g);
    return r;
}

Ground RingElement::constant_coeff() const {
    auto it = terms_.find(Exps{});
    return it == terms_.end() ? Ground() : it->second;
}

std::optional<Ground> RingElement::as_ground() const {
    if (terms_.empty()) return Ground();
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    return std::nullopt;
}

bool RingElement::monomial(Exps* e, Ground* coeff) const {
    if (terms_.size() != 1) return false;
    if (e) *e = terms_.begin()->first;
    if (coeff) *coeff = terms_.begin()->second;
    return true;
}

int Tower::index_of(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i]->name == name) return (int)i;
    return -1;
}

Tower Tower::prefix(size_t k) const {
    Tower t;
    t.gens_.assign(gens_.begin(), gens_.begin() + std::min(k, gens_.size()));
    return t;
}

unsigned Tower::session_order() const {
    unsigned m = 2;
    for (const auto& g : gens_)
        if (g->kind == GenKind::A) m = std::lcm(m, g->order);
    return m;
}

bool Tower::all_verified(size_t upto) const {
    for (size_t i = 0; i < upto && i < gens_.size(); ++i)
        if (gens_[i]->verified != Verified::VerifiedRPS) return false;
    return true;
}

std::vector<size_t> Tower::a_indices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i]->kind == GenKind::A) out.push_back(i);
    return out;
}

Tower Tower::adjoin_a(const std::string& name, unsigned order, const Cyclotomic& alpha) const {
    if (order < 2) throw Error("A-extension: order must be > 1");
    if (index_of(name) >= 0) throw Error("duplicate generator name: " + name);
    if (!(alpha.pow(order)).is_one()) throw Error("A-extension: alpha^order != 1");
    auto g = std::make_shared<Generator>();
    g->name = name;
    g->kind = GenKind::A;
    g->order = order;
    g->alpha_const = alpha;
    Tower t = *this;
    t.gens_.push_back(g);
    // sigma^{-1}(y) = alpha^{-1} y
    RingElement inv;
    RingElement::Exps e(t.size(), 0);
    e.back() = 1;
    inv.add_term(e, Ground(alpha.inverse()));
    auto g2 = std::make_shared<Generator>(*g);
    g2->inv_image = inv;
    t.gens_.back() = g2;
    return t;
}

Tower Tower::adjoin_pi(const std::string& name, const RingElement& alpha) const {
    if (index_of(name) >= 0) throw Error("duplicate generator name: " + name);
    RingElement::Exps e;
    Ground coeff;
    if (!alpha.monomial(&e, &coeff) || coeff.is_zero())
        throw Error("Pi-extension: multiplicand must be a nonzero monomial");
    if (e.size() > size()) throw Error("Pi-extension: multiplicand references unknown generators");
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (gen(i).kind != GenKind::Pi)
            throw Error("Pi-extension: multiplicand must be free of A- and Sigma-generators");
    }
    auto g = std::make_shared<Generator>();
    g->name = name;
    g->kind = GenKind::Pi;
    g->multiplicand = alpha;
    Tower t = *this;
    t.gens_.push_back(g);
    // sigma^{-1}(p) = sigma^{-1}(alpha)^{-1} p
    RingElement alpha_inv_shift = apply_sigma(*this, alpha, -1);
    RingElement inv_mult = invert_monomial(*this, alpha_inv_shift);
    RingElement inv;
    for (const auto& [me, mc] : inv_mult.terms()) {
        RingElement::Exps ee = me;
        ee.resize(t.size(), 0);
        ee.back() = 1;
        inv.add_term(ee, mc);
    }
    auto g2 = std::make_shared<Generator>(*g);
    g2->inv_image = inv;
    t.gens_.back() = g2;
    return t;
}

Tower Tower::adjoin_sigma(const std::string& name, const RingElement& beta) const {
    if (index_of(name) >= 0) throw Error("duplicate generator name: " + name);
    if (beta.width() > size()) throw Error("Sigma-extension: summand references unknown generators");
    auto g = std::make_shared<Generator>();
    g->name = name;
    g->kind = GenKind::Sigma;
    g->summand = beta;
    Tower t = *this;
    t.gens_.push_back(g);
    // sigma^{-1}(s) = s - sigma^{-1}(beta)
    RingElement inv;
    RingElement::Exps e(t.size(), 0);
    e.back() = 1;
    inv.add_term(e, Ground(1L));
    inv = inv - apply_sigma(*this, beta, -1);
    auto g2 = std::make_shared<Generator>(*g);
    g2->inv_image = inv;
    t.gens_.back() = g2;
    return t;
}

Tower Tower::with_verified(size_t i, Verified v) const {
    auto g = std::make_shared<Generator>(gen(i));
    g->verified = v;
    return with_generator(i, g);
}

Tower Tower::with_generator(size_t i, std::shared_ptr<const Generator> g) const {
    Tower t = *this;
    t.gens_.at(i) = std::move(g);
    return t;
}

RingElement re_one() { return RingElement(Ground(1L)); }

RingElement re_gen(const Tower& t, size_t idx, long exp) {
    if (idx >= t.size()) throw Error("re_gen: bad index");
    const Generator& g = t.gen(idx);
    if (g.kind == GenKind::A) {
        exp = ((exp % g.order) + g.order) % g.order;
    } else if (g.kind == GenKind::Sigma && exp < 0) {
        throw Error("non-invertible element");
    }
    RingElement r;
    if (exp == 0) return re_one();
    RingElement::Exps e(idx + 1, 0);
    e[idx] = exp;
    r.add_term(e, Ground(1L));
    return r;
}

RingElement re_fold(const Tower& t, const RingElement& f) {
    RingElement r;
    for (const auto& [e, c] : f.terms()) {
        RingElement::Exps ee = e;
        for (size_t i = 0; i < ee.size(); ++i) {
            if (ee[i] == 0 || i >= t.size()) continue;
            const Generator& g = t.gen(i);
            if (g.kind == GenKind::A)
                ee[i] = ((ee[i] % g.order) + g.order) % g.order;
            else if (g.kind == GenKind::Sigma && ee[i] < 0)
                throw Error("non-invertible element");
        }
        r.add_term(std::move(ee), c);
    }
    return r;
}

RingElement re_mul(const Tower& t, const RingElement& a, const RingElement& b) {
    RingElement r;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            RingElement::Exps e(std::max(ea.size(), eb.size()), 0);
            for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
            for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] != 0 && i < t.size() && t.gen(i).kind == GenKind::A) {
                    unsigned ord = t.gen(i).order;
                    e[i] = ((e[i] % ord) + ord) % ord;
                }
            }
            r.add_term(std::move(e), ca * cb);
        }
    }
    return r;
}

RingElement invert_monomial(const Tower& t, const RingElement& f) {
    RingElement::Exps e;
    Ground coeff;
    if (!f.monomial(&e, &coeff) || coeff.is_zero()) throw Error("non-invertible element");
    RingElement::Exps inv_e(e.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        const Generator& g = t.gen(i);
        switch (g.kind) {
            case GenKind::Pi:
                inv_e[i] = -e[i];
                break;
            case GenKind::A:
                inv_e[i] = (long)((g.order - (e[i] % g.order)) % g.order);
                break;
            case GenKind::Sigma:
                throw Error("non-invertible element");
        }
    }
    RingElement r;
    r.add_term(std::move(inv_e), coeff.inverse());
    return r;
}

RingElement re_pow(const Tower& t, const RingElement& a, long e) {
    if (e == 0) return re_one();
    RingElement base = a;
    if (e < 0) {
        RingElement inv;
        if (!is_unit(t, a, &inv)) throw Error("non-invertible element");
        base = inv;
        e = -e;
    }
    RingElement r = re_one();
    unsigned long n = (unsigned long)e;
    while (n > 0) {
        if (n & 1) r = re_mul(t, r, base);
        base = re_mul(t, base, base);
        n >>= 1;
    }
    return r;
}

Ground re_coeff(const RingElement& f, const RingElement::Exps& e) {
    auto key = RingElement::trim(e);
    auto it = f.terms().find(key);
    return it == f.terms().end() ? Ground() : it->second;
}

namespace {

// sigma^{+-1}(t_i)^e, memoized per call through gen_pows.
RingElement sigma_gen_pow(const Tower& t, size_t idx, long e, bool inverse,
                          std::map<std::pair<size_t, long>, RingElement>& memo) {
    auto key = std::make_pair(idx, e);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const Generator& g = t.gen(idx);
    RingElement image;
    if (!inverse) {
        switch (g.kind) {
            case GenKind::A: {
                image = re_gen(t, idx).scaled(Ground(g.alpha_const));
                break;
            }
            case GenKind::Pi:
                image = re_mul(t, g.multiplicand, re_gen(t, idx));
                break;
            case GenKind::Sigma:
                image = re_gen(t, idx) + g.summand;
                break;
        }
    } else {
        image = g.inv_image;
    }
    RingElement r;
    if (g.kind == GenKind::Sigma) {
        if (e < 0) throw Error("non-invertible element");
        r = re_pow(t, image, e);  // binomial expansion through repeated squaring
    } else {
        // image is a monomial; negative powers invert it directly
        if (e >= 0)
            r = re_pow(t, image, e);
        else
            r = re_pow(t, invert_monomial(t, image), -e);
    }
    memo.emplace(key, r);
    return r;
}

RingElement apply_sigma_once(const Tower& t, const RingElement& f, bool inverse) {
    std::map<std::pair<size_t, long>, RingElement> memo;
    RingElement out;
    for (const auto& [e, c] : f.terms()) {
        RingElement term(c.shifted(inverse ? -1 : 1));
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            term = re_mul(t, term, sigma_gen_pow(t, i, e[i], inverse, memo));
        }
        out = out + term;
    }
    return out;
}

}  // namespace

RingElement apply_sigma(const Tower& t, const RingElement& f, long j) {
    RingElement r = f;
    for (long i = 0; i < std::labs(j); ++i) r = apply_sigma_once(t, r, j < 0);
    return r;
}

std::map<long, RingElement> split_by_gen(const RingElement& f, size_t idx) {
    std::map<long, RingElement> out;
    for (const auto& [e, c] : f.terms()) {
        long exp = idx < e.size() ? e[idx] : 0;
        RingElement::Exps rest = e;
        if (idx < rest.size()) rest[idx] = 0;
        out[exp].add_term(std::move(rest), c);
    }
    return out;
}

RingElement join_gen(const Tower& t, size_t idx, const std::map<long, RingElement>& parts) {
    RingElement out;
    for (const auto& [exp, part] : parts) {
        RingElement shifted = re_mul(t, part, re_gen(t, idx, exp));
        out = out + shifted;
    }
    return out;
}

int top_gen_index(const RingElement& f) {
    int top = -1;
    for (const auto& [e, c] : f.terms()) top = std::max(top, (int)e.size() - 1);
    return top;
}

namespace {

// Lagrange idempotents of K[y]/(y^lam - 1) in the character basis:
// e_k = (1/lam) sum_j zeta^{-kj} y^j, with e_k(zeta^k) = 1.
std::vector<std::vector<Cyclotomic>> character_idempotents(unsigned lam) {
    Cyclotomic z = Cyclotomic::zeta(lam);
    Cyclotomic inv_l = Cyclotomic(Rat(1, lam));
    std::vector<std::vector<Cyclotomic>> out(lam);
    for (unsigned k = 0; k < lam; ++k) {
        out[k].resize(lam);
        for (unsigned j = 0; j < lam; ++j) out[k][j] = z.pow(-(long)(k * j)) * inv_l;
    }
    return out;
}

// All character substitutions of the A-generators: f with y_i -> zeta_{lam_i}^{k_i}.
// Returns pairs (tuple, substituted element free of A-generators).
void character_components(const Tower& t, const RingElement& f, const std::vector<size_t>& agens,
                          std::vector<std::pair<std::vector<unsigned>, RingElement>>& out) {
    std::vector<unsigned> tuple(agens.size(), 0);
    size_t total = 1;
    for (size_t a : agens) total *= t.gen(a).order;
    out.clear();
    out.reserve(total);
    for (size_t n = 0; n < total; ++n) {
        size_t rem = n;
        for (size_t i = 0; i < agens.size(); ++i) {
            tuple[i] = rem % t.gen(agens[i]).order;
            rem /= t.gen(agens[i]).order;
        }
        RingElement comp;
        for (const auto& [e, c] : f.terms()) {
            Cyclotomic scale(1L);
            RingElement::Exps rest = e;
            for (size_t i = 0; i < agens.size(); ++i) {
                size_t a = agens[i];
                long exp = a < e.size() ? e[a] : 0;
                if (exp != 0) {
                    scale = scale * Cyclotomic::zeta(t.gen(a).order).pow((long)tuple[i] * exp);
                    rest[a] = 0;
                }
            }
            comp.add_term(RingElement::trim(rest), c * Ground(scale));
        }
        out.emplace_back(tuple, std::move(comp));
    }
}

bool is_unit_a_free(const Tower& t, const RingElement& f, RingElement* inverse) {
    RingElement::Exps e;
    Ground coeff;
    if (!f.monomial(&e, &coeff) || coeff.is_zero()) return false;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0 && t.gen(i).kind == GenKind::Sigma) return false;
    }
    if (inverse) *inverse = invert_monomial(t, f);
    return true;
}

}  // namespace

bool is_unit(const Tower& t, const RingElement& f, RingElement* inverse) {
    for (const auto& [e, c] : f.terms())
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && t.gen(i).verified != Verified::VerifiedRPS)
                throw Error("verify tower first");
    if (f.is_zero()) return false;
    std::vector<size_t> agens;
    for (const auto& [e, c] : f.terms())
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && t.gen(i).kind == GenKind::A &&
                std::find(agens.begin(), agens.end(), i) == agens.end())
                agens.push_back(i);
    std::sort(agens.begin(), agens.end());
    if (agens.empty()) return is_unit_a_free(t, f, inverse);

    std::vector<std::pair<std::vector<unsigned>, RingElement>> comps;
    character_components(t, f, agens, comps);
    std::vector<RingElement> inv_comps;
    for (const auto& [tuple, comp] : comps) {
        RingElement ci;
        if (!is_unit_a_free(t, comp, inverse ? &ci : nullptr)) return false;
        if (inverse) inv_comps.push_back(std::move(ci));
    }
    if (inverse) {
        // inverse = sum over tuples of (prod_i e_{k_i}(y_i)) * component inverse
        std::vector<std::vector<std::vector<Cyclotomic>>> idem;
        for (size_t a : agens) idem.push_back(character_idempotents(t.gen(a).order));
        RingElement total;
        for (size_t n = 0; n < comps.size(); ++n) {
            const auto& tuple = comps[n].first;
            RingElement factor = inv_comps[n];
            for (size_t i = 0; i < agens.size(); ++i) {
                RingElement ei;
                for (unsigned j = 0; j < t.gen(agens[i]).order; ++j) {
                    const Cyclotomic& cj = idem[i][tuple[i]][j];
                    if (cj.is_zero()) continue;
                    RingElement::Exps ee(agens[i] + 1, 0);
                    ee[agens[i]] = j;
                    ei.add_term(std::move(ee), Ground(cj));
                }
                factor = re_mul(t, factor, ei);
            }
            total = total + factor;
        }
        *inverse = total;
    }
    return true;
}

bool is_zero_divisor(const Tower& t, const RingElement& f) {
    std::vector<size_t> agens = t.a_indices();
    std::vector<size_t> used;
    for (size_t a : agens)
        for (const auto& [e, c] : f.terms())
            if (a < e.size() && e[a] != 0) {
                used.push_back(a);
                break;
            }
    if (used.size() > 1) throw Error("multiple unmerged A-generators; merge first");
    if (f.is_zero()) return true;  // zero input: annihilates everything
    if (used.empty()) return false;
    std::vector<std::pair<std::vector<unsigned>, RingElement>> comps;
    character_components(t, f, used, comps);
    for (const auto& [tuple, comp] : comps)
        if (comp.is_zero()) return true;
    return false;
}

RingElement Reordering::transport(const RingElement& f) const {
    RingElement out;
    for (const auto& [e, c] : f.terms()) {
        RingElement::Exps ne(perm.size(), 0);
        for (size_t newi = 0; newi < perm.size(); ++newi) {
            size_t oldi = perm[newi];
            ne[newi] = oldi < e.size() ? e[oldi] : 0;
        }
        out.add_term(RingElement::trim(ne), c);
    }
    return out;
}

RingElement Reordering::transport_back(const RingElement& f) const {
    RingElement out;
    for (const auto& [e, c] : f.terms()) {
        RingElement::Exps ne(inv.size(), 0);
        for (size_t oldi = 0; oldi < inv.size(); ++oldi) {
            size_t newi = inv[oldi];
            ne[oldi] = newi < e.size() ? e[newi] : 0;
        }
        out.add_term(RingElement::trim(ne), c);
    }
    return out;
}

Reordering reorder(const Tower& t, TowerOrder target) {
    // basic check: Pi-multiplicands free of A/Sigma generators (enforced at
    // adjoin time, re-checked here for towers assembled elsewhere)
    for (size_t i = 0; i < t.size(); ++i) {
        if (t.gen(i).kind != GenKind::Pi) continue;
        for (const auto& [e, c] : t.gen(i).multiplicand.terms())
            for (size_t j = 0; j < e.size(); ++j)
                if (e[j] != 0 && t.gen(j).kind != GenKind::Pi)
                    throw Error("reordering requires basic extension");
    }
    // nesting depth of Pi and Sigma generators
    std::vector<long> depth(t.size(), 0);
    for (size_t i = 0; i < t.size(); ++i) {
        const Generator& g = t.gen(i);
        const RingElement* data = nullptr;
        if (g.kind == GenKind::Pi) data = &g.multiplicand;
        if (g.kind == GenKind::Sigma) data = &g.summand;
        long d = 1;
        if (data)
            for (const auto& [e, c] : data->terms())
                for (size_t j = 0; j < e.size(); ++j)
                    if (e[j] != 0 && t.gen(j).kind == g.kind) d = std::max(d, depth[j] + 1);
        depth[i] = d;
    }
    auto rank = [&](size_t i) -> long {
        GenKind k = t.gen(i).kind;
        switch (target) {
            case TowerOrder::APS:
                return k == GenKind::A ? 0 : k == GenKind::Pi ? 1 : 2;
            case TowerOrder::PAS:
                return k == GenKind::Pi ? 0 : k == GenKind::A ? 1 : 2;
            case TowerOrder::Depth:
                if (k == GenKind::Pi) return depth[i];
                if (k == GenKind::A) return 1000000;
                return 2000000 + depth[i];
        }
        return 0;
    };
    std::vector<size_t> perm(t.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](size_t a, size_t b) { return rank(a) < rank(b); });

    Reordering r;
    r.perm = perm;
    r.inv.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) r.inv[perm[i]] = i;
    // rebuild the tower in the new order, re-indexing generator data
    Tower nt;
    for (size_t newi = 0; newi < perm.size(); ++newi) {
        const Generator& g = t.gen(perm[newi]);
        switch (g.kind) {
            case GenKind::A:
                nt = nt.adjoin_a(g.name, g.order, g.alpha_const);
                break;
            case GenKind::Pi:
                nt = nt.adjoin_pi(g.name, r.transport(g.multiplicand));
                break;
            case GenKind::Sigma:
                nt = nt.adjoin_sigma(g.name, r.transport(g.summand));
                break;
        }
        if (g.verified != Verified::Unverified) nt = nt.with_verified(newi, g.verified);
    }
    r.tower = nt;
    return r;
}

std::string re_to_string(const Tower& t, const RingElement& f, const std::vector<std::string>& params) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        std::string cs = c.to_string(params);
        bool sumlike = render_sum_like(cs);
        if (!first) {
            if (!cs.empty() && cs[0] == '-' && !sumlike) {
                os << "-";
                cs = cs.substr(1);
            } else {
                os << "+";
            }
        }
        first = false;
        bool composite = sumlike;
        bool has_gen = !e.empty();
        if (!has_gen) {
            os << cs;
            continue;
        }
        if (cs == "1") {
        } else if (cs == "-1") {
            os << "-";
        } else {
            os << (composite ? "(" + cs + ")" : cs) << "*";
        }
        bool firstg = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!firstg) os << "*";
            firstg = false;
            os << t.gen(i).name;
            if (e[i] != 1) os << "^" << (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
        }
    }
    return os.str();
}

}  // namespace ringsum

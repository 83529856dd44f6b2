#include "ringsum/solvers.hpp"

#include <algorithm>
#include <numeric>

namespace ringsum {

namespace {

// ---- PFLDE ----------------------------------------------------------------

// Abramov universal denominator for b1(x) p(x+1) + b0(x) p(x) = rhs.
KPoly universal_denominator(const KPoly& b1, const KPoly& b0) {
    KPoly A = b1.shifted(-1);
    KPoly B = b0;
    KPoly u(Cyclotomic(1L));
    if (A.degree() < 1 || B.degree() < 1) return u;
    std::set<long> disp = dispersion_set(A, B);
    for (auto it = disp.rbegin(); it != disp.rend(); ++it) {
        long j = *it;
        KPoly d = KPoly::gcd(A, B.shifted(j));
        if (d.degree() < 1) continue;
        A = KPoly::divexact(A, d);
        B = KPoly::divexact(B, d.shifted(-j));
        for (long i = 0; i <= j; ++i) u = u * d.shifted(-i);
    }
    return u;
}

}  // namespace

std::vector<PfldeRow> solve_pflde(const Ground& a, const std::vector<Ground>& f,
                                  const SolverOptions& opts) {
    if (a.is_zero()) throw Error("solve_pflde: a must be nonzero");
    const size_t d = f.size();
    // common denominator of the right-hand sides
    KPoly D(Cyclotomic(1L));
    for (const auto& fi : f)
        if (!fi.is_zero()) D = KPoly::lcm(D, fi.den());
    KPoly b1 = a.den() * D;
    KPoly b0 = a.num() * D;
    std::vector<KPoly> rhs(d);
    for (size_t i = 0; i < d; ++i) {
        if (f[i].is_zero()) continue;
        rhs[i] = f[i].num() * KPoly::divexact(D, f[i].den()) * a.den();
    }

    KPoly u = universal_denominator(b1, b0);
    KPoly A2 = b1 * u;
    KPoly B2 = b0 * u.shifted(1);
    std::vector<KPoly> C(d);
    KPoly uu = u * u.shifted(1);
    long degC = -1;
    for (size_t i = 0; i < d; ++i) {
        C[i] = rhs[i] * uu;
        degC = std::max(degC, C[i].degree());
    }

    long delta = std::max(A2.degree(), B2.degree());
    Cyclotomic lead = A2.coeff(delta) + B2.coeff(delta);
    long N = -1;
    if (!lead.is_zero()) {
        N = degC - delta;
    } else {
        N = std::max(N, degC - delta + 1);
        // indicial root: N * [A2]_delta + [A2]_{delta-1} + [B2]_{delta-1} = 0
        Cyclotomic denom = A2.coeff(delta);
        if (!denom.is_zero()) {
            Cyclotomic cand = -(A2.coeff(delta - 1) + B2.coeff(delta - 1)) / denom;
            auto r = cand.as_rational();
            if (r && r->get_den() == 1 && *r >= 0) {
                if (!Int(r->get_num()).fits_slong_p()) throw CapError("degree cap exceeded");
                N = std::max(N, (long)r->get_num().get_si());
            }
        }
    }
    if (N > opts.degree_cap) throw CapError("degree cap exceeded");

    // unknowns: p_0..p_N then c_1..c_d
    size_t np = N >= 0 ? (size_t)(N + 1) : 0;
    size_t cols = np + d;
    long maxdeg = std::max(std::max(A2.degree(), B2.degree()) + std::max<long>(N, 0), degC);
    KMat m;
    for (long row = 0; row <= maxdeg; ++row) m.emplace_back(cols, Cyclotomic());
    if (maxdeg >= 0) {
        // contribution of p_j via A2 * (x+1)^j and B2 * x^j
        for (size_t j = 0; j < np; ++j) {
            KPoly xj = KPoly::variable().pow(j);
            KPoly term = A2 * KPoly::variable().shifted(1).pow(j) + B2 * xj;
            for (long k = 0; k <= term.degree(); ++k) m[k][j] = m[k][j] + term.coeff(k);
        }
        for (size_t i = 0; i < d; ++i) {
            for (long k = 0; k <= C[i].degree(); ++k) m[k][np + i] = m[k][np + i] - C[i].coeff(k);
        }
    }
    std::vector<KVec> kernel = kernel_basis(std::move(m), cols);

    std::vector<PfldeRow> out;
    for (const auto& v : kernel) {
        PfldeRow row;
        std::vector<Cyclotomic> pcoef(v.begin(), v.begin() + np);
        row.g = Ground(KPoly::from_coeffs(pcoef), u);
        row.c.assign(v.begin() + np, v.end());
        // re-substitution check: sigma(g) + a g == sum c_i f_i
        Ground lhs = row.g.shifted(1) + a * row.g;
        Ground sum;
        for (size_t i = 0; i < d; ++i) sum = sum + Ground(row.c[i]) * f[i];
        if (lhs != sum) throw Error("solve_pflde: internal verification failed");
        bool trivial = row.g.is_zero() &&
                       std::all_of(row.c.begin(), row.c.end(), [](const Cyclotomic& x) { return x.is_zero(); });
        if (!trivial) out.push_back(std::move(row));
    }
    return out;
}

// ---- PMT -------------------------------------------------------------------

std::pair<Cyclotomic, Ground> monic_split(const Ground& f) {
    if (f.is_zero()) throw Error("monic_split: zero input");
    Cyclotomic c = f.num().lead();  // denominator is monic by canonical form
    Ground m(f.num() * c.inverse(), f.den());
    return {c, m};
}

namespace {

// gcd-free basis refinement over K[x] with integer shifts: after refinement
// every pair (b, b'(x+j)) is either coprime or equal, and every input is an
// exact product of basis elements (up to shifts recorded separately).
struct ShiftBasis {
    std::vector<KPoly> elems;  // monic, degree >= 1, pairwise distinct

    void insert(KPoly w) {
        w = w.monic();
        if (w.degree() < 1) return;
        // self-overlap first
        for (long j : dispersion_set_signed(w, w)) {
            if (j == 0) continue;
            KPoly g = KPoly::gcd(w, w.shifted(j));
            if (g.degree() < 1) continue;
            insert(g);
            insert(KPoly::divexact(w, g));
            return;
        }
        for (size_t bi = 0; bi < elems.size(); ++bi) {
            KPoly b = elems[bi];
            for (long j : dispersion_set_signed(w, b)) {
                KPoly bs = b.shifted(j);
                KPoly g = KPoly::gcd(w, bs);
                if (g.degree() < 1) continue;
                if (g == bs && g == w) {
                    if (j == 0) return;  // already present
                    continue;            // exact shift copy of a basis element: keep both
                }
                if (g == bs) {
                    // b(x+j) divides w properly: split w
                    insert(g);
                    insert(KPoly::divexact(w, g));
                    return;
                }
                if (g == w) {
                    // w divides b(x+j) properly: split b, then retry w
                    elems.erase(elems.begin() + bi);
                    insert(g.shifted(-j));
                    insert(KPoly::divexact(b, g.shifted(-j)));
                    insert(w);
                    return;
                }
                // proper overlap: split both
                elems.erase(elems.begin() + bi);
                insert(g.shifted(-j));
                insert(KPoly::divexact(b, g.shifted(-j)));
                insert(g);
                insert(KPoly::divexact(w, g));
                return;
            }
        }
        elems.push_back(w);
    }

    // exact factorization of a monic polynomial over the basis
    std::map<size_t, long> factor(KPoly p) const {
        std::map<size_t, long> out;
        for (size_t i = 0; i < elems.size(); ++i) {
            while (p.degree() >= elems[i].degree() && KPoly::divides(elems[i], p)) {
                p = KPoly::divexact(p, elems[i]);
                out[i]++;
            }
        }
        if (p.degree() != 0) throw Error("shift basis: incomplete factorization");
        return out;
    }
};

// Detects b == rep(x + j); towers only need the offset via the subleading
// coefficient: j = ([x^{d-1}]b - [x^{d-1}]rep) / d.
std::optional<long> shift_offset(const KPoly& rep, const KPoly& b) {
    if (rep.degree() != b.degree()) return std::nullopt;
    long deg = rep.degree();
    Cyclotomic diff = (b.coeff(deg - 1) - rep.coeff(deg - 1)) / Cyclotomic(Rat(deg));
    auto r = diff.as_rational();
    if (!r || r->get_den() != 1) return std::nullopt;
    if (!Int(r->get_num()).fits_slong_p()) return std::nullopt;
    long j = r->get_num().get_si();
    if (b == rep.shifted(j)) return j;
    return std::nullopt;
}

struct ConstFactors {
    Int omega_exp;                 // exponent of zeta_L
    std::map<Int, long> primes;    // rational prime exponents
    std::map<size_t, long> polys;  // indices into the parameter-poly basis
};

// gcd-free basis over Z[params] for the parameter-polynomial parts.
struct PolyBasis {
    std::vector<ParamPoly> elems;  // primitive, positive leading coefficient, nonconstant

    void insert(ParamPoly w) {
        w = w.primitive_part();
        if (w.total_degree() < 1) return;
        for (size_t bi = 0; bi < elems.size(); ++bi) {
            ParamPoly g = ParamPoly::gcd(w, elems[bi]);
            if (g.total_degree() < 1) continue;
            if (g == elems[bi] && g == w) return;
            if (g == elems[bi]) {
                insert(ParamPoly::divexact(w, g));
                insert(g);
                return;
            }
            ParamPoly b = elems[bi];
            elems.erase(elems.begin() + bi);
            insert(g);
            insert(ParamPoly::divexact(b, g));
            if (g != w) insert(ParamPoly::divexact(w, g));
            return;
        }
        elems.push_back(w);
    }

    std::map<size_t, long> factor(ParamPoly p) const {
        std::map<size_t, long> out;
        for (size_t i = 0; i < elems.size(); ++i) {
            while (ParamPoly::divides(elems[i], p)) {
                p = ParamPoly::divexact(p, elems[i]);
                out[i]++;
            }
        }
        if (p.total_degree() != 0) throw Error("parameter basis: incomplete factorization");
        return out;
    }
};

}  // namespace

MultiplicativeSystem::MultiplicativeSystem(const std::vector<Ground>& f) : f_(f) {
    const size_t d = f.size();
    std::vector<Ground> monics(d);
    consts_.resize(d);
    unsigned L = 2;
    for (size_t i = 0; i < d; ++i) {
        if (f[i].is_zero()) throw Error("solve_pmt: zero input");
        auto [c, m] = monic_split(f[i]);
        consts_[i] = c;
        monics[i] = m;
        L = std::lcm(L, c.order());
    }
    modulus_ = Int(L);

    // shift-class basis from all numerators and denominators
    ShiftBasis basis;
    for (const auto& m : monics) {
        if (m.num().degree() >= 1) basis.insert(m.num());
        if (m.den().degree() >= 1) basis.insert(m.den());
    }
    // group basis elements into shift classes
    std::vector<long> elem_class(basis.elems.size()), elem_offset(basis.elems.size());
    for (size_t i = 0; i < basis.elems.size(); ++i) {
        long cls = -1, off = 0;
        for (size_t r = 0; r < class_reps_.size(); ++r) {
            if (auto j = shift_offset(class_reps_[r], basis.elems[i])) {
                cls = (long)r;
                off = *j;
                break;
            }
        }
        if (cls < 0) {
            cls = (long)class_reps_.size();
            class_reps_.push_back(basis.elems[i]);
            off = 0;
        }
        elem_class[i] = cls;
        elem_offset[i] = off;
    }
    class_exps_.resize(d);
    for (size_t i = 0; i < d; ++i) {
        auto record = [&](const KPoly& p, long sign) {
            if (p.degree() < 1) return;
            for (const auto& [idx, e] : basis.factor(p)) {
                auto key = std::make_pair((size_t)elem_class[idx], elem_offset[idx]);
                class_exps_[i][key] += sign * e;
                if (class_exps_[i][key] == 0) class_exps_[i].erase(key);
            }
        };
        record(monics[i].num(), +1);
        record(monics[i].den(), -1);
    }

    // constants: c = zeta_L^a * (rational) * (parameter polynomial parts)
    Cyclotomic omega = Cyclotomic::zeta(L);
    PolyBasis pbasis;
    std::vector<ConstFactors> cf(d);
    std::vector<std::pair<ParamPoly, ParamPoly>> parts(d);  // primitive num/den of param part
    for (size_t i = 0; i < d; ++i) {
        std::optional<ParamRational> rat;
        Int aexp(0);
        Cyclotomic cur = consts_[i];
        for (unsigned a = 0; a < L; ++a) {
            auto r = cur.as_param_rational();
            if (r) {
                rat = r;
                aexp = Int(a);
                break;
            }
            cur = cur * omega.inverse();
        }
        if (!rat) throw UnsupportedError("unsupported constant in multiplicative telescoping");
        ParamPoly num = rat->num(), den = rat->den();
        Int cn = num.content(), cd = den.content();
        bool neg = num.leading_coeff() < 0;  // den has positive lead by canonical form
        cf[i].omega_exp = aexp + (neg ? Int(L / 2) : Int(0));
        for (const auto& [p, e] : factor_integer(cn)) cf[i].primes[p] += e;
        for (const auto& [p, e] : factor_integer(cd)) cf[i].primes[p] -= e;
        ParamPoly pn = num.primitive_part(), pd = den.primitive_part();
        parts[i] = {pn, pd};
        if (pn.total_degree() >= 1) pbasis.insert(pn);
        if (pd.total_degree() >= 1) pbasis.insert(pd);
    }
    for (size_t i = 0; i < d; ++i) {
        auto [pn, pd] = parts[i];
        if (pn.total_degree() >= 1)
            for (const auto& [idx, e] : pbasis.factor(pn)) cf[i].polys[idx] += e;
        if (pd.total_degree() >= 1)
            for (const auto& [idx, e] : pbasis.factor(pd)) cf[i].polys[idx] -= e;
    }

    // homogeneous conditions
    std::set<size_t> classes;
    for (const auto& m : class_exps_)
        for (const auto& [key, e] : m) classes.insert(key.first);
    for (size_t cls : classes) {
        std::vector<Int> row(d, Int(0));
        for (size_t i = 0; i < d; ++i) {
            long total = 0;
            for (const auto& [key, e] : class_exps_[i])
                if (key.first == cls) total += e;
            row[i] = Int(total);
        }
        rows_.push_back(std::move(row));
    }
    std::set<Int> primes;
    for (const auto& c : cf)
        for (const auto& [p, e] : c.primes) primes.insert(p);
    for (const Int& p : primes) {
        std::vector<Int> row(d, Int(0));
        for (size_t i = 0; i < d; ++i) {
            auto it = cf[i].primes.find(p);
            row[i] = it == cf[i].primes.end() ? Int(0) : Int(it->second);
        }
        rows_.push_back(std::move(row));
    }
    for (size_t b = 0; b < pbasis.elems.size(); ++b) {
        std::vector<Int> row(d, Int(0));
        for (size_t i = 0; i < d; ++i) {
            auto it = cf[i].polys.find(b);
            row[i] = it == cf[i].polys.end() ? Int(0) : Int(it->second);
        }
        rows_.push_back(std::move(row));
    }
    congruence_.resize(d);
    for (size_t i = 0; i < d; ++i) congruence_[i] = cf[i].omega_exp;
}

Ground MultiplicativeSystem::witness(const std::vector<Int>& z) const {
    const size_t d = f_.size();
    if (z.size() != d) throw Error("witness: dimension mismatch");
    // combine per-class positional exponents
    std::map<std::pair<size_t, long>, Int> b;
    for (size_t i = 0; i < d; ++i)
        for (const auto& [key, e] : class_exps_[i]) {
            b[key] += z[i] * Int(e);
            if (b[key] == 0) b.erase(key);
        }
    Ground w(1L);
    for (const auto& [key, exp] : b) {
        auto [cls, s] = key;
        if (s == 0 || exp == 0) continue;
        const KPoly& q = class_reps_[cls];
        Ground h(1L);
        if (s > 0) {
            for (long i = 0; i < s; ++i) h = h * Ground(q.shifted(i), KPoly(Cyclotomic(1L)));
        } else {
            Ground prod(1L);
            for (long i = s; i < 0; ++i) prod = prod * Ground(q.shifted(i), KPoly(Cyclotomic(1L)));
            h = prod.inverse();
        }
        if (!exp.fits_slong_p()) throw CapError("witness exponent too large");
        w = w * h.pow(exp.get_si());
    }
    // verify exactly
    Ground target(1L);
    for (size_t i = 0; i < d; ++i) {
        if (!z[i].fits_slong_p()) throw CapError("witness exponent too large");
        target = target * f_[i].pow(z[i].get_si());
    }
    if (w.shifted(1) / w != target) throw Error("solve_pmt: internal verification failed");
    return w;
}

std::vector<PmtRow> MultiplicativeSystem::solve() const {
    auto lattice = integer_kernel_with_congruence(rows_, f_.size(), congruence_, modulus_);
    std::vector<PmtRow> out;
    for (auto& z : lattice) {
        PmtRow row;
        row.witness = witness(z);
        row.z = std::move(z);
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<PmtRow> solve_pmt(const std::vector<Ground>& f, const SolverOptions& opts) {
    return MultiplicativeSystem(f).solve();
}

// ---- constant-ring telescoping ----------------------------------------------

std::vector<Cyclotomic> telescope_constant_ring(const Cyclotomic& alpha, unsigned order,
                                                const std::vector<Cyclotomic>& rhs) {
    auto ord = alpha.root_of_unity_order();
    if (!ord || *ord != order) throw Error("telescope_constant_ring: alpha not primitive of given order");
    if (!rhs.empty() && !rhs[0].is_zero()) throw Error("constant component not summable");
    std::vector<Cyclotomic> g(std::min<size_t>(rhs.size(), order));
    for (size_t i = 1; i < g.size(); ++i) {
        if (rhs[i].is_zero()) continue;
        g[i] = rhs[i] / (alpha.pow((long)i) - Cyclotomic(1L));
    }
    return g;
}

}  // namespace ringsum

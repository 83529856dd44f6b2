#include "ringsum/params.hpp"

#include <algorithm>
#include <sstream>

namespace ringsum {

long mono_degree(const Mono& m) {
    long d = 0;
    for (int e : m) d += e;
    return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
    long da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int ea = i < a.size() ? a[i] : 0;
        int eb = i < b.size() ? b[i] : 0;
        if (ea != eb) return ea < eb;
    }
    return false;
}

ParamPoly::ParamPoly(Int c) {
    if (c != 0) terms_.emplace(Mono{}, std::move(c));
}

ParamPoly ParamPoly::variable(int index) {
    ParamPoly p;
    Mono m(index + 1, 0);
    m[index] = 1;
    p.terms_.emplace(std::move(m), Int(1));
    return p;
}

bool ParamPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

const Int& ParamPoly::constant_value() const {
    static const Int zero(0);
    if (terms_.empty()) return zero;
    if (!is_constant()) throw Error("ParamPoly: not a constant");
    return terms_.begin()->second;
}

long ParamPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return mono_degree(terms_.rbegin()->first);
}

long ParamPoly::degree_in(int var) const {
    long d = -1;
    for (const auto& [m, c] : terms_) {
        long e = var < (int)m.size() ? m[var] : 0;
        d = std::max(d, e);
    }
    return terms_.empty() ? -1 : d;
}

int ParamPoly::max_var() const {
    int v = -1;
    for (const auto& [m, c] : terms_) {
        for (int i = (int)m.size() - 1; i >= 0; --i) {
            if (m[i] != 0) {
                v = std::max(v, i);
                break;
            }
        }
    }
    return v;
}

void ParamPoly::add_term(const Mono& m, const Int& c) {
    if (c == 0) return;
    Mono key = m;
    while (!key.empty() && key.back() == 0) key.pop_back();
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

ParamPoly ParamPoly::pow(unsigned long e) const {
    ParamPoly r{Int(1)};
    ParamPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

const Int& ParamPoly::leading_coeff() const {
    if (terms_.empty()) throw Error("ParamPoly: leading_coeff of zero");
    return terms_.rbegin()->second;
}

const Mono& ParamPoly::leading_mono() const {
    if (terms_.empty()) throw Error("ParamPoly: leading_mono of zero");
    return terms_.rbegin()->first;
}

Int ParamPoly::content() const {
    Int g(0);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ParamPoly ParamPoly::primitive_part() const {
    if (is_zero()) return *this;
    Int c = content();
    if (leading_coeff() < 0) c = -c;
    ParamPoly r;
    for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff / c);
    return r;
}

namespace {

// View of a multivariate polynomial as univariate in `var` with ParamPoly
// coefficients, used by the recursive division and gcd routines.
std::map<long, ParamPoly> coeffs_in(const ParamPoly& p, int var) {
    std::map<long, ParamPoly> out;
    for (const auto& [m, c] : p.terms()) {
        long e = var < (int)m.size() ? m[var] : 0;
        Mono rest = m;
        if (var < (int)rest.size()) rest[var] = 0;
        out[e].add_term(rest, c);
    }
    return out;
}

ParamPoly assemble_in(const std::map<long, ParamPoly>& coeffs, int var) {
    ParamPoly r;
    for (const auto& [e, c] : coeffs) {
        Mono shift(var + 1, 0);
        shift[var] = (int)e;
        ParamPoly xe;
        xe.add_term(shift, Int(1));
        r = r + c * xe;
    }
    return r;
}

}  // namespace

bool ParamPoly::divides(const ParamPoly& b, const ParamPoly& a) {
    if (b.is_zero()) return a.is_zero();
    try {
        (void)divexact(a, b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

ParamPoly ParamPoly::divexact(const ParamPoly& a, const ParamPoly& b) {
    if (b.is_zero()) throw Error("ParamPoly: division by zero");
    if (a.is_zero()) return a;
    if (b.is_constant()) {
        const Int& d = b.constant_value();
        ParamPoly r;
        for (const auto& [m, c] : a.terms_) {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
            if (rem != 0) throw Error("ParamPoly: inexact division");
            r.terms_.emplace(m, std::move(q));
        }
        return r;
    }
    int var = b.max_var();
    auto ac = coeffs_in(a, var);
    auto bc = coeffs_in(b, var);
    long db = bc.rbegin()->first;
    const ParamPoly& blead = bc.rbegin()->second;
    std::map<long, ParamPoly> q;
    while (!ac.empty()) {
        long da = ac.rbegin()->first;
        if (da < db) throw Error("ParamPoly: inexact division");
        ParamPoly qc = divexact(ac.rbegin()->second, blead);
        q[da - db] = qc;
        for (const auto& [e, c] : bc) {
            auto it = ac.find(e + da - db);
            ParamPoly cur = it == ac.end() ? ParamPoly() : it->second;
            cur = cur - qc * c;
            if (cur.is_zero())
                ac.erase(e + da - db);
            else
                ac[e + da - db] = cur;
        }
    }
    return assemble_in(q, var);
}

namespace {

// Pseudo-remainder in `var`: lc(b)^(da-db+1) * a mod b.
ParamPoly pseudo_rem(const ParamPoly& a, const ParamPoly& b, int var) {
    auto ac = coeffs_in(a, var);
    auto bc = coeffs_in(b, var);
    long db = bc.rbegin()->first;
    const ParamPoly blead = bc.rbegin()->second;
    while (!ac.empty() && ac.rbegin()->first >= db) {
        long da = ac.rbegin()->first;
        ParamPoly alead = ac.rbegin()->second;
        // ac := blead*ac - alead*x^(da-db)*b
        std::map<long, ParamPoly> next;
        for (const auto& [e, c] : ac) {
            if (e == da) continue;
            next[e] = blead * c;
        }
        for (const auto& [e, c] : bc) {
            if (e == db) continue;
            long pos = e + da - db;
            auto it = next.find(pos);
            ParamPoly cur = it == next.end() ? ParamPoly() : it->second;
            cur = cur - alead * c;
            if (cur.is_zero())
                next.erase(pos);
            else
                next[pos] = cur;
        }
        ac = std::move(next);
    }
    return assemble_in(ac, var);
}

ParamPoly content_in(const ParamPoly& p, int var) {
    ParamPoly g;
    for (const auto& [e, c] : coeffs_in(p, var)) g = ParamPoly::gcd(g, c);
    return g;
}

}  // namespace

ParamPoly ParamPoly::gcd(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part() * ParamPoly(b.content());
    if (b.is_zero()) return a.primitive_part() * ParamPoly(a.content());
    if (a.is_constant() && b.is_constant()) {
        Int g = int_gcd(a.constant_value(), b.constant_value());
        return ParamPoly(g);
    }
    int var = std::max(a.max_var(), b.max_var());
    if (var < 0) {
        Int g = int_gcd(a.constant_value(), b.constant_value());
        return ParamPoly(g);
    }
    ParamPoly ca = content_in(a, var), cb = content_in(b, var);
    ParamPoly cg = gcd(ca, cb);
    ParamPoly pa = divexact(a, ca), pb = divexact(b, cb);
    // Primitive PRS in `var`.
    auto deg_of = [var](const ParamPoly& p) -> long {
        auto c = coeffs_in(p, var);
        return c.empty() ? -1 : c.rbegin()->first;
    };
    while (!pb.is_zero()) {
        if (deg_of(pa) < deg_of(pb)) std::swap(pa, pb);
        if (deg_of(pb) == 0) {
            // pb free of var; common divisors are var-free and divide pa's content (= 1)
            pa = gcd(content_in(pa, var), pb);
            break;
        }
        ParamPoly r = pseudo_rem(pa, pb, var);
        pa = pb;
        if (r.is_zero()) {
            pb = ParamPoly();
        } else {
            pb = divexact(r, content_in(r, var));
            if (pb.leading_coeff() < 0) pb = -pb;
        }
    }
    ParamPoly g = cg * pa;
    if (g.leading_coeff() < 0) g = -g;
    return g;
}

Rat ParamPoly::evaluate(const std::vector<Rat>& values) const {
    Rat total(0);
    for (const auto& [m, c] : terms_) {
        Rat t(c);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= values.size()) throw Error("ParamPoly: missing parameter value");
            Rat p(1);
            for (int j = 0; j < m[i]; ++j) p *= values[i];
            t *= p;
        }
        total += t;
    }
    total.canonicalize();
    return total;
}

std::string ParamPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending graded-lex, matching the usual written order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? "-" : "+");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_var = mono_degree(m) > 0;
        if (a != 1 || !has_var) {
            os << a.get_str();
            if (has_var) os << "*";
        }
        bool firstv = true;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

ParamRational::ParamRational(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("division by zero");
    if (num_.is_zero()) {
        den_ = ParamPoly(Int(1));
        return;
    }
    ParamPoly g = ParamPoly::gcd(num_, den_);
    if (!(g.is_constant() && g.constant_value() == 1)) {
        num_ = ParamPoly::divexact(num_, g);
        den_ = ParamPoly::divexact(den_, g);
    }
    if (den_.leading_coeff() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

ParamRational::ParamRational(const Rat& q)
    : ParamRational(ParamPoly(Int(q.get_num())), ParamPoly(Int(q.get_den()))) {}

ParamRational ParamRational::variable(int index) {
    return ParamRational(ParamPoly::variable(index), ParamPoly(Int(1)));
}

bool ParamRational::is_one() const {
    return num_.is_constant() && num_.constant_value() == 1 && den_.is_constant() && den_.constant_value() == 1;
}

bool ParamRational::is_constant() const { return num_.is_constant() && den_.is_constant(); }

Rat ParamRational::constant_value() const {
    if (!is_constant()) throw Error("ParamRational: not a constant");
    Rat r(num_.constant_value(), den_.constant_value());
    r.canonicalize();
    return r;
}

ParamRational operator+(const ParamRational& a, const ParamRational& b) {
    return ParamRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ParamRational operator-(const ParamRational& a, const ParamRational& b) {
    return ParamRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

ParamRational operator*(const ParamRational& a, const ParamRational& b) {
    return ParamRational(a.num_ * b.num_, a.den_ * b.den_);
}

ParamRational operator/(const ParamRational& a, const ParamRational& b) {
    if (b.is_zero()) throw Error("division by zero");
    return ParamRational(a.num_ * b.den_, a.den_ * b.num_);
}

ParamRational ParamRational::operator-() const {
    ParamRational r = *this;
    r.num_ = -r.num_;
    return r;
}

ParamRational ParamRational::inverse() const {
    if (is_zero()) throw Error("division by zero");
    return ParamRational(den_, num_);
}

Rat ParamRational::evaluate(const std::vector<Rat>& values) const {
    Rat d = den_.evaluate(values);
    if (d == 0) throw Error("ParamRational: denominator vanishes at sample point");
    Rat r = num_.evaluate(values) / d;
    r.canonicalize();
    return r;
}

std::string ParamRational::to_string(const std::vector<std::string>& names) const {
    if (den_.is_constant() && den_.constant_value() == 1) {
        return num_.to_string(names);
    }
    std::string n = num_.to_string(names);
    std::string d = den_.to_string(names);
    bool npar = num_.terms().size() > 1;
    bool dpar = den_.terms().size() > 1 || den_.total_degree() > 0;
    std::string out = npar ? "(" + n + ")" : n;
    out += "/";
    out += dpar ? "(" + d + ")" : d;
    return out;
}

bool render_sum_like(const std::string& s) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && i > 0 && (c == '+' || c == '-')) return true;
    }
    return false;
}

Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

std::map<Int, long> factor_integer(Int n) {
    std::map<Int, long> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    Int bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 10, 8);
    Int d(2);
    while (d * d <= n) {
        if (d > bound) throw CapError("integer factorization cap exceeded");
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            out[d]++;
            n /= d;
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 1) out[n]++;
    return out;
}

std::vector<Int> divisors(const Int& n) {
    auto f = factor_integer(n);
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : f) {
        size_t sz = out.size();
        Int pk(1);
        for (long i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ringsum

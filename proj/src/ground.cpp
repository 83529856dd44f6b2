#include "ringsum/ground.hpp"

#include <algorithm>
#include <sstream>

namespace ringsum {

void KPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

KPoly::KPoly(Cyclotomic c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
}

KPoly KPoly::variable() {
    KPoly p;
    p.c_ = {Cyclotomic(0L), Cyclotomic(1L)};
    return p;
}

KPoly KPoly::from_coeffs(std::vector<Cyclotomic> c) {
    KPoly p;
    p.c_ = std::move(c);
    p.trim();
    return p;
}

const Cyclotomic& KPoly::coeff(long i) const {
    static const Cyclotomic zero;
    if (i < 0 || i >= (long)c_.size()) return zero;
    return c_[i];
}

const Cyclotomic& KPoly::lead() const {
    if (c_.empty()) throw Error("KPoly: lead of zero");
    return c_.back();
}

KPoly operator+(const KPoly& a, const KPoly& b) {
    KPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        Cyclotomic s = i < a.c_.size() ? a.c_[i] : Cyclotomic();
        if (i < b.c_.size()) s = s + b.c_[i];
        r.c_[i] = s;
    }
    r.trim();
    return r;
}

KPoly operator-(const KPoly& a, const KPoly& b) { return a + (-b); }

KPoly KPoly::operator-() const {
    KPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

KPoly operator*(const KPoly& a, const KPoly& b) {
    if (a.is_zero() || b.is_zero()) return KPoly();
    KPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Cyclotomic());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
    }
    r.trim();
    return r;
}

KPoly KPoly::operator*(const Cyclotomic& s) const {
    if (s.is_zero()) return KPoly();
    KPoly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
}

bool KPoly::operator==(const KPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

KPoly KPoly::pow(unsigned long e) const {
    KPoly r(Cyclotomic(1L));
    KPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

KPoly KPoly::monic() const {
    if (is_zero()) throw Error("KPoly: monic of zero");
    return *this * lead().inverse();
}

void KPoly::divrem(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r) {
    if (b.is_zero()) throw Error("division by zero");
    q = KPoly();
    r = a;
    Cyclotomic linv = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long shift = r.degree() - b.degree();
        Cyclotomic c = r.lead() * linv;
        if ((long)q.c_.size() < shift + 1) q.c_.resize(shift + 1);
        q.c_[shift] = q.c_[shift] + c;
        for (long i = 0; i <= b.degree(); ++i) {
            r.c_[shift + i] = r.c_[shift + i] - c * b.c_[i];
        }
        r.trim();
    }
    q.trim();
}

KPoly KPoly::gcd(const KPoly& a, const KPoly& b) {
    KPoly x = a, y = b;
    while (!y.is_zero()) {
        KPoly q, r;
        divrem(x, y, q, r);
        x = y;
        y = r.is_zero() ? r : r.monic();
    }
    return x.is_zero() ? x : x.monic();
}

KPoly KPoly::lcm(const KPoly& a, const KPoly& b) {
    if (a.is_zero() || b.is_zero()) return KPoly();
    return divexact(a * b, gcd(a, b)).monic();
}

bool KPoly::divides(const KPoly& b, const KPoly& a) {
    if (b.is_zero()) return a.is_zero();
    KPoly q, r;
    divrem(a, b, q, r);
    return r.is_zero();
}

KPoly KPoly::divexact(const KPoly& a, const KPoly& b) {
    KPoly q, r;
    divrem(a, b, q, r);
    if (!r.is_zero()) throw Error("KPoly: inexact division");
    return q;
}

KPoly KPoly::shifted(long j) const {
    if (j == 0 || is_zero()) return *this;
    // Horner: p(x+j) built from the top coefficient down.
    KPoly xj;
    xj.c_ = {Cyclotomic(Rat(j)), Cyclotomic(1L)};
    KPoly r;
    for (long i = degree(); i >= 0; --i) {
        r = r * xj;
        r = r + KPoly(c_[i]);
    }
    return r;
}

KPoly KPoly::scaled_arg(const Cyclotomic& a, const Cyclotomic& b) const {
    if (is_zero()) return *this;
    KPoly ax;
    ax.c_ = {b, a};
    ax.trim();
    KPoly r;
    for (long i = degree(); i >= 0; --i) {
        r = r * ax;
        r = r + KPoly(c_[i]);
    }
    return r;
}

Cyclotomic KPoly::evaluate(const Cyclotomic& v) const {
    Cyclotomic r;
    for (long i = degree(); i >= 0; --i) r = r * v + c_[i];
    return r;
}

Cyclotomic KPoly::evaluate_int(long k) const { return evaluate(Cyclotomic(Rat(k))); }

Cyclotomic KPoly::resultant(const KPoly& a, const KPoly& b) {
    if (a.is_zero() || b.is_zero()) return Cyclotomic();
    if (a.degree() == 0) return a.coeff(0).pow(b.degree());
    if (b.degree() == 0) return b.coeff(0).pow(a.degree());
    // res(a,b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * res(b, r), r = a mod b
    KPoly q, r;
    divrem(a, b, q, r);
    if (r.is_zero()) return Cyclotomic();
    Cyclotomic sign((a.degree() * b.degree()) % 2 == 0 ? 1L : -1L);
    Cyclotomic scale = b.lead().pow(a.degree() - r.degree());
    return sign * scale * resultant(b, r);
}

std::string KPoly::to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        std::string cs = c_[i].to_string(names);
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
        if (i == 0) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (cs == "1") {
            } else if (cs == "-1") {
                os << "-";
            } else {
                os << (composite ? "(" + cs + ")" : cs) << "*";
            }
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Writes p as sum over (zeta-exponent, parameter monomial) of integer polynomials
// in x; an integer k is a root of p identically iff it is a root of every component.
std::vector<std::vector<Int>> integer_components(const KPoly& p) {
    // common denominator over all coefficients
    ParamPoly common_den(Int(1));
    for (const auto& c : p.coeffs())
        for (const auto& pr : c.coeffs()) {
            if (pr.is_zero()) continue;
            ParamPoly g = ParamPoly::gcd(common_den, pr.den());
            common_den = ParamPoly::divexact(common_den, g) * pr.den();
        }
    struct Key {
        size_t zexp;
        Mono mono;
        bool operator<(const Key& o) const {
            if (zexp != o.zexp) return zexp < o.zexp;
            return MonoLess{}(mono, o.mono);
        }
    };
    std::map<Key, std::vector<Int>> comp;
    for (long i = 0; i <= p.degree(); ++i) {
        const auto& cy = p.coeff(i);
        for (size_t e = 0; e < cy.coeffs().size(); ++e) {
            const auto& pr = cy.coeffs()[e];
            if (pr.is_zero()) continue;
            ParamPoly scaled = pr.num() * ParamPoly::divexact(common_den, pr.den());
            for (const auto& [m, c] : scaled.terms()) {
                auto& vec = comp[Key{e, m}];
                if ((long)vec.size() <= i) vec.resize(i + 1, Int(0));
                vec[i] += c;
            }
        }
    }
    std::vector<std::vector<Int>> out;
    for (auto& [k, v] : comp) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::set<long> integer_roots(const KPoly& p) {
    if (p.is_zero()) throw Error("integer_roots: zero polynomial");
    std::set<long> out;
    if (p.degree() == 0) return out;
    auto comps = integer_components(p);
    if (comps.empty()) return out;
    // candidates from the first component; integer roots divide its trailing coefficient
    const auto& first = comps.front();
    size_t v = 0;
    while (v < first.size() && first[v] == 0) ++v;
    std::vector<long> candidates;
    if (v >= first.size()) throw Error("integer_roots: invariant");
    if (v > 0) candidates.push_back(0);
    if (first.size() - v == 1) {
        // component is c * x^v: only root is 0
    } else {
        for (const Int& d : divisors(first[v])) {
            if (!d.fits_slong_p()) continue;
            candidates.push_back(d.get_si());
            candidates.push_back(-d.get_si());
        }
    }
    for (long k : candidates) {
        if (out.count(k)) continue;
        bool root = true;
        for (const auto& comp : comps) {
            Int val(0);
            for (long i = (long)comp.size() - 1; i >= 0; --i) val = val * k + comp[i];
            if (val != 0) {
                root = false;
                break;
            }
        }
        if (root) out.insert(k);
    }
    return out;
}

namespace {

// Res_x(p(x), q(x+y)) as a polynomial in y, by evaluation and Lagrange interpolation.
KPoly shift_resultant(const KPoly& p, const KPoly& q) {
    long dy = p.degree() * q.degree();
    std::vector<Cyclotomic> xs, ys;
    for (long j = 0; j <= dy; ++j) {
        xs.push_back(Cyclotomic(Rat(j)));
        ys.push_back(KPoly::resultant(p, q.shifted(j)));
    }
    // Newton form interpolation
    std::vector<Cyclotomic> coef = ys;
    for (long level = 1; level <= dy; ++level) {
        for (long i = dy; i >= level; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    KPoly r;
    for (long i = dy; i >= 0; --i) {
        KPoly lin = KPoly::from_coeffs({xs[i] * Cyclotomic(-1L), Cyclotomic(1L)});
        r = r * lin + KPoly(coef[i]);
    }
    return r;
}

}  // namespace

std::set<long> dispersion_set_signed(const KPoly& p, const KPoly& q) {
    if (p.is_zero() || q.is_zero()) throw Error("dispersion: zero polynomial");
    std::set<long> out;
    if (p.degree() == 0 || q.degree() == 0) return out;
    KPoly res = shift_resultant(p, q);
    if (res.is_zero()) throw Error("dispersion: resultant identically zero");
    if (res.degree() == 0) return out;
    for (long j : integer_roots(res)) {
        if (!KPoly::gcd(p, q.shifted(j)).degree()) continue;
        out.insert(j);
    }
    return out;
}

std::set<long> dispersion_set(const KPoly& p, const KPoly& q) {
    std::set<long> out;
    for (long j : dispersion_set_signed(p, q))
        if (j >= 0) out.insert(j);
    return out;
}

std::set<long> dispersion(const KPoly& p, const KPoly& q) { return dispersion_set(q, p); }

Ground::Ground(KPoly num, KPoly den) {
    if (den.is_zero()) throw Error("division by zero");
    if (num.is_zero()) {
        num_ = KPoly();
        den_ = KPoly(Cyclotomic(1L));
        return;
    }
    KPoly g = KPoly::gcd(num, den);
    if (g.degree() > 0) {
        num = KPoly::divexact(num, g);
        den = KPoly::divexact(den, g);
    }
    Cyclotomic lc = den.lead();
    num_ = num * lc.inverse();
    den_ = den * lc.inverse();
}

Ground Ground::variable() { return Ground(KPoly::variable(), KPoly(Cyclotomic(1L))); }

bool Ground::is_one() const {
    return num_.degree() == 0 && den_.degree() == 0 && num_.coeff(0).is_one();
}

std::optional<Cyclotomic> Ground::as_constant() const {
    if (is_zero()) return Cyclotomic();
    if (num_.degree() == 0 && den_.degree() == 0) return num_.coeff(0);
    return std::nullopt;
}

Ground operator+(const Ground& a, const Ground& b) {
    return Ground(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Ground operator-(const Ground& a, const Ground& b) {
    return Ground(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Ground operator*(const Ground& a, const Ground& b) { return Ground(a.num_ * b.num_, a.den_ * b.den_); }

Ground operator/(const Ground& a, const Ground& b) {
    if (b.is_zero()) throw Error("division by zero");
    return Ground(a.num_ * b.den_, a.den_ * b.num_);
}

Ground Ground::operator-() const {
    Ground r = *this;
    r.num_ = -r.num_;
    return r;
}

Ground Ground::inverse() const {
    if (is_zero()) throw Error("division by zero");
    return Ground(den_, num_);
}

Ground Ground::pow(long e) const {
    if (e == 0) return Ground(1L);
    if (e < 0) return inverse().pow(-e);
    Ground r(1L);
    Ground base = *this;
    unsigned long n = e;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Ground Ground::shifted(long j) const {
    if (j == 0) return *this;
    Ground r;
    r.num_ = num_.shifted(j);
    r.den_ = den_.shifted(j);
    return r;  // shifting preserves the canonical form
}

Ground Ground::scaled_arg(const Cyclotomic& a, const Cyclotomic& b) const {
    return Ground(num_.scaled_arg(a, b), den_.scaled_arg(a, b));
}

Cyclotomic Ground::evaluate_int(long k) const {
    if (is_zero()) return Cyclotomic();
    Cyclotomic d = den_.evaluate_int(k);
    if (d.is_zero()) return Cyclotomic();
    return num_.evaluate_int(k) / d;
}

bool Ground::has_pole_at(long k) const { return den_.evaluate_int(k).is_zero(); }

std::string Ground::to_string(const std::vector<std::string>& names) const {
    if (den_.degree() == 0 && den_.coeff(0).is_one()) return num_.to_string(names);
    std::string n = num_.to_string(names);
    std::string d = den_.to_string(names);
    // numerator: a single (possibly negated) monomial needs no parentheses
    std::string ns = render_sum_like(n) ? "(" + n + ")" : n;
    bool datom = !render_sum_like(d) && d.find('*') == std::string::npos &&
                 d.find('/') == std::string::npos && d[0] != '-';
    std::string ds = datom ? d : "(" + d + ")";
    return ns + "/" + ds;
}

}  // namespace ringsum

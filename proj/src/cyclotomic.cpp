#include "ringsum/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ringsum {

unsigned euler_phi(unsigned m) {
    unsigned result = m;
    unsigned n = m;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// Dense integer polynomial helpers for building cyclotomic polynomials.
using ZPoly = std::vector<Int>;

ZPoly zp_divexact(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
    while (r.size() >= b.size() && !(r.size() == 1 && r[0] == 0)) {
        size_t shift = r.size() - b.size();
        Int c = r.back() / b.back();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        while (r.size() > 1 && r.back() == 0) r.pop_back();
        if (r.size() == 1 && r[0] == 0) break;
        if (r.size() < b.size()) throw Error("cyclotomic poly division failed");
    }
    return q;
}

}  // namespace

const std::vector<Int>& cyclotomic_poly(unsigned m) {
    static std::map<unsigned, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    ZPoly num(m + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto dit = cache.find(d);
        if (dit == cache.end()) {
            // fill recursively without re-locking
            ZPoly nd(d + 1, Int(0));
            nd[0] = -1;
            nd[d] = 1;
            for (unsigned e = 1; e < d; ++e) {
                if (d % e != 0) continue;
                nd = zp_divexact(nd, cache.at(e));
            }
            dit = cache.emplace(d, std::move(nd)).first;
        }
        num = zp_divexact(num, dit->second);
    }
    return cache.emplace(m, std::move(num)).first->second;
}

namespace {

// Polynomial arithmetic over ParamRational, used for reduction mod Phi_m and inverses.
using QPoly = std::vector<ParamRational>;

void qp_trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    qp_trim(r);
    return r;
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
    QPoly r = a;
    if (b.size() > r.size()) r.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    qp_trim(r);
    return r;
}

// a mod b, b nonzero; also exposes the quotient when wanted.
QPoly qp_divrem(QPoly a, const QPoly& b, QPoly* quot = nullptr) {
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    ParamRational lead = b.back();
    while (a.size() >= b.size()) {
        ParamRational c = a.back() / lead;
        size_t shift = a.size() - b.size();
        if (quot) q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
        qp_trim(a);
        if (a.empty()) break;
    }
    if (quot) {
        qp_trim(q);
        *quot = q;
    }
    return a;
}

QPoly phi_as_qpoly(unsigned m) {
    const auto& z = cyclotomic_poly(m);
    QPoly r(z.size());
    for (size_t i = 0; i < z.size(); ++i) r[i] = ParamRational(z[i]);
    return r;
}

}  // namespace

void Cyclotomic::trim() {
    bool allzero = true;
    for (const auto& c : coeffs_)
        if (!c.is_zero()) {
            allzero = false;
            break;
        }
    if (allzero) coeffs_.clear();
}

Cyclotomic::Cyclotomic(const Rat& q) : order_(1) {
    if (q != 0) coeffs_.assign(1, ParamRational(q));
}

Cyclotomic::Cyclotomic(const ParamRational& r) : order_(1) {
    if (!r.is_zero()) coeffs_.assign(1, r);
}

Cyclotomic Cyclotomic::zeta(unsigned m) {
    if (m == 0) throw Error("zeta: order must be positive");
    Cyclotomic c;
    c.order_ = m;
    unsigned phi = euler_phi(m);
    if (m == 1) {
        c.coeffs_.assign(1, ParamRational(Int(1)));
        return c;
    }
    if (phi == 1) {
        // m = 2: zeta = -1
        c.order_ = 2;
        c.coeffs_.assign(1, ParamRational(Int(-1)));
        return c;
    }
    c.coeffs_.assign(phi, ParamRational());
    c.coeffs_[1] = ParamRational(Int(1));
    return c;
}

Cyclotomic Cyclotomic::lifted(unsigned M) const {
    if (M == order_) return *this;
    if (M % order_ != 0) throw Error("Cyclotomic: invalid lift");
    if (is_zero()) {
        Cyclotomic r;
        r.order_ = M;
        return r;
    }
    unsigned step = M / order_;
    QPoly big;
    for (size_t e = 0; e < coeffs_.size(); ++e) {
        if (coeffs_[e].is_zero()) continue;
        size_t pos = e * step;
        if (big.size() <= pos) big.resize(pos + 1);
        big[pos] = coeffs_[e];
    }
    qp_trim(big);
    QPoly red = qp_divrem(big, phi_as_qpoly(M));
    Cyclotomic r;
    r.order_ = M;
    r.coeffs_.assign(euler_phi(M), ParamRational());
    for (size_t i = 0; i < red.size(); ++i) r.coeffs_[i] = red[i];
    r.trim();
    return r;
}

bool Cyclotomic::is_one() const {
    if (coeffs_.empty()) return false;
    if (!coeffs_[0].is_one()) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

bool Cyclotomic::is_param_free() const {
    for (const auto& c : coeffs_)
        if (!c.is_constant()) return false;
    return true;
}

std::optional<ParamRational> Cyclotomic::as_param_rational() const {
    if (is_zero()) return ParamRational();
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return std::nullopt;
    return coeffs_[0];
}

std::optional<Rat> Cyclotomic::as_rational() const {
    auto pr = as_param_rational();
    if (!pr || !pr->is_constant()) return std::nullopt;
    return pr->constant_value();
}

namespace {
unsigned common_order(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = a.order(), n = b.order();
    return m / std::gcd(m, n) * n;
}
}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned M = common_order(a, b);
    Cyclotomic x = a.lifted(M), y = b.lifted(M);
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    Cyclotomic r;
    r.order_ = M;
    r.coeffs_.resize(std::max(x.coeffs_.size(), y.coeffs_.size()));
    for (size_t i = 0; i < r.coeffs_.size(); ++i) {
        ParamRational s = i < x.coeffs_.size() ? x.coeffs_[i] : ParamRational();
        if (i < y.coeffs_.size()) s = s + y.coeffs_[i];
        r.coeffs_[i] = s;
    }
    r.trim();
    return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned M = common_order(a, b);
    Cyclotomic x = a.lifted(M), y = b.lifted(M);
    Cyclotomic r;
    r.order_ = M;
    if (x.is_zero() || y.is_zero()) return r;
    QPoly prod = qp_mul(x.coeffs_, y.coeffs_);
    if (prod.size() > euler_phi(M)) prod = qp_divrem(prod, phi_as_qpoly(M));
    r.coeffs_.assign(euler_phi(M), ParamRational());
    for (size_t i = 0; i < prod.size(); ++i) r.coeffs_[i] = prod[i];
    r.trim();
    return r;
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw Error("division by zero");
    if (order_ == 1 || coeffs_.size() == 1) {
        // element of Q(params) inside any order
        bool pure = true;
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) pure = false;
        if (pure) {
            Cyclotomic r;
            r.order_ = order_;
            r.coeffs_.assign(euler_phi(order_), ParamRational());
            r.coeffs_[0] = coeffs_[0].inverse();
            r.trim();
            return r;
        }
    }
    // extended Euclid in Q(params)[z] against Phi_m
    QPoly r0 = phi_as_qpoly(order_), r1 = coeffs_;
    qp_trim(r1);
    QPoly s0 = {}, s1 = {ParamRational(Int(1))};
    while (!r1.empty() && r1.size() > 1) {
        QPoly q;
        QPoly r2 = qp_divrem(r0, r1, &q);
        QPoly s2 = qp_sub(s0, qp_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw Error("cyclotomic inverse: element not invertible");
    // r1 is a nonzero constant: inverse = s1 / r1
    ParamRational inv = r1[0].inverse();
    Cyclotomic out;
    out.order_ = order_;
    out.coeffs_.assign(euler_phi(order_), ParamRational());
    for (size_t i = 0; i < s1.size(); ++i) out.coeffs_[i] = s1[i] * inv;
    out.trim();
    return out;
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e == 0) return Cyclotomic(Rat(1));
    Cyclotomic base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? (unsigned long)(-e) : (unsigned long)e;
    Cyclotomic r(Rat(1));
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (order_ == o.order_) {
        if (coeffs_.empty() || o.coeffs_.empty()) return coeffs_.empty() && o.coeffs_.empty();
        size_t n = std::max(coeffs_.size(), o.coeffs_.size());
        for (size_t i = 0; i < n; ++i) {
            ParamRational a = i < coeffs_.size() ? coeffs_[i] : ParamRational();
            ParamRational b = i < o.coeffs_.size() ? o.coeffs_[i] : ParamRational();
            if (a != b) return false;
        }
        return true;
    }
    unsigned M = common_order(*this, o);
    return lifted(M) == o.lifted(M);
}

std::optional<unsigned> Cyclotomic::root_of_unity_order() const {
    if (is_zero()) throw Error("root_of_unity_order: zero input");
    if (!is_param_free()) return std::nullopt;
    unsigned bound = order_ % 2 == 0 ? order_ : 2 * order_;  // torsion in Q(zeta_m)* has order lcm(2, m)
    Cyclotomic p(Rat(1));
    for (unsigned j = 1; j <= bound; ++j) {
        p = p * (*this);
        if (p.is_one()) return j;
    }
    return std::nullopt;
}

Cyclotomic Cyclotomic::specialize(const std::vector<Rat>& values) const {
    Cyclotomic r;
    r.order_ = order_;
    if (is_zero()) return r;
    r.coeffs_.assign(euler_phi(order_), ParamRational());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        r.coeffs_[i] = ParamRational(coeffs_[i].evaluate(values));
    }
    r.trim();
    return r;
}

std::string Cyclotomic::to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t e = 0; e < coeffs_.size(); ++e) {
        if (coeffs_[e].is_zero()) continue;
        std::string cs = coeffs_[e].to_string(names);
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
        bool needs_paren = sumlike;
        if (e == 0) {
            os << (needs_paren && coeffs_.size() > 1 ? "(" + cs + ")" : cs);
        } else {
            if (cs == "1") {
            } else if (cs == "-1") {
                os << "-";
            } else {
                os << (needs_paren ? "(" + cs + ")" : cs) << "*";
            }
            os << "z";
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace ringsum

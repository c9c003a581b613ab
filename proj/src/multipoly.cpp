#include "curvetop/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace curvetop {

void MultiPoly::insert_term(const ExpVec& e, const Rational& c) {
    if (sign_of(c) == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (sign_of(it->second) == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::variable(Var v, int power) {
    MultiPoly p;
    ExpVec e{0, 0, 0};
    e[static_cast<int>(v)] = power;
    p.terms_[e] = 1;
    return p;
}

MultiPoly MultiPoly::term(const Rational& c, int ex, int ey, int ez) {
    MultiPoly p;
    if (sign_of(c) != 0) p.terms_[{ex, ey, ez}] = c;
    return p;
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

int MultiPoly::degree(Var v) const {
    int d = -1;
    const int i = static_cast<int>(v);
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return terms_.empty() ? -1 : d;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) insert_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_)
            r.insert_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    MultiPoly r;
    if (sign_of(c) == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r(Rational(1));
    MultiPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

MultiPoly MultiPoly::derivative(Var v) const {
    MultiPoly r;
    const int i = static_cast<int>(v);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        ExpVec d = e;
        d[i] -= 1;
        r.insert_term(d, c * e[i]);
    }
    return r;
}

MultiPoly MultiPoly::coeff_of(Var v, int k) const {
    MultiPoly r;
    const int i = static_cast<int>(v);
    for (const auto& [e, c] : terms_) {
        if (e[i] != k) continue;
        ExpVec d = e;
        d[i] = 0;
        r.terms_[d] = c;
    }
    return r;
}

Rational MultiPoly::leading_rational() const {
    if (terms_.empty()) return Rational(0);
    return terms_.rbegin()->second;
}

MultiPoly MultiPoly::specialize(Var v, const Rational& value) const {
    MultiPoly r;
    const int i = static_cast<int>(v);
    for (const auto& [e, c] : terms_) {
        ExpVec d = e;
        d[i] = 0;
        r.insert_term(d, c * pow_int(value, static_cast<unsigned>(e[i])));
    }
    return r;
}

MultiPoly MultiPoly::subst(Var v, const MultiPoly& value) const {
    // Horner w.r.t. v on the dense coefficient list.
    if (!depends_on(v)) return *this;
    std::vector<MultiPoly> cs = dense_in(v);
    MultiPoly r = cs.back();
    for (int k = static_cast<int>(cs.size()) - 2; k >= 0; --k) r = r * value + cs[static_cast<std::size_t>(k)];
    return r;
}

Rational MultiPoly::eval(const Rational& x, const Rational& y, const Rational& z) const {
    Rational r(0);
    for (const auto& [e, c] : terms_)
        r += c * pow_int(x, static_cast<unsigned>(e[0])) * pow_int(y, static_cast<unsigned>(e[1])) *
             pow_int(z, static_cast<unsigned>(e[2]));
    return r;
}

QInterval MultiPoly::eval_interval(const QInterval& x, const QInterval& y, const QInterval& z) const {
    auto ipow = [](const QInterval& b, int e) {
        QInterval r = QInterval::point(Rational(1));
        for (int i = 0; i < e; ++i) r = r * b;
        return r;
    };
    QInterval r = QInterval::point(Rational(0));
    for (const auto& [e, c] : terms_) {
        QInterval t = ipow(x, e[0]) * ipow(y, e[1]) * ipow(z, e[2]);
        r = r + t.scaled(c);
    }
    return r;
}

std::vector<MultiPoly> MultiPoly::dense_in(Var v) const {
    std::vector<MultiPoly> cs;
    int d = degree(v);
    if (d < 0) return cs;
    cs.resize(static_cast<std::size_t>(d) + 1);
    const int i = static_cast<int>(v);
    for (const auto& [e, c] : terms_) {
        ExpVec r = e;
        r[i] = 0;
        cs[static_cast<std::size_t>(e[i])].insert_term(r, c);
    }
    return cs;
}

MultiPoly MultiPoly::from_dense(const std::vector<MultiPoly>& coeffs, Var v) {
    MultiPoly r;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        r += coeffs[k] * MultiPoly::variable(v, static_cast<int>(k));
    return r;
}

MultiPoly MultiPoly::normalized() const {
    if (terms_.empty()) return MultiPoly();
    Integer num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd); // multiply by lcm(dens)/gcd(nums)
    scale.canonicalize();
    MultiPoly r = *this * scale;
    if (sign_of(r.leading_rational()) < 0) r = -r;
    return r;
}

bool MultiPoly::try_exact_div(const MultiPoly& a, const MultiPoly& b, MultiPoly& quotient) {
    if (b.is_zero()) return false;
    MultiPoly q, r = a;
    const auto& [eb, cb] = *b.terms_.rbegin();
    while (!r.is_zero()) {
        const auto& [er, cr] = *r.terms_.rbegin();
        ExpVec d{er[0] - eb[0], er[1] - eb[1], er[2] - eb[2]};
        if (d[0] < 0 || d[1] < 0 || d[2] < 0) return false;
        MultiPoly t = MultiPoly::term(cr / cb, d[0], d[1], d[2]);
        q += t;
        r -= t * b;
    }
    quotient = std::move(q);
    return true;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly q;
    if (!try_exact_div(a, b, q)) throw DivisionNotExact();
    return q;
}

bool MultiPoly::divides(const MultiPoly& b, const MultiPoly& a) {
    MultiPoly q;
    return try_exact_div(a, b, q);
}

MultiPoly MultiPoly::prem(const MultiPoly& a, const MultiPoly& b, Var v) {
    int db = b.degree(v);
    if (db < 0) throw std::domain_error("prem: zero divisor");
    MultiPoly r = a;
    int dr = r.degree(v);
    if (dr < db) {
        // lc(b)^(da-db+1) with da < db: exponent <= 0; by convention scale by 1.
        return r;
    }
    MultiPoly lb = b.lcoef(v);
    int e = dr - db + 1;
    while (!r.is_zero() && (dr = r.degree(v)) >= db) {
        MultiPoly lr = r.lcoef(v);
        r = lb * r - lr * MultiPoly::variable(v, dr - db) * b;
        --e;
    }
    for (; e > 0; --e) r = lb * r;
    return r;
}

MultiPoly MultiPoly::quo_univariate(const MultiPoly& a, const MultiPoly& b, Var v) {
    if (b.is_zero()) throw std::domain_error("quo: division by zero");
    std::vector<MultiPoly> ra = a.dense_in(v);
    std::vector<MultiPoly> rb = b.dense_in(v);
    if (ra.size() < rb.size()) return MultiPoly();
    std::vector<MultiPoly> q(ra.size() - rb.size() + 1);
    MultiPoly lb = rb.back();
    for (int k = static_cast<int>(ra.size() - rb.size()); k >= 0; --k) {
        MultiPoly c = ra[static_cast<std::size_t>(k) + rb.size() - 1];
        if (c.is_zero()) continue;
        MultiPoly t = exact_div(c, lb);
        q[static_cast<std::size_t>(k)] = t;
        for (std::size_t j = 0; j < rb.size(); ++j)
            ra[static_cast<std::size_t>(k) + j] -= t * rb[j];
    }
    return from_dense(q, v);
}

namespace {

Var main_var(const MultiPoly& p, const MultiPoly& q) {
    for (Var v : {Var::Z, Var::Y, Var::X})
        if (p.depends_on(v) || q.depends_on(v)) return v;
    return Var::X;
}

MultiPoly content_in(const MultiPoly& p, Var v) {
    MultiPoly c;
    for (const MultiPoly& coeff : p.dense_in(v))
        if (!coeff.is_zero()) c = MultiPoly::gcd(c, coeff);
    return c;
}

} // namespace

MultiPoly MultiPoly::gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return MultiPoly(Rational(1));

    Var v = main_var(a, b);
    if (!a.depends_on(v)) return gcd(a, content_in(b, v));
    if (!b.depends_on(v)) return gcd(content_in(a, v), b);

    MultiPoly ca = content_in(a, v);
    MultiPoly cb = content_in(b, v);
    MultiPoly pa = exact_div(a, ca);
    MultiPoly pb = exact_div(b, cb);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);

    // Primitive PRS on the primitive parts.
    while (true) {
        MultiPoly r = prem(pa, pb, v);
        if (r.is_zero()) break;
        if (!r.depends_on(v)) {
            pb = MultiPoly(Rational(1));
            break;
        }
        r = exact_div(r, content_in(r, v)).normalized();
        pa = std::move(pb);
        pb = std::move(r);
    }
    return (gcd(ca, cb) * pb).normalized();
}

MultiPoly MultiPoly::squarefree_part(const MultiPoly& p, Var v) {
    if (p.is_zero()) return p;
    MultiPoly d = p.derivative(v);
    if (d.is_zero()) return p.normalized();
    return exact_div(p.normalized(), gcd(p, d)).normalized();
}

MultiPoly MultiPoly::squarefree_part_total(const MultiPoly& p) {
    if (p.is_zero() || p.is_constant()) return p.normalized();
    MultiPoly g;
    for (Var v : {Var::X, Var::Y, Var::Z}) {
        MultiPoly d = p.derivative(v);
        if (!d.is_zero()) g = g.is_zero() ? gcd(p, d) : gcd(g, d);
    }
    if (g.is_zero()) return p.normalized();
    return exact_div(p.normalized(), g).normalized();
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print highest terms first for readability.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (sign_of(a) < 0) { os << "-"; a = -a; }
        } else {
            os << (sign_of(a) < 0 ? " - " : " + ");
            if (sign_of(a) < 0) a = -a;
        }
        first = false;
        bool has_var = e[0] + e[1] + e[2] > 0;
        if (a != 1 || !has_var) {
            os << a.get_str();
            if (has_var) os << "*";
        }
        bool started = false;
        for (Var v : {Var::X, Var::Y, Var::Z}) {
            int k = e[static_cast<int>(v)];
            if (k == 0) continue;
            if (started) os << "*";
            started = true;
            os << var_name(v);
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

MultiPoly ShearMap::apply(const MultiPoly& p) const {
    if (is_identity()) return p;
    if (!space) {
        MultiPoly x_new = MultiPoly::variable(Var::X) + MultiPoly::variable(Var::Y) * lambda;
        return p.subst(Var::X, x_new);
    }
    MultiPoly x_new = MultiPoly::variable(Var::X) + MultiPoly::variable(Var::Y) * nu +
                      MultiPoly::variable(Var::Z) * lambda;
    MultiPoly y_new = MultiPoly::variable(Var::Y) + MultiPoly::variable(Var::Z) * mu;
    // Substitute Y before X so the substitution is simultaneous: the fresh
    // Y introduced by x_new must not be rewritten again.
    return p.subst(Var::Y, y_new).subst(Var::X, x_new);
}

std::string ShearMap::str() const {
    std::ostringstream os;
    if (!space) {
        os << "x := x + (" << lambda.get_str() << ")*y";
    } else {
        os << "x := x + (" << nu.get_str() << ")*y + (" << lambda.get_str()
           << ")*z, y := y + (" << mu.get_str() << ")*z";
    }
    return os.str();
}

} // namespace curvetop

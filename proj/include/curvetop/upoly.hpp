#ifndef CURVETOP_UPOLY_HPP
#define CURVETOP_UPOLY_HPP

#include "curvetop/multipoly.hpp"
#include "curvetop/rational.hpp"

#include <stdexcept>
#include <vector>

namespace curvetop {

// Coefficient-field customization points (found by ADL / overload):
//   int        elem_sign(const K&)                 exact sign
//   K          elem_inv(const K&)                  multiplicative inverse
//   QInterval  elem_interval(const K&)             enclosing rational interval
//   void       elem_refine(const K&)               tighten the enclosure (may be a no-op)
//   K          elem_from_rational(const K& like, const Rational&)
// plus ring operators +, -, *, and K * Rational.

inline int elem_sign(const Rational& r) { return sign_of(r); }
inline Rational elem_inv(const Rational& r) {
    if (sign_of(r) == 0) throw std::domain_error("inverse of zero");
    return Rational(1) / r;
}
inline QInterval elem_interval(const Rational& r) { return QInterval::point(r); }
inline void elem_refine(const Rational&) {}
inline Rational elem_from_rational(const Rational&, const Rational& v) { return v; }

/// Dense univariate polynomial over an exact ordered field K.
template <typename K>
class UPoly {
public:
    std::vector<K> c; // ascending powers

    UPoly() = default;
    explicit UPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

    static UPoly constant(const K& v) {
        UPoly p;
        p.c.push_back(v);
        p.trim();
        return p;
    }

    void trim() {
        while (!c.empty() && elem_sign(c.back()) == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const K& lc() const { return c.back(); }

    /// A nonzero coefficient to borrow the coefficient-field context from.
    const K& exemplar() const {
        if (c.empty()) throw std::logic_error("exemplar of zero polynomial");
        return c.back();
    }

    UPoly operator-() const {
        UPoly r = *this;
        for (K& v : r.c) v = -v;
        return r;
    }
    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.c.resize(std::max(c.size(), o.c.size()));
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            if (i < c.size()) r.c[i] = r.c[i] + c[i];
            if (i < o.c.size()) r.c[i] = r.c[i] + o.c[i];
        }
        r.trim();
        return r;
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }
    UPoly operator*(const UPoly& o) const {
        UPoly r;
        if (c.empty() || o.c.empty()) return r;
        r.c.resize(c.size() + o.c.size() - 1);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        r.trim();
        return r;
    }
    UPoly scaled(const K& s) const {
        UPoly r = *this;
        for (K& v : r.c) v = v * s;
        r.trim();
        return r;
    }
    bool equals(const UPoly& o) const { return (*this - o).is_zero(); }

    UPoly derivative() const {
        UPoly r;
        if (c.size() <= 1) return r;
        r.c.reserve(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * Rational(static_cast<long>(i)));
        r.trim();
        return r;
    }

    K eval(const K& x) const {
        if (c.empty()) throw std::logic_error("eval of zero polynomial needs context; handle separately");
        K r = c.back();
        for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) r = r * x + c[static_cast<std::size_t>(i)];
        return r;
    }
    K eval_rational(const Rational& x) const {
        if (c.empty()) throw std::logic_error("eval of zero polynomial needs context; handle separately");
        K r = c.back();
        for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) r = r * x + c[static_cast<std::size_t>(i)];
        return r;
    }
    int sign_at_rational(const Rational& x) const {
        if (c.empty()) return 0;
        return elem_sign(eval_rational(x));
    }
    QInterval interval_at(const QInterval& x) const {
        QInterval r = QInterval::point(Rational(0));
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            r = r * x + elem_interval(c[static_cast<std::size_t>(i)]);
        return r;
    }

    /// Euclidean division (K is a field): a = q*b + r with deg r < deg b.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        K binv = elem_inv(b.lc());
        r = a;
        q = UPoly();
        if (a.degree() >= b.degree()) q.c.resize(static_cast<std::size_t>(a.degree() - b.degree()) + 1, b.lc() - b.lc());
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int d = r.degree() - b.degree();
            K t = r.lc() * binv;
            q.c[static_cast<std::size_t>(d)] = q.c[static_cast<std::size_t>(d)] + t;
            // r -= t * x^d * b, with the leading term cancelled exactly.
            for (std::size_t i = 0; i < b.c.size(); ++i)
                r.c[static_cast<std::size_t>(d) + i] = r.c[static_cast<std::size_t>(d) + i] - t * b.c[i];
            r.c.pop_back();
            r.trim();
        }
        q.trim();
    }
    static UPoly rem(const UPoly& a, const UPoly& b) {
        UPoly q, r;
        divmod(a, b, q, r);
        return r;
    }
    static UPoly quo(const UPoly& a, const UPoly& b) {
        UPoly q, r;
        divmod(a, b, q, r);
        return q;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(elem_inv(lc()));
    }

    /// Monic gcd by the Euclidean algorithm (gcd(0,0) = 0).
    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = rem(a, b.monic());
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    UPoly squarefree_part() const {
        if (is_zero()) return *this;
        if (degree() == 0) return monic();
        UPoly g = gcd(*this, derivative());
        return quo(*this, g).monic();
    }

    /// Yun decomposition: result[i] = squarefree factor of multiplicity i+1 (monic).
    std::vector<UPoly> squarefree_factors() const {
        std::vector<UPoly> out;
        if (is_zero() || degree() == 0) return out;
        UPoly f = monic();
        UPoly d = f.derivative();
        UPoly a = gcd(f, d);
        UPoly w = quo(f, a);
        UPoly y = quo(d, a);
        UPoly z = y - w.derivative();
        while (!w.is_zero() && w.degree() > 0) {
            UPoly g = gcd(w, z);
            out.push_back(g.monic());
            w = quo(w, g);
            y = quo(z, g);
            z = y - w.derivative();
        }
        return out;
    }

    std::string str() const {
        MultiPoly m;
        // Debug printing only; coefficients are shown via their midpoint intervals for non-rational K.
        std::string s = "[";
        for (std::size_t i = 0; i < c.size(); ++i) {
            QInterval iv = elem_interval(c[i]);
            s += iv.lo.get_str();
            if (iv.lo != iv.hi) s += ".." + iv.hi.get_str();
            if (i + 1 < c.size()) s += ", ";
        }
        return s + "]";
    }
};

/// Conversions between univariate MultiPoly and UPoly<Rational>.
inline UPoly<Rational> to_upoly(const MultiPoly& p, Var v) {
    for (Var o : {Var::X, Var::Y, Var::Z})
        if (o != v && p.depends_on(o)) throw std::domain_error("to_upoly: polynomial is not univariate in the given variable");
    std::vector<Rational> c(static_cast<std::size_t>(std::max(p.degree(v), 0)) + 1, Rational(0));
    if (p.is_zero()) return UPoly<Rational>();
    for (const auto& [e, coeff] : p.terms()) c[static_cast<std::size_t>(e[static_cast<int>(v)])] = coeff;
    return UPoly<Rational>(std::move(c));
}

inline MultiPoly from_upoly(const UPoly<Rational>& p, Var v) {
    MultiPoly r;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        ExpVec e{0, 0, 0};
        e[static_cast<int>(v)] = static_cast<int>(i);
        r += MultiPoly::term(p.c[i], e[0], e[1], e[2]);
    }
    return r;
}

} // namespace curvetop

#endif

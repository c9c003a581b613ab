#ifndef CURVETOP_RATIONAL_HPP
#define CURVETOP_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curvetop {

/// Exact rational scalar. mpq_class keeps gcd(num,den)=1 and den>0 on its own.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign_of(const Rational& r) { return sgn(r); }

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational pow_int(const Rational& base, unsigned e) {
    Rational r(1);
    Rational b = base;
    unsigned n = e;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

struct QInterval {
    Rational lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {}
    static QInterval point(const Rational& v) { return {v, v}; }

    bool contains_zero() const { return sign_of(lo) <= 0 && sign_of(hi) >= 0; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    QInterval operator*(const QInterval& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rational mn = a, mx = a;
        for (const Rational* v : {&b, &c, &d}) {
            if (*v < mn) mn = *v;
            if (*v > mx) mx = *v;
        }
        return {mn, mx};
    }
    // Pre: interval excludes zero.
    QInterval inverse() const {
        if (contains_zero()) throw std::domain_error("QInterval: inverse of interval containing 0");
        return {Rational(1) / hi, Rational(1) / lo};
    }
    QInterval operator/(const QInterval& o) const { return *this * o.inverse(); }
    QInterval scaled(const Rational& c) const {
        if (sign_of(c) >= 0) return {lo * c, hi * c};
        return {hi * c, lo * c};
    }
};

} // namespace curvetop

#endif

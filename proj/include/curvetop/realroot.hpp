#ifndef CURVETOP_REALROOT_HPP
#define CURVETOP_REALROOT_HPP

#include "curvetop/upoly.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace curvetop {

namespace detail {

/// Sturm chain with positive-factor normalization (each remainder is scaled
/// by 1/lc^2, which preserves signs everywhere).
template <typename K>
std::vector<UPoly<K>> sturm_chain(const UPoly<K>& p) {
    std::vector<UPoly<K>> s;
    if (p.is_zero()) return s;
    s.push_back(p);
    UPoly<K> d = p.derivative();
    if (d.is_zero()) return s;
    s.push_back(d);
    while (true) {
        UPoly<K> r = -UPoly<K>::rem(s[s.size() - 2], s.back());
        if (r.is_zero()) break;
        K il = elem_inv(r.lc());
        s.push_back(r.scaled(il * il));
        if (s.back().degree() == 0) break;
    }
    return s;
}

template <typename K>
int variations_at(const std::vector<UPoly<K>>& chain, const Rational& t) {
    int var = 0, prev = 0;
    for (const UPoly<K>& p : chain) {
        int sg = p.sign_at_rational(t);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++var;
        prev = sg;
    }
    return var;
}

/// Strict upper bound on |roots|: 1 + max |c_i| / |c_n| (Cauchy), computed
/// from rational enclosures (refining coefficients until lc excludes 0).
template <typename K>
Rational root_bound(const UPoly<K>& p) {
    QInterval lead = elem_interval(p.lc());
    while (lead.contains_zero()) {
        elem_refine(p.lc());
        lead = elem_interval(p.lc());
    }
    Rational lead_low = std::min(abs_of(lead.lo), abs_of(lead.hi));
    Rational m(0);
    for (std::size_t i = 0; i + 1 < p.c.size(); ++i) {
        QInterval iv = elem_interval(p.c[i]);
        Rational a = std::max(abs_of(iv.lo), abs_of(iv.hi));
        if (a > m) m = a;
    }
    return Rational(1) + m / lead_low;
}

} // namespace detail

/// A real root of a squarefree polynomial over K, represented by an isolating
/// open interval with rational endpoints (or a point interval for a rational
/// root). Invariants: def is squarefree; if lo < hi then def(lo) != 0,
/// def(hi) != 0 and exactly one root of def lies in (lo, hi).
template <typename K>
class RealRoot {
public:
    UPoly<K> def;
    // The interval is a refinable cache of the same exact value, hence mutable.
    mutable Rational lo, hi;
    int multiplicity = 1; // multiplicity in the polynomial passed to isolate()

    bool is_point() const { return lo == hi; }

    static RealRoot rational_point(const UPoly<K>& def_like, const Rational& v) {
        RealRoot r;
        // def = X - v in the same coefficient field.
        const K& ex = def_like.exemplar();
        UPoly<K> d;
        d.c = {elem_from_rational(ex, -v), elem_from_rational(ex, Rational(1))};
        r.def = d;
        r.lo = r.hi = v;
        return r;
    }

    QInterval interval() const { return {lo, hi}; }

    /// One bisection step (no-op for point roots).
    void refine_step() const {
        if (is_point()) return;
        Rational m = (lo + hi) / 2;
        int sm = def.sign_at_rational(m);
        if (sm == 0) {
            lo = hi = m;
            return;
        }
        int slo = def.sign_at_rational(lo);
        if (slo * sm < 0) hi = m;
        else lo = m;
    }

    void refine_below(const Rational& width) const {
        while (!is_point() && hi - lo > width) refine_step();
    }

    /// Exact sign of g at this root.
    int sign_at(const UPoly<K>& g) const {
        if (g.is_zero()) return 0;
        if (is_point()) return g.sign_at_rational(lo);
        UPoly<K> h = UPoly<K>::gcd(def, g);
        if (h.degree() >= 1) {
            // Roots of h are roots of def; ours is the only def-root in (lo,hi).
            if (h.sign_at_rational(lo) * h.sign_at_rational(hi) < 0) return 0;
        }
        // g does not vanish here; tighten enclosures until the sign shows.
        while (true) {
            QInterval v = g.interval_at(interval());
            if (!v.contains_zero()) return sign_of(v.lo);
            refine_step();
            for (const K& cf : g.c) elem_refine(cf);
        }
    }

    /// Order comparison; returns -1, 0, 1.
    static int compare(const RealRoot& a, const RealRoot& b) {
        auto disjoint = [](const RealRoot& x, const RealRoot& y) -> std::optional<int> {
            if (x.hi < y.lo) return -1;
            if (y.hi < x.lo) return 1;
            if (x.hi == y.lo && !(x.is_point() && y.is_point())) return -1; // open on at least one side
            if (y.hi == x.lo && !(x.is_point() && y.is_point())) return 1;
            if (x.is_point() && y.is_point()) return x.lo == y.lo ? 0 : (x.lo < y.lo ? -1 : 1);
            return std::nullopt;
        };
        if (auto r = disjoint(a, b)) return *r;
        UPoly<K> h = UPoly<K>::gcd(a.def, b.def);
        auto on_h = [&](const RealRoot& x) {
            if (h.degree() < 1) return false;
            if (x.is_point()) return h.sign_at_rational(x.lo) == 0;
            return h.sign_at_rational(x.lo) * h.sign_at_rational(x.hi) < 0;
        };
        if (h.degree() >= 1 && on_h(a) && on_h(b)) {
            // Both are roots of h: equal iff they are the same root.
            std::vector<RealRoot> hr = isolate_squarefree(h);
            auto locate = [&](const RealRoot& x) -> std::size_t {
                while (true) {
                    for (std::size_t i = 0; i < hr.size(); ++i) {
                        const RealRoot& c = hr[i];
                        bool inside = c.is_point() ? (x.is_point() && x.lo == c.lo)
                                                   : (x.lo >= c.lo && x.hi <= c.hi && (x.is_point() ? (x.lo > c.lo && x.lo < c.hi) : true));
                        if (inside) return i;
                    }
                    x.refine_step();
                }
            };
            std::size_t ia = locate(a), ib = locate(b);
            if (ia == ib) return 0;
            return ia < ib ? -1 : 1;
        }
        // Distinct values: refine until the intervals separate.
        while (true) {
            a.refine_step();
            b.refine_step();
            if (auto r = disjoint(a, b)) return *r;
        }
    }

    /// Isolate all real roots of a squarefree polynomial (ascending order).
    static std::vector<RealRoot> isolate_squarefree(const UPoly<K>& g) {
        std::vector<RealRoot> out;
        if (g.is_zero()) throw std::domain_error("isolate: zero polynomial");
        if (g.degree() == 0) return out;
        auto chain = std::make_shared<std::vector<UPoly<K>>>(detail::sturm_chain(g));
        auto vars = [&](const Rational& t) { return detail::variations_at(*chain, t); };
        Rational B = detail::root_bound(g);
        struct Seg { Rational a, b; int count; };
        // Recurse keeping ascending output order.
        auto emit_point = [&](const Rational& v) { out.push_back(rational_point(g, v)); };
        auto emit_interval = [&](const Rational& a, const Rational& b) {
            RealRoot r;
            r.def = g;
            r.lo = a;
            r.hi = b;
            out.push_back(r);
        };
        std::function<void(const Rational&, const Rational&, int)> go =
            [&](const Rational& a, const Rational& b, int n) {
                if (n == 0) return;
                if (n == 1) { emit_interval(a, b); return; }
                Rational m = (a + b) / 2;
                if (g.sign_at_rational(m) != 0) {
                    int left = vars(a) - vars(m);
                    go(a, m, left);
                    go(m, b, n - left);
                    return;
                }
                // Rational root exactly at the midpoint: fence it off.
                Rational d = (b - a) / 4;
                while (g.sign_at_rational(m - d) == 0 || g.sign_at_rational(m + d) == 0 ||
                       vars(m - d) - vars(m + d) != 1)
                    d /= 2;
                go(a, m - d, vars(a) - vars(m - d));
                emit_point(m);
                go(m + d, b, vars(m + d) - vars(b));
            };
        go(-B, B, vars(-B) - vars(B));
        return out;
    }

    /// Isolate all real roots of an arbitrary nonzero polynomial, with
    /// multiplicities, in ascending order.
    static std::vector<RealRoot> isolate(const UPoly<K>& f) {
        if (f.is_zero()) throw std::domain_error("isolate: zero polynomial");
        std::vector<UPoly<K>> factors = f.squarefree_factors();
        std::vector<RealRoot> all;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i].degree() < 1) continue;
            for (RealRoot& r : isolate_squarefree(factors[i])) {
                r.multiplicity = static_cast<int>(i) + 1;
                all.push_back(std::move(r));
            }
        }
        // Roots of distinct squarefree factors are distinct; sort by comparing.
        std::sort(all.begin(), all.end(), [](const RealRoot& a, const RealRoot& b) {
            return compare(a, b) < 0;
        });
        return all;
    }
};

} // namespace curvetop

#endif

#include "curvetop/algnum.hpp"

#include <stdexcept>

namespace curvetop {

RealAlgebraicNumber ran_from_rational(const Rational& r) {
    UPoly<Rational> d;
    d.c = {-r, Rational(1)};
    RealAlgebraicNumber out;
    out.def = d;
    out.lo = out.hi = r;
    return out;
}

RealAlgebraicNumber identify_root(std::vector<RealAlgebraicNumber> candidates,
                                  const std::function<QInterval()>& enclose) {
    if (candidates.empty()) throw std::logic_error("identify_root: no candidates");
    while (candidates.size() > 1) {
        QInterval iv = enclose();
        std::vector<RealAlgebraicNumber> keep;
        for (RealAlgebraicNumber& c : candidates) {
            bool disjoint = (c.hi < iv.lo) || (iv.hi < c.lo);
            if (!disjoint) keep.push_back(std::move(c));
        }
        if (keep.empty()) throw std::logic_error("identify_root: enclosure excluded all candidates");
        candidates = std::move(keep);
        for (const RealAlgebraicNumber& c : candidates) c.refine_step();
    }
    return candidates.front();
}

RealAlgebraicNumber level0_from_level1(const RealRoot<AlgExt>& y) {
    // Rational-coefficient case: the defining polynomial already lives over Q.
    bool pure_rational = true;
    std::shared_ptr<AlgExtCtx> ctx;
    for (const AlgExt& c : y.def.c) {
        if (c.ctx()) { ctx = c.ctx(); pure_rational = false; }
    }
    if (pure_rational) {
        std::vector<Rational> cs;
        for (const AlgExt& c : y.def.c)
            cs.push_back(c.rep().is_zero() ? Rational(0) : c.rep().c[0]);
        RealAlgebraicNumber out;
        out.def = UPoly<Rational>(std::move(cs)).squarefree_part();
        out.lo = y.lo;
        out.hi = y.hi;
        return out;
    }

    // Remove any common X-factor of the modulus and the coefficients, so the
    // resultant below cannot vanish identically.
    UPoly<Rational> common = ctx->modulus;
    for (const AlgExt& c : y.def.c) {
        if (common.degree() < 1) break;
        common = UPoly<Rational>::gcd(common, c.rep());
    }
    if (common.degree() >= 1)
        ctx->modulus = UPoly<Rational>::quo(ctx->modulus, common).monic();

    // F~(X, Y) with the current representatives; F~(alpha, Y) = y.def.
    MultiPoly Ftilde;
    for (std::size_t i = 0; i < y.def.c.size(); ++i)
        Ftilde += from_upoly(y.def.c[i].rep(), Var::X) * MultiPoly::variable(Var::Y, static_cast<int>(i));
    MultiPoly q = from_upoly(ctx->modulus, Var::X);
    MultiPoly E = resultant(q, Ftilde, Var::X);
    if (E.is_zero()) throw std::logic_error("level0_from_level1: vanishing annihilator");
    UPoly<Rational> ann = to_upoly(E, Var::Y).squarefree_part();

    std::vector<RealAlgebraicNumber> cands = RealAlgebraicNumber::isolate_squarefree(ann);
    auto enclose = [&y]() {
        y.refine_step();
        for (const AlgExt& c : y.def.c) elem_refine(c);
        return y.interval();
    };
    return identify_root(std::move(cands), enclose);
}

RealAlgebraicNumber ran_from_algext(const AlgExt& w) {
    if (!w.ctx() || w.rep().degree() <= 0) {
        Rational v = w.rep().is_zero() ? Rational(0) : w.rep().c[0];
        return ran_from_rational(v);
    }
    // View w as the unique root of the linear polynomial T - w over Q(alpha).
    RealRoot<AlgExt> rr;
    UPoly<AlgExt> lin;
    lin.c = {-w, elem_from_rational(w, Rational(1))};
    lin.trim();
    rr.def = lin;
    QInterval iv = w.interval();
    rr.lo = iv.lo;
    rr.hi = iv.hi;
    return level0_from_level1(rr);
}

RealAlgebraicNumber ratfun_value(const UPoly<Rational>& N, const UPoly<Rational>& D,
                                 const RealAlgebraicNumber& b) {
    if (b.sign_at(D) == 0) throw std::domain_error("ratfun_value: denominator vanishes at the root");
    if (b.is_point()) {
        Rational v = N.is_zero() ? Rational(0) : N.eval_rational(b.lo);
        return ran_from_rational(v / D.eval_rational(b.lo));
    }
    if (N.degree() <= 0 && D.degree() <= 0) {
        Rational n = N.is_zero() ? Rational(0) : N.c[0];
        return ran_from_rational(n / D.c[0]);
    }

    UPoly<Rational> defb = b.def;
    // Drop factors of the defining polynomial dividing both N and D (they
    // cannot contain b, since D(b) != 0) so the annihilator is nonzero.
    UPoly<Rational> common = UPoly<Rational>::gcd(defb, UPoly<Rational>::gcd(N, D));
    if (common.degree() >= 1) defb = UPoly<Rational>::quo(defb, common).monic();

    // ann(Z) = Res_Y(defb(Y), D(Y)*Z - N(Y)).
    MultiPoly lin = from_upoly(D, Var::Y) * MultiPoly::variable(Var::Z) - from_upoly(N, Var::Y);
    MultiPoly E = resultant(from_upoly(defb, Var::Y), lin, Var::Y);
    if (E.is_zero()) throw std::logic_error("ratfun_value: vanishing annihilator");
    UPoly<Rational> ann = to_upoly(E, Var::Z).squarefree_part();

    std::vector<RealAlgebraicNumber> cands = RealAlgebraicNumber::isolate_squarefree(ann);
    auto enclose = [&]() {
        b.refine_step();
        QInterval ib = b.interval();
        QInterval dv = D.interval_at(ib);
        while (dv.contains_zero()) {
            b.refine_step();
            ib = b.interval();
            dv = D.interval_at(ib);
        }
        QInterval nv = N.is_zero() ? QInterval::point(Rational(0)) : N.interval_at(ib);
        return nv / dv;
    };
    return identify_root(std::move(cands), enclose);
}

RealAlgebraicNumber linear_comb(const RealAlgebraicNumber& a, const Rational& r,
                                const RealAlgebraicNumber& b) {
    if (sign_of(r) == 0) return a;
    if (b.is_point()) {
        // a + r*b0: shift the defining polynomial of a.
        Rational c = r * b.lo;
        if (a.is_point()) return ran_from_rational(a.lo + c);
        MultiPoly shifted = from_upoly(a.def, Var::Z)
                                .subst(Var::Z, MultiPoly::variable(Var::Z) - MultiPoly(Rational(1)) * c);
        RealAlgebraicNumber out;
        out.def = to_upoly(shifted, Var::Z).monic();
        out.lo = a.lo + c;
        out.hi = a.hi + c;
        return out;
    }
    if (a.is_point()) {
        // a0 + r*b: scale and shift b's defining polynomial. Value v satisfies
        // defb((v - a0)/r) = 0.
        MultiPoly expr = (MultiPoly::variable(Var::Z) - MultiPoly(Rational(1)) * a.lo) * (Rational(1) / r);
        MultiPoly comp = from_upoly(b.def, Var::Z).subst(Var::Z, expr);
        RealAlgebraicNumber out;
        out.def = to_upoly(comp, Var::Z).monic();
        Rational e1 = a.lo + r * b.lo, e2 = a.lo + r * b.hi;
        out.lo = std::min(e1, e2);
        out.hi = std::max(e1, e2);
        // The map is affine and injective, so the image interval isolates.
        return out;
    }

    // ann(Z) = Res_X(defb(X), defa(Z - r*X)); defa monic makes it nonzero.
    MultiPoly za = MultiPoly::variable(Var::Z) - MultiPoly::variable(Var::X) * r;
    MultiPoly comp = from_upoly(a.def.monic(), Var::Z).subst(Var::Z, za);
    MultiPoly E = resultant(from_upoly(b.def, Var::X), comp, Var::X);
    if (E.is_zero()) throw std::logic_error("linear_comb: vanishing annihilator");
    UPoly<Rational> ann = to_upoly(E, Var::Z).squarefree_part();
    std::vector<RealAlgebraicNumber> cands = RealAlgebraicNumber::isolate_squarefree(ann);
    auto enclose = [&]() {
        a.refine_step();
        b.refine_step();
        return QInterval(a.lo, a.hi) + QInterval(b.lo, b.hi).scaled(r);
    };
    return identify_root(std::move(cands), enclose);
}

double approx_double(const RealAlgebraicNumber& x, int bits) {
    Rational w = pow_int(Rational(1, 2), static_cast<unsigned>(bits));
    x.refine_below(w);
    return to_double(x.is_point() ? x.lo : (x.lo + x.hi) / 2);
}

} // namespace curvetop

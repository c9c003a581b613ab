#include "curvetop/algext.hpp"

#include <stdexcept>

namespace curvetop {

namespace {

/// Extended gcd over Q[X]: returns g (monic) with s*a + t*b = g.
void xgcd(const UPoly<Rational>& a, const UPoly<Rational>& b,
          UPoly<Rational>& g, UPoly<Rational>& s, UPoly<Rational>& t) {
    UPoly<Rational> r0 = a, r1 = b;
    UPoly<Rational> s0 = UPoly<Rational>::constant(Rational(1)), s1;
    UPoly<Rational> t0, t1 = UPoly<Rational>::constant(Rational(1));
    while (!r1.is_zero()) {
        UPoly<Rational> q, r;
        UPoly<Rational>::divmod(r0, r1, q, r);
        UPoly<Rational> s2 = s0 - q * s1;
        UPoly<Rational> t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) { g = r0; s = s0; t = t0; return; }
    Rational inv = Rational(1) / r0.lc();
    g = r0.scaled(inv);
    s = s0.scaled(inv);
    t = t0.scaled(inv);
}

} // namespace

AlgExtCtx::AlgExtCtx(UPoly<Rational> m, RealRoot<Rational> a)
    : modulus(std::move(m)), alpha(std::move(a)) {
    if (modulus.degree() < 1) throw std::domain_error("AlgExtCtx: modulus must have degree >= 1");
    modulus = modulus.monic();
}

std::shared_ptr<AlgExtCtx> make_ctx(const RealRoot<Rational>& alpha) {
    return std::make_shared<AlgExtCtx>(alpha.def, alpha);
}

AlgExt::AlgExt(std::shared_ptr<AlgExtCtx> ctx, UPoly<Rational> rep)
    : ctx_(std::move(ctx)), rep_(std::move(rep)) {
    if (ctx_) reduce();
}

AlgExt AlgExt::generator(const std::shared_ptr<AlgExtCtx>& ctx) {
    UPoly<Rational> x;
    x.c = {Rational(0), Rational(1)};
    return AlgExt(ctx, std::move(x));
}

void AlgExt::reduce() const {
    if (ctx_ && !rep_.is_zero() && rep_.degree() >= ctx_->modulus.degree())
        rep_ = UPoly<Rational>::rem(rep_, ctx_->modulus);
}

void AlgExt::unify(const AlgExt& a, const AlgExt& b, std::shared_ptr<AlgExtCtx>& ctx) {
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_)
        throw std::logic_error("AlgExt: mixing elements of different extensions");
    ctx = a.ctx_ ? a.ctx_ : b.ctx_;
}

AlgExt AlgExt::operator-() const {
    AlgExt r = *this;
    r.rep_ = -r.rep_;
    return r;
}

AlgExt AlgExt::operator+(const AlgExt& o) const {
    std::shared_ptr<AlgExtCtx> c;
    unify(*this, o, c);
    return AlgExt(c, rep_ + o.rep_);
}

AlgExt AlgExt::operator-(const AlgExt& o) const {
    std::shared_ptr<AlgExtCtx> c;
    unify(*this, o, c);
    return AlgExt(c, rep_ - o.rep_);
}

AlgExt AlgExt::operator*(const AlgExt& o) const {
    std::shared_ptr<AlgExtCtx> c;
    unify(*this, o, c);
    return AlgExt(c, rep_ * o.rep_);
}

AlgExt AlgExt::operator*(const Rational& r) const {
    AlgExt out = *this;
    out.rep_ = out.rep_.scaled(r);
    return out;
}

int AlgExt::sign() const {
    if (!ctx_) return rep_.is_zero() ? 0 : sign_of(rep_.c[0]);
    reduce();
    if (rep_.is_zero()) return 0;
    if (rep_.degree() == 0) return sign_of(rep_.c[0]);
    // Fast path: a few rounds of interval evaluation.
    for (int round = 0; round < 3; ++round) {
        QInterval v = rep_.interval_at(ctx_->alpha.interval());
        if (!v.contains_zero()) return sign_of(v.lo);
        ctx_->alpha.refine_step();
    }
    int s = ctx_->alpha.sign_at(rep_);
    if (s != 0) return s;
    // alpha is a root of rep: split the context towards alpha's branch.
    UPoly<Rational> g = UPoly<Rational>::gcd(ctx_->modulus, rep_);
    if (g.degree() >= 1 && g.degree() < ctx_->modulus.degree()) ctx_->modulus = g;
    return 0;
}

AlgExt AlgExt::inverse() const {
    if (!ctx_) {
        if (rep_.is_zero()) throw std::domain_error("AlgExt: inverse of zero");
        return AlgExt(Rational(1) / rep_.c[0]);
    }
    while (true) {
        reduce();
        if (rep_.is_zero()) throw std::domain_error("AlgExt: inverse of zero");
        UPoly<Rational> g, s, t;
        xgcd(rep_, ctx_->modulus, g, s, t);
        if (g.degree() == 0) return AlgExt(ctx_, s); // s*rep == 1 mod modulus
        // rep shares a factor with the modulus: decide which side alpha is on.
        int sg = ctx_->alpha.sign_at(g);
        if (sg == 0) {
            // alpha is a root of g, hence of rep: the element is zero.
            ctx_->modulus = g.monic();
            throw std::domain_error("AlgExt: inverse of zero");
        }
        ctx_->modulus = UPoly<Rational>::quo(ctx_->modulus, g).monic();
    }
}

QInterval AlgExt::interval() const {
    if (!ctx_) return QInterval::point(rep_.is_zero() ? Rational(0) : rep_.c[0]);
    reduce();
    if (rep_.is_zero()) return QInterval::point(Rational(0));
    return rep_.interval_at(ctx_->alpha.interval());
}

void AlgExt::refine() const {
    if (ctx_) ctx_->alpha.refine_step();
}

AlgExt eval_multipoly(const MultiPoly& p, const AlgExt& xv, const AlgExt& yv, const AlgExt& zv) {
    std::shared_ptr<AlgExtCtx> ctx;
    for (const AlgExt* v : {&xv, &yv, &zv})
        if (v->ctx()) ctx = v->ctx();
    auto to_elt = [&](const Rational& r) {
        return ctx ? AlgExt(ctx, UPoly<Rational>::constant(r)) : AlgExt(r);
    };
    AlgExt acc = to_elt(Rational(0));
    auto epow = [](AlgExt b, int e, AlgExt one) {
        AlgExt r = one;
        for (int i = 0; i < e; ++i) r = r * b;
        return r;
    };
    AlgExt one = to_elt(Rational(1));
    for (const auto& [e, c] : p.terms()) {
        AlgExt t = one * c;
        if (e[0]) t = t * epow(xv, e[0], one);
        if (e[1]) t = t * epow(yv, e[1], one);
        if (e[2]) t = t * epow(zv, e[2], one);
        acc = acc + t;
    }
    return acc;
}

UPoly<AlgExt> upoly_over_ext(const MultiPoly& p, Var alpha_var,
                             const std::shared_ptr<AlgExtCtx>& ctx, Var v) {
    for (Var o : {Var::X, Var::Y, Var::Z})
        if (o != v && o != alpha_var && p.depends_on(o))
            throw std::domain_error("upoly_over_ext: extra variable present");
    AlgExt alpha = AlgExt::generator(ctx);
    std::vector<AlgExt> coeffs;
    int d = p.degree(v);
    for (int k = 0; k <= std::max(d, 0); ++k) {
        MultiPoly ck = p.coeff_of(v, k); // univariate in alpha_var
        UPoly<Rational> cu = to_upoly(ck, alpha_var);
        coeffs.push_back(cu.is_zero() ? AlgExt(ctx, UPoly<Rational>())
                                      : AlgExt(ctx, cu));
    }
    return UPoly<AlgExt>(std::move(coeffs));
}

} // namespace curvetop

#include "curvetop/space_topology.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <sstream>
#include <utility>

#ifdef CURVETOP_HAVE_OPENMP
#include <omp.h>
#endif

namespace curvetop {

namespace {

// Deterministic shear triples (lambda, mu, nu). Each block of 26 attempts
// uses one scale s = 1, 2, 3, ...: first the eight (lambda, mu) patterns
// (1,0),(0,1),(1,1),(-1,0),(0,-1),(-1,-1),(1,-1),(-1,1) with nu = 0, then the
// same nine combinations (including lambda = mu = 0) with nu = s, then with
// nu = -s. The nu != 0 entries exist because some symmetric curves are never
// plane-generic under (lambda, mu) shears alone (see ShearMap::nu).
std::tuple<Rational, Rational, Rational> space_shear(int attempt) {
    static const int pat[8][2] = {{1, 0}, {0, 1}, {1, 1}, {-1, 0},
                                  {0, -1}, {-1, -1}, {1, -1}, {-1, 1}};
    int idx = (attempt - 1) % 26;
    long s = (attempt - 1) / 26 + 1;
    if (idx < 8)
        return {Rational(pat[idx][0] * s), Rational(pat[idx][1] * s), Rational(0)};
    long nu = idx < 17 ? s : -s;
    int sub = idx < 17 ? idx - 8 : idx - 17;  // 0 = (lambda, mu) = (0, 0)
    if (sub == 0) return {Rational(0), Rational(0), Rational(nu)};
    return {Rational(pat[sub - 1][0] * s), Rational(pat[sub - 1][1] * s), Rational(nu)};
}

void check_z_shape(const MultiPoly& p) {
    if (p.degree(Var::Z) < 1 || !p.lcoef(Var::Z).is_constant())
        throw LeadingCoefficientVanishes();
}

Rational binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

// q with variable v replaced by N/D, cleared by D^(deg_v q).
MultiPoly subst_clear(const MultiPoly& q, Var v, const MultiPoly& N, const MultiPoly& D) {
    int d = q.degree(v);
    if (d <= 0) return q;
    std::vector<MultiPoly> np(static_cast<std::size_t>(d) + 1), dp(np.size());
    np[0] = MultiPoly(1);
    dp[0] = MultiPoly(1);
    for (int i = 1; i <= d; ++i) {
        np[static_cast<std::size_t>(i)] = np[static_cast<std::size_t>(i - 1)] * N;
        dp[static_cast<std::size_t>(i)] = dp[static_cast<std::size_t>(i - 1)] * D;
    }
    MultiPoly out;
    for (int i = 0; i <= d; ++i)
        out += q.coeff_of(v, i) * np[static_cast<std::size_t>(i)] * dp[static_cast<std::size_t>(d - i)];
    return out;
}

AlgExt eval_xy(const MultiPoly& p, const AlgExt& xv, const AlgExt& yv) {
    return eval_multipoly(p, xv, yv, AlgExt());
}

// p(xv, yv, Z) as a univariate polynomial in Z over Q(alpha).
UPoly<AlgExt> z_fiber(const MultiPoly& p, const AlgExt& xv, const AlgExt& yv) {
    UPoly<AlgExt> out;
    for (const MultiPoly& c : p.dense_in(Var::Z)) out.c.push_back(eval_xy(c, xv, yv));
    out.trim();
    return out;
}

// Coefficients of t^r in p(a + t, b + t*U), each a polynomial in U.
std::vector<UPoly<AlgExt>> t_expansion(const MultiPoly& p, const AlgExt& a, const AlgExt& b) {
    int dx = p.degree(Var::X), dy = p.degree(Var::Y);
    std::vector<AlgExt> pa(static_cast<std::size_t>(dx) + 1), pb(static_cast<std::size_t>(dy) + 1);
    pa[0] = AlgExt(Rational(1));
    for (int i = 1; i <= dx; ++i) pa[static_cast<std::size_t>(i)] = pa[static_cast<std::size_t>(i - 1)] * a;
    pb[0] = AlgExt(Rational(1));
    for (int i = 1; i <= dy; ++i) pb[static_cast<std::size_t>(i)] = pb[static_cast<std::size_t>(i - 1)] * b;

    std::vector<std::vector<AlgExt>> acc(static_cast<std::size_t>(dx + dy) + 1,
                                         std::vector<AlgExt>(static_cast<std::size_t>(dy) + 1));
    for (const auto& [e, c] : p.terms()) {
        int A = e[0], B = e[1];
        for (int i = 0; i <= A; ++i)
            for (int l = 0; l <= B; ++l) {
                AlgExt term = pa[static_cast<std::size_t>(A - i)] * pb[static_cast<std::size_t>(B - l)]
                            * (c * binom(A, i) * binom(B, l));
                auto& slot = acc[static_cast<std::size_t>(i + l)][static_cast<std::size_t>(l)];
                slot = slot + term;
            }
    }
    std::vector<UPoly<AlgExt>> out;
    for (auto& row : acc) {
        UPoly<AlgExt> u;
        u.c = std::move(row);
        u.trim();
        out.push_back(std::move(u));
    }
    return out;
}

// p(sigma - U).
UPoly<AlgExt> compose_flip(const UPoly<AlgExt>& p, const AlgExt& sigma) {
    UPoly<AlgExt> lin;
    lin.c = {sigma, AlgExt(Rational(-1))};
    lin.trim();
    UPoly<AlgExt> r;
    for (int i = p.degree(); i >= 0; --i)
        r = r * lin + UPoly<AlgExt>::constant(p.c[static_cast<std::size_t>(i)]);
    return r;
}

int sign_at_safe(const RealRoot<AlgExt>& r, const UPoly<AlgExt>& p) {
    if (p.is_zero()) return 0;
    return r.sign_at(p);
}

// N(alpha, y) / D(alpha, y) as a level-0 algebraic number, where y is a
// level-1 root over Q(alpha).
RealAlgebraicNumber ratfun_level1(const MultiPoly& N, const MultiPoly& D,
                                  const std::shared_ptr<AlgExtCtx>& ctx,
                                  const RealRoot<AlgExt>& y) {
    if (!N.depends_on(Var::Y) && !D.depends_on(Var::Y)) {
        AlgExt nv = eval_xy(N, AlgExt::generator(ctx), AlgExt());
        AlgExt dv = eval_xy(D, AlgExt::generator(ctx), AlgExt());
        return ran_from_algext(nv * dv.inverse());
    }

    // Strip any modulus factor shared with y's defining coefficients so the
    // annihilator below cannot vanish identically.
    UPoly<Rational> common = ctx->modulus;
    for (const AlgExt& c : y.def.c) {
        if (common.degree() < 1) break;
        common = UPoly<Rational>::gcd(common, c.rep());
    }
    if (common.degree() >= 1)
        ctx->modulus = UPoly<Rational>::quo(ctx->modulus, common).monic();

    MultiPoly Ftilde;
    for (std::size_t i = 0; i < y.def.c.size(); ++i)
        Ftilde += from_upoly(y.def.c[i].rep(), Var::X) * MultiPoly::variable(Var::Y, static_cast<int>(i));
    MultiPoly lin = D * MultiPoly::variable(Var::Z) - N;
    MultiPoly W = resultant(Ftilde, lin, Var::Y); // in (X, Z)
    MultiPoly q = from_upoly(ctx->modulus, Var::X);
    MultiPoly E = resultant(q, W, Var::X);        // in Z
    if (E.is_zero()) {
        // Same stripping trick one level up: drop modulus factors dividing
        // every Z-coefficient of W.
        UPoly<Rational> com = ctx->modulus;
        for (const MultiPoly& c : W.dense_in(Var::Z)) {
            if (com.degree() < 1) break;
            com = UPoly<Rational>::gcd(com, to_upoly(c, Var::X));
        }
        if (com.degree() >= 1) {
            ctx->modulus = UPoly<Rational>::quo(ctx->modulus, com).monic();
            E = resultant(from_upoly(ctx->modulus, Var::X), W, Var::X);
        }
        if (E.is_zero()) throw LimitUndetermined();
    }
    UPoly<Rational> ann = to_upoly(E, Var::Z).squarefree_part();
    std::vector<RealAlgebraicNumber> cands = RealAlgebraicNumber::isolate_squarefree(ann);
    auto enclose = [&]() {
        ctx->alpha.refine_step();
        y.refine_step();
        for (const AlgExt& c : y.def.c) elem_refine(c);
        QInterval ax = ctx->alpha.interval();
        QInterval yi = y.interval();
        QInterval zero = QInterval::point(Rational(0));
        QInterval dv = D.eval_interval(ax, yi, zero);
        while (dv.contains_zero()) {
            ctx->alpha.refine_step();
            y.refine_step();
            ax = ctx->alpha.interval();
            yi = y.interval();
            dv = D.eval_interval(ax, yi, zero);
        }
        return N.eval_interval(ax, yi, zero) / dv;
    };
    return identify_root(std::move(cands), enclose);
}

// Gcd of the two z-fibers above (alpha, beta); degree = number of common
// z-roots counted with multiplicity.
UPoly<AlgExt> fiber_gcd(const DeltaDecomposition& dd, const AlgExt& xv, const AlgExt& yv) {
    UPoly<AlgExt> f1 = z_fiber(dd.p1, xv, yv);
    UPoly<AlgExt> f2 = z_fiber(dd.p2, xv, yv);
    if (f1.is_zero() && f2.is_zero()) throw CommonComponent();
    if (f1.is_zero()) return f2.monic();
    if (f2.is_zero()) return f1.monic();
    return UPoly<AlgExt>::gcd(f1, f2);
}

} // namespace

MultiPoly projected_curve(const MultiPoly& p1, const MultiPoly& p2) {
    if (p1.is_zero() || p2.is_zero()) throw ZeroPolynomial();
    if (!MultiPoly::gcd(p1, p2).is_constant()) throw CommonComponent();
    check_z_shape(p1);
    check_z_shape(p2);
    MultiPoly res = resultant(p1, p2, Var::Z);
    if (res.is_zero()) throw CommonComponent();
    return MultiPoly::squarefree_part_total(res);
}

DeltaDecomposition delta_decomposition(const MultiPoly& p1, const MultiPoly& p2) {
    DeltaDecomposition dd;
    dd.p1 = p1;
    dd.p2 = p2;
    dd.h = projected_curve(p1, p2);
    dd.chain = subres_chain(p1, p2, Var::Z);
    dd.m = dd.chain.q;
    dd.theta.push_back(dd.h);
    for (int i = 1; i <= dd.m; ++i) {
        MultiPoly next = MultiPoly::gcd(dd.theta.back(), dd.chain.principal(i));
        MultiPoly di;
        if (!MultiPoly::try_exact_div(dd.theta.back(), next, di)) throw InternalDivisionNotExact();
        dd.delta.push_back(di.normalized());
        dd.theta.push_back(next);
    }
    if (!dd.theta.back().is_constant()) throw InternalDivisionNotExact();
    MultiPoly prod(Rational(1));
    for (const MultiPoly& di : dd.delta) prod *= di;
    if (prod.normalized() != dd.h.normalized()) throw InternalDivisionNotExact();
    return dd;
}

PseudoGenericReport certify_pseudo_generic(const DeltaDecomposition& dd) {
    PseudoGenericReport rep;
    for (int k = 2; k <= dd.m; ++k) { // k = 1 conditions are identically zero
        const MultiPoly& dk = dd.delta[static_cast<std::size_t>(k - 1)];
        if (dk.is_constant()) continue;
        MultiPoly srkk = dd.chain.principal(k);
        MultiPoly srk_sub = dd.chain.sr(k, k - 1);
        for (int i = 0; i < k; ++i) {
            MultiPoly R = dd.chain.sr(k, i) * srkk * Rational(static_cast<long>(k) * (k - i))
                        - srk_sub * dd.chain.sr(k, i + 1) * Rational(i + 1);
            if (!MultiPoly::divides(dk, R)) {
                rep.ok = false;
                rep.witness = PlaneWitness{k, i, R};
                return rep;
            }
        }
    }
    rep.ok = true;
    return rep;
}

SingularityClassification classify_singularities(const DeltaDecomposition& dd,
                                                 const GammaDecomposition& g) {
    if (g.f != dd.h) throw NotCertified();
    if (!certify_pseudo_generic(dd).ok) throw NotCertified();
    if (certify_plane_generic(g).status != GenericityStatus::Generic) throw NotCertified();

    SingularityClassification cls;
    int n = g.degree_y - 1;
    cls.u.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 1; j <= n; ++j) {
        const MultiPoly& gamma_j = g.gamma[static_cast<std::size_t>(j - 1)];
        std::vector<MultiPoly>& urow = cls.u[static_cast<std::size_t>(j)];
        urow.push_back(gamma_j);
        if (gamma_j.is_constant()) continue;
        MultiPoly N = -g.chain.sr(j, j - 1);
        MultiPoly D = g.chain.principal(j) * Rational(j);
        auto T = [&](const MultiPoly& q) { return subst_clear(q, Var::Y, N, D); };

        for (int k = 1; k <= dd.m; ++k) {
            MultiPoly uk = MultiPoly::gcd(urow.back(), T(dd.chain.principal(k)));
            MultiPoly vk;
            if (!MultiPoly::try_exact_div(urow.back(), uk, vk)) throw InternalDivisionNotExact();
            vk = vk.normalized();

            if (!vk.is_constant()) {
                ShadowClass sc;
                sc.plane_level = j;
                sc.space_level = k;
                if (k == 1) {
                    // single-preimage bootstrap level: no w-cascade needed
                    sc.gamma_jk = vk;
                    sc.chi_jk = MultiPoly(1);
                    sc.w = {vk};
                } else {
                    sc.w.push_back(vk);
                    for (int i = 0; i < k; ++i) {
                        MultiPoly R =
                            dd.chain.sr(k, i) * dd.chain.principal(k) * Rational(static_cast<long>(k) * (k - i))
                            - dd.chain.sr(k, k - 1) * dd.chain.sr(k, i + 1) * Rational(i + 1);
                        sc.w.push_back(MultiPoly::gcd(sc.w.back(), T(R)));
                    }
                    sc.gamma_jk = sc.w.back();
                    if (!MultiPoly::try_exact_div(sc.w.front(), sc.gamma_jk, sc.chi_jk))
                        throw InternalDivisionNotExact();
                    sc.chi_jk = sc.chi_jk.normalized();
                }
                cls.classes.push_back(std::move(sc));
            }
            urow.push_back(uk);
            if (uk.is_constant()) break;
        }
        if (!urow.back().is_constant())
            throw NotCertified(); // fiber gcd degree would exceed the chain
    }
    return cls;
}

SpaceGenericReport certify_space_generic(const DeltaDecomposition& dd,
                                         const GammaDecomposition& g,
                                         const SingularityClassification& cls) {
    SpaceGenericReport rep;
    for (const ShadowClass& sc : cls.classes) {
        if (sc.chi_jk.is_constant()) continue;
        if (sc.plane_level != 1 || sc.space_level != 2) {
            std::ostringstream os;
            os << "apparent singularities of class (j=" << sc.plane_level
               << ", k=" << sc.space_level << ") present";
            rep.ok = false;
            rep.reason = os.str();
            return rep;
        }
        // A chi_{1,2} point has two distinct z-values above it. When both are
        // real it is a crossing of two real branches and must be a transversal
        // node of h. When they are a complex-conjugate pair the point is an
        // isolated real zero of h that carries no real curve point at all; it
        // is skipped here and dropped during lifting.
        MultiPoly h = g.f;
        MultiPoly hxx = h.derivative(Var::X).derivative(Var::X);
        MultiPoly hxy = h.derivative(Var::X).derivative(Var::Y);
        MultiPoly hyy = h.derivative(Var::Y).derivative(Var::Y);
        UPoly<Rational> chiu = to_upoly(sc.chi_jk, Var::X);
        for (RealAlgebraicNumber& a : RealAlgebraicNumber::isolate(chiu)) {
            auto ctx = make_ctx(a);
            AlgExt gen = AlgExt::generator(ctx);
            AlgExt den = eval_xy(g.chain.principal(1), gen, AlgExt());
            AlgExt beta = eval_xy(-g.chain.sr(1, 0), gen, AlgExt()) * den.inverse();
            UPoly<AlgExt> gz = fiber_gcd(dd, gen, beta);
            if (gz.degree() != 2) {
                rep.ok = false;
                rep.reason = "apparent crossing with unexpected fiber degree";
                return rep;
            }
            std::size_t real_z = RealRoot<AlgExt>::isolate(gz).size();
            if (real_z == 0) continue;  // ghost crossing of complex branches
            if (real_z != 2) {
                rep.ok = false;
                rep.reason = "apparent crossing with a multiple lifted point";
                return rep;
            }
            AlgExt vyy = eval_xy(hyy, gen, beta);
            if (vyy.is_zero()) {
                rep.ok = false;
                rep.reason = "apparent crossing with vertical or degenerate tangent";
                return rep;
            }
            AlgExt vxy = eval_xy(hxy, gen, beta);
            AlgExt vxx = eval_xy(hxx, gen, beta);
            AlgExt disc = vxy * vxy - vxx * vyy;
            if (disc.sign() <= 0) {
                rep.ok = false;
                rep.reason = "apparent crossing is not a transversal node";
                return rep;
            }
        }
    }
    rep.ok = true;
    return rep;
}

RealAlgebraicNumber lift_regular_point(const DeltaDecomposition& dd, const Rational& x0,
                                       const RealAlgebraicNumber& y) {
    auto ctx = make_ctx(y);
    AlgExt yv = AlgExt::generator(ctx);
    AlgExt xv(x0);
    int level = -1;
    for (int k = 1; k <= dd.m; ++k) {
        const MultiPoly& dk = dd.delta[static_cast<std::size_t>(k - 1)];
        if (dk.is_constant()) continue;
        if (eval_xy(dk, xv, yv).is_zero()) {
            if (level >= 0) throw ParamDenominatorVanishes();
            level = k;
        }
    }
    if (level < 0) throw std::domain_error("lift_regular_point: point is not on the projected curve");
    AlgExt den = eval_xy(dd.chain.principal(level) * Rational(level), xv, yv);
    if (den.is_zero()) throw ParamDenominatorVanishes();
    AlgExt z = eval_xy(-dd.chain.sr(level, level - 1), xv, yv) * den.inverse();
    if (!eval_multipoly(dd.chain.S[static_cast<std::size_t>(level)], xv, yv, z).is_zero())
        throw CurveError("lifted point fails the subresultant root check");
    return ran_from_algext(z);
}


NodeLift lift_apparent(const DeltaDecomposition& dd, const GammaDecomposition& g,
                       const CriticalFiber& cf) {
    AlgExt gen = AlgExt::generator(cf.ctx);
    const AlgExt& beta = cf.beta;

    // Exact z-values from the specialized fiber gcd.
    UPoly<AlgExt> G = fiber_gcd(dd, gen, beta);
    UPoly<AlgExt> Gs = G.squarefree_part();
    if (Gs.degree() != 2) throw NotANode();
    std::vector<RealRoot<AlgExt>> zr = RealRoot<AlgExt>::isolate_squarefree(Gs);
    if (zr.size() != 2) throw LimitUndetermined();

    // Tangent slopes of the two crossing branches: roots of the quadratic
    // lowest homogeneous form of h at the node.
    MultiPoly h = g.f;
    AlgExt vyy = eval_xy(h.derivative(Var::Y).derivative(Var::Y), gen, beta);
    AlgExt vxy = eval_xy(h.derivative(Var::X).derivative(Var::Y), gen, beta);
    AlgExt vxx = eval_xy(h.derivative(Var::X).derivative(Var::X), gen, beta);
    if (vyy.is_zero()) throw NotANode();
    UPoly<AlgExt> quad;
    quad.c = {vxx, vxy * Rational(2), vyy};
    quad.trim();
    std::vector<RealRoot<AlgExt>> slopes = RealRoot<AlgExt>::isolate(quad);
    if (slopes.size() != 2) throw NotANode();
    const RealRoot<AlgExt>& u1 = slopes[0];
    AlgExt sigma = (vxy * Rational(-2)) * vyy.inverse(); // u1 + u2

    // Expand the level-1 rational parametrization z = N/D at (alpha + t,
    // beta + t*U) and take the branch-wise limits t -> 0.
    std::vector<UPoly<AlgExt>> nExp = t_expansion(-dd.chain.sr(1, 0), gen, beta);
    std::vector<UPoly<AlgExt>> dExp = t_expansion(dd.chain.sr(1, 1), gen, beta);
    auto poly_at = [](const std::vector<UPoly<AlgExt>>& v, std::size_t r) {
        return r < v.size() ? v[r] : UPoly<AlgExt>();
    };
    std::size_t limit = std::max(nExp.size(), dExp.size());

    // s1: order of D along the u1 branch; s2: along the u2 = sigma - u1 branch
    // (evaluated at u1 through the flipped polynomials).
    std::optional<std::size_t> s1, s2;
    for (std::size_t r = 0; r < limit && (!s1 || !s2); ++r) {
        if (!s1 && sign_at_safe(u1, poly_at(dExp, r)) != 0) s1 = r;
        if (!s1 && sign_at_safe(u1, poly_at(nExp, r)) != 0) throw LimitUndetermined();
        UPoly<AlgExt> dflip = compose_flip(poly_at(dExp, r), sigma);
        if (!s2 && sign_at_safe(u1, dflip) != 0) s2 = r;
        if (!s2 && sign_at_safe(u1, compose_flip(poly_at(nExp, r), sigma)) != 0)
            throw LimitUndetermined();
    }
    if (!s1 || !s2) throw LimitUndetermined();

    // sign(z(u1) - z(u2)) via cross-multiplication, all evaluated at u1.
    UPoly<AlgExt> n1 = poly_at(nExp, *s1), d1 = poly_at(dExp, *s1);
    UPoly<AlgExt> n2 = compose_flip(poly_at(nExp, *s2), sigma);
    UPoly<AlgExt> d2 = compose_flip(poly_at(dExp, *s2), sigma);
    int cmp = sign_at_safe(u1, n1 * d2 - n2 * d1) * sign_at_safe(u1, d1 * d2);
    if (cmp == 0) throw LimitUndetermined();

    NodeLift nl;
    nl.z_low = level0_from_level1(zr[0]);
    nl.z_high = level0_from_level1(zr[1]);
    nl.low_is_low_slope = cmp < 0;
    return nl;
}

namespace {

struct Analysis {
    MultiPoly a1, a2;
    DeltaDecomposition dd;
    GammaDecomposition gd;
    SingularityClassification cls;
};

std::optional<Analysis> try_analyze(const MultiPoly& a1, const MultiPoly& a2) {
    Analysis an;
    an.a1 = a1;
    an.a2 = a2;
    try {
        an.dd = delta_decomposition(a1, a2);
        an.gd = gamma_decomposition(an.dd.h);
    } catch (const LeadingCoefficientVanishes&) {
        return std::nullopt;
    }
    if (certify_plane_generic(an.gd).status != GenericityStatus::Generic) return std::nullopt;
    if (!certify_pseudo_generic(an.dd).ok) return std::nullopt;
    an.cls = classify_singularities(an.dd, an.gd);
    if (!certify_space_generic(an.dd, an.gd, an.cls).ok) return std::nullopt;
    return an;
}

struct LiftedRegular {
    // Final vertex coordinates (x, y, z) with the shear already undone.
    std::vector<std::array<RealAlgebraicNumber, 3>> pts;
};

// Lift every point of a regular sweep fiber of h: the z above (x0, y) is the
// exact rational parametrization of the unique Delta component through it.
// The inverse shear X = x + nu*y + lambda*z, Y = y + mu*z is evaluated inside
// Q(y), where it is a cheap polynomial combination; composing level-0 real
// algebraic numbers instead would square the defining-polynomial degrees.
LiftedRegular lift_regular_fiber(const Analysis& an, const RegularFiber& rf,
                                 const ShearMap& sm) {
    LiftedRegular out;
    AlgExt xv(rf.x);
    for (const RealAlgebraicNumber& y : rf.roots) {
        auto ctx = make_ctx(y);
        AlgExt yv = AlgExt::generator(ctx);
        int level = -1;
        for (int k = 1; k <= an.dd.m; ++k) {
            const MultiPoly& dk = an.dd.delta[static_cast<std::size_t>(k - 1)];
            if (dk.is_constant()) continue;
            if (eval_xy(dk, xv, yv).is_zero()) {
                if (level >= 0) throw ParamDenominatorVanishes();
                level = k;
            }
        }
        if (level < 0) throw CurveError("regular fiber point lies on no Delta component");
        AlgExt den = eval_xy(an.dd.chain.principal(level) * Rational(level), xv, yv);
        if (den.is_zero()) throw ParamDenominatorVanishes();
        AlgExt z = eval_xy(-an.dd.chain.sr(level, level - 1), xv, yv) * den.inverse();
        if (!eval_multipoly(an.dd.chain.S[static_cast<std::size_t>(level)], xv, yv, z).is_zero()
            || !eval_multipoly(an.a1, xv, yv, z).is_zero()
            || !eval_multipoly(an.a2, xv, yv, z).is_zero())
            throw CurveError("lifted regular point fails the on-curve check");
        RealAlgebraicNumber xo, yo;
        if (sign_of(sm.nu) == 0 && sign_of(sm.lambda) == 0)
            xo = ran_from_rational(rf.x);
        else
            xo = ran_from_algext(xv + yv * sm.nu + z * sm.lambda);
        yo = sign_of(sm.mu) == 0 ? y : ran_from_algext(yv + z * sm.mu);
        out.pts.push_back({std::move(xo), std::move(yo), ran_from_algext(z)});
    }
    return out;
}

VertexKind classify_space_point(const Analysis& an, const AlgExt& xv, const AlgExt& yv,
                                const AlgExt& zv) {
    AlgExt p1x = eval_multipoly(an.a1.derivative(Var::X), xv, yv, zv);
    AlgExt p1y = eval_multipoly(an.a1.derivative(Var::Y), xv, yv, zv);
    AlgExt p1z = eval_multipoly(an.a1.derivative(Var::Z), xv, yv, zv);
    AlgExt p2x = eval_multipoly(an.a2.derivative(Var::X), xv, yv, zv);
    AlgExt p2y = eval_multipoly(an.a2.derivative(Var::Y), xv, yv, zv);
    AlgExt p2z = eval_multipoly(an.a2.derivative(Var::Z), xv, yv, zv);
    bool singular = (p1x * p2y - p1y * p2x).is_zero()
                 && (p1x * p2z - p1z * p2x).is_zero()
                 && (p1y * p2z - p1z * p2y).is_zero();
    return singular ? VertexKind::RealSingular : VertexKind::XCritical;
}

struct CritLift {
    std::vector<int> ids;                  // vertex id per fiber root; -1 at a split node
    std::optional<std::pair<int, int>> node; // (low z id, high z id) of an apparent pair
    bool low_is_low_slope = false;
};

PLSGraph build_space_graph(const Analysis& an, const FiberSequence& fibers,
                           const ShearMap& sm, bool parallel) {
    PLSGraph graph;
    graph.dimension = 3;

    // Coordinates arrive with the shear already undone by the per-case code
    // below, which can do it inside the algebraic extension each case lives in.
    auto add_vertex = [&](VertexKind kind, const RealAlgebraicNumber& x,
                          const RealAlgebraicNumber& y, const RealAlgebraicNumber& z) {
        PLSVertex v;
        v.id = static_cast<int>(graph.vertices.size());
        v.kind = kind;
        v.coords = {x, y, z};
        graph.vertices.push_back(std::move(v));
        return graph.vertices.back().id;
    };

    // Regular sweep fibers are independent; this is the parallel kernel.
    std::vector<LiftedRegular> lifted(fibers.regular.size());
#ifdef CURVETOP_HAVE_OPENMP
    if (parallel) {
        std::vector<std::exception_ptr> errs(fibers.regular.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(fibers.regular.size()); ++i) {
            try {
                lifted[static_cast<std::size_t>(i)] =
                    lift_regular_fiber(an, fibers.regular[static_cast<std::size_t>(i)], sm);
            } catch (...) {
                errs[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (const std::exception_ptr& e : errs)
            if (e) std::rethrow_exception(e);
    } else
#endif
    {
        (void)parallel;
        for (std::size_t i = 0; i < fibers.regular.size(); ++i)
            lifted[i] = lift_regular_fiber(an, fibers.regular[i], sm);
    }

    std::vector<std::vector<int>> reg_ids(fibers.regular.size());
    for (std::size_t i = 0; i < fibers.regular.size(); ++i)
        for (const auto& p : lifted[i].pts)
            reg_ids[i].push_back(add_vertex(VertexKind::SweepRegular, p[0], p[1], p[2]));

    std::vector<CritLift> crit(fibers.critical.size());
    for (std::size_t c = 0; c < fibers.critical.size(); ++c) {
        const CriticalFiber& cf = fibers.critical[c];
        AlgExt gen = AlgExt::generator(cf.ctx);
        CritLift& cl = crit[c];
        for (std::size_t r = 0; r < cf.roots.size(); ++r) {
            if (static_cast<int>(r) != cf.critical_index) {
                // Smooth shadow point in a critical fiber: level-1 root over
                // Q(alpha), lifted through the Delta parametrization.
                const RealRoot<AlgExt>& yr = cf.roots[r];
                int level = -1;
                for (int k = 1; k <= an.dd.m; ++k) {
                    const MultiPoly& dk = an.dd.delta[static_cast<std::size_t>(k - 1)];
                    if (dk.is_constant()) continue;
                    if (yr.sign_at(upoly_over_ext(dk, Var::X, cf.ctx, Var::Y)) == 0) {
                        if (level >= 0) throw ParamDenominatorVanishes();
                        level = k;
                    }
                }
                if (level < 0) throw CurveError("critical fiber point lies on no Delta component");
                MultiPoly N = -an.dd.chain.sr(level, level - 1);
                MultiPoly D = an.dd.chain.principal(level) * Rational(level);
                if (yr.sign_at(upoly_over_ext(D, Var::X, cf.ctx, Var::Y)) == 0)
                    throw ParamDenominatorVanishes();
                // Exact on-curve checks with the denominator cleared.
                for (const MultiPoly* q :
                     {&an.dd.chain.S[static_cast<std::size_t>(level)], &an.a1, &an.a2}) {
                    MultiPoly cleared = subst_clear(*q, Var::Z, N, D);
                    if (yr.sign_at(upoly_over_ext(cleared, Var::X, cf.ctx, Var::Y)) != 0)
                        throw CurveError("lifted critical-fiber point fails the on-curve check");
                }
                RealAlgebraicNumber z0 = ratfun_level1(N, D, cf.ctx, yr);
                // The inverse shear is a rational function of yr over Q(alpha),
                // so it reuses the same annihilator machinery as z itself.
                RealAlgebraicNumber x0 =
                    sign_of(sm.nu) == 0 && sign_of(sm.lambda) == 0
                        ? cf.alpha
                        : ratfun_level1((MultiPoly::variable(Var::X)
                                         + MultiPoly::variable(Var::Y) * sm.nu) * D + N * sm.lambda,
                                        D, cf.ctx, yr);
                RealAlgebraicNumber y0 =
                    sign_of(sm.mu) == 0
                        ? level0_from_level1(yr)
                        : ratfun_level1(MultiPoly::variable(Var::Y) * D + N * sm.mu,
                                        D, cf.ctx, yr);
                cl.ids.push_back(add_vertex(VertexKind::Regular, x0, y0, z0));
                continue;
            }

            // The multiple point of the fiber.
            UPoly<AlgExt> G = fiber_gcd(an.dd, gen, cf.beta);
            UPoly<AlgExt> Gs = G.squarefree_part();
            if (Gs.degree() == 1) {
                AlgExt z = -Gs.c[0]; // Gs is monic linear
                if (!eval_multipoly(an.a1, gen, cf.beta, z).is_zero()
                    || !eval_multipoly(an.a2, gen, cf.beta, z).is_zero())
                    throw CurveError("lifted multiple point fails the on-curve check");
                VertexKind kind = classify_space_point(an, gen, cf.beta, z);
                // Everything lives in Q(alpha); undo the shear there.
                RealAlgebraicNumber x0 =
                    sign_of(sm.nu) == 0 && sign_of(sm.lambda) == 0
                        ? cf.alpha
                        : ran_from_algext(gen + cf.beta * sm.nu + z * sm.lambda);
                RealAlgebraicNumber y0 = sign_of(sm.mu) == 0
                                             ? ran_from_algext(cf.beta)
                                             : ran_from_algext(cf.beta + z * sm.mu);
                cl.ids.push_back(add_vertex(kind, x0, y0, ran_from_algext(z)));
            } else if (Gs.degree() == 2) {
                std::size_t real_z = RealRoot<AlgExt>::isolate_squarefree(Gs).size();
                if (real_z == 0) {
                    // Ghost point: an isolated real zero of h whose two
                    // z-values are complex conjugates. No real curve point
                    // lies above it and no plane branch reaches it, so it
                    // contributes nothing to the space graph.
                    cl.ids.push_back(-1);
                    continue;
                }
                NodeLift nl = lift_apparent(an.dd, an.gd, cf);
                // alpha and beta live in a small extension here (chi roots),
                // so pairwise level-0 combinations with z stay cheap.
                RealAlgebraicNumber y0 = ran_from_algext(cf.beta);
                RealAlgebraicNumber cx =
                    sign_of(sm.nu) == 0 ? cf.alpha
                                        : ran_from_algext(gen + cf.beta * sm.nu);
                auto unshear_x = [&](const RealAlgebraicNumber& z) {
                    return sign_of(sm.lambda) == 0 ? cx : linear_comb(cx, sm.lambda, z);
                };
                auto unshear_y = [&](const RealAlgebraicNumber& z) {
                    return sign_of(sm.mu) == 0 ? y0 : linear_comb(y0, sm.mu, z);
                };
                int id_low = add_vertex(VertexKind::ApparentLift, unshear_x(nl.z_low),
                                        unshear_y(nl.z_low), nl.z_low);
                int id_high = add_vertex(VertexKind::ApparentLift, unshear_x(nl.z_high),
                                         unshear_y(nl.z_high), nl.z_high);
                cl.node = {id_low, id_high};
                cl.low_is_low_slope = nl.low_is_low_slope;
                cl.ids.push_back(-1);
            } else {
                throw NotCertified();
            }
        }
    }

    // Edges follow the plane connection rule; at a split apparent node the
    // two middle branches on each side attach to the vertex their tangent
    // slope selects.
    for (std::size_t c = 0; c < fibers.critical.size(); ++c) {
        int p = static_cast<int>(crit[c].ids.size());
        int mi = fibers.critical[c].critical_index;
        for (std::size_t side : {c, c + 1}) {
            int s = static_cast<int>(reg_ids[side].size());
            std::vector<int> at_node;
            for (auto [ri, ci] : match_branches(s, p, mi)) {
                if (ci == mi && crit[c].node) {
                    at_node.push_back(ri);
                    continue;
                }
                int cid = crit[c].ids[static_cast<std::size_t>(ci)];
                if (cid < 0) throw NotCertified(); // branch reaches a ghost point
                graph.add_edge(reg_ids[side][static_cast<std::size_t>(ri)], cid);
            }
            if (crit[c].node) {
                if (at_node.size() != 2) throw NotANode();
                std::sort(at_node.begin(), at_node.end());
                int v_u1 = crit[c].low_is_low_slope ? crit[c].node->first : crit[c].node->second;
                int v_u2 = crit[c].low_is_low_slope ? crit[c].node->second : crit[c].node->first;
                // Ascending y on the left meets descending slope; on the
                // right, ascending slope.
                bool left = side == c;
                int lower = reg_ids[side][static_cast<std::size_t>(at_node[0])];
                int upper = reg_ids[side][static_cast<std::size_t>(at_node[1])];
                graph.add_edge(lower, left ? v_u2 : v_u1);
                graph.add_edge(upper, left ? v_u1 : v_u2);
            }
        }
    }
    return graph;
}

} // namespace

SpaceTopologyResult space_topology(const MultiPoly& p1, const MultiPoly& p2,
                                   const SpaceOptions& opts) {
    if (p1.is_zero() || p2.is_zero()) throw ZeroPolynomial();
    if (!MultiPoly::gcd(p1, p2).is_constant()) throw CommonComponent();

    int attempt = 0;
    while (true) {
        ShearMap sm;
        sm.space = true;
        if (attempt > 0) {
            auto [l, m, n] = space_shear(attempt);
            sm.lambda = l;
            sm.mu = m;
            sm.nu = n;
        }
        MultiPoly a1 = attempt == 0 ? p1 : sm.apply(p1).normalized();
        MultiPoly a2 = attempt == 0 ? p2 : sm.apply(p2).normalized();

        std::optional<Analysis> an;
        bool shape_ok = true;
        try {
            MultiPoly h = projected_curve(a1, a2);
            if (h.is_constant()) {
                // The surfaces have no common point: the curve is empty.
                SpaceTopologyResult res;
                res.graph.dimension = 3;
                res.graph.certificates.plane_generic = true;
                res.graph.certificates.pseudo_generic = true;
                res.graph.certificates.space_generic = true;
                if (!sm.is_identity()) res.graph.certificates.shears.push_back(sm.str());
                res.p1_used = a1;
                res.p2_used = a2;
                res.shear = sm;
                return res;
            }
            an = try_analyze(a1, a2);
        } catch (const LeadingCoefficientVanishes&) {
            shape_ok = false;
        }

        if (shape_ok && an) {
            FiberSequence fibers = compute_plane_fibers(an->gd);
            SpaceTopologyResult res;
            res.graph = build_space_graph(*an, fibers, sm, opts.parallel);
            res.graph.certificates.plane_generic = true;
            res.graph.certificates.pseudo_generic = true;
            res.graph.certificates.space_generic = true;
            if (!sm.is_identity()) res.graph.certificates.shears.push_back(sm.str());
            res.p1_used = std::move(an->a1);
            res.p2_used = std::move(an->a2);
            res.shear = sm;
            res.delta = std::move(an->dd);
            res.plane = std::move(an->gd);
            res.classes = std::move(an->cls);
            res.parallel_used = opts.parallel;
            return res;
        }

        ++attempt;
        if (!opts.shear.allow_shear || attempt > opts.shear.budget) throw ShearBudgetExhausted();
    }
}

} // namespace curvetop


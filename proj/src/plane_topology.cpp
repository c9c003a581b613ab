#include "curvetop/plane_topology.hpp"

#include <algorithm>
#include <sstream>

namespace curvetop {

namespace {

// Shear slopes tried after the identity: 1, -1, 2, -2, ...
Rational shear_value(int attempt) {
    long k = (attempt + 1) / 2;
    return (attempt % 2 == 1) ? Rational(k) : Rational(-k);
}

AlgExt eval_at_alpha(const MultiPoly& p, const std::shared_ptr<AlgExtCtx>& ctx) {
    return eval_multipoly(p, AlgExt::generator(ctx), AlgExt(), AlgExt());
}

} // namespace

GammaDecomposition gamma_decomposition(const MultiPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    if (f.depends_on(Var::Z)) throw std::domain_error("plane curve must involve x and y only");
    if (f.degree(Var::Y) < 1 || !f.lcoef(Var::Y).is_constant())
        throw LeadingCoefficientVanishes();
    if (MultiPoly::squarefree_part_total(f) != f.normalized()) throw NotSquarefree();

    GammaDecomposition g;
    g.f = f;
    g.degree_y = f.degree(Var::Y);
    g.chain = subres_chain(f, f.derivative(Var::Y), Var::Y);
    if (g.chain.S.empty() || g.chain.S[0].is_zero()) throw NotSquarefree();

    g.phi.push_back(MultiPoly::squarefree_part(g.chain.S[0], Var::X));
    for (int i = 1; i < g.degree_y; ++i) {
        MultiPoly next = MultiPoly::gcd(g.phi.back(), g.chain.principal(i));
        g.gamma.push_back(MultiPoly::exact_div(g.phi.back(), next).normalized());
        g.phi.push_back(next);
    }
    return g;
}

GenericityReport certify_plane_generic(const GammaDecomposition& g) {
    GenericityReport rep;
    for (int k = 1; k < g.degree_y; ++k) {
        const MultiPoly& gk = g.gamma[static_cast<std::size_t>(k - 1)];
        if (gk.is_constant()) continue;
        MultiPoly srkk = g.chain.principal(k);
        MultiPoly srk_sub = g.chain.sr(k, k - 1);
        for (int i = 0; i < k; ++i) {
            MultiPoly R = g.chain.sr(k, i) * srkk * Rational(static_cast<long>(k) * (k - i))
                        - srk_sub * g.chain.sr(k, i + 1) * Rational(i + 1);
            if (!MultiPoly::divides(gk, R)) {
                PlaneWitness w;
                w.k = k;
                w.i = i;
                w.residue = from_upoly(
                    UPoly<Rational>::rem(to_upoly(R, Var::X), to_upoly(gk, Var::X)), Var::X);
                rep.status = GenericityStatus::NonGeneric;
                rep.witness = w;
                return rep;
            }
        }
    }
    rep.status = GenericityStatus::Generic;
    return rep;
}

GenericityReport certify_plane_generic(const MultiPoly& f) {
    try {
        return certify_plane_generic(gamma_decomposition(f));
    } catch (const LeadingCoefficientVanishes&) {
        GenericityReport rep;
        rep.status = GenericityStatus::DegenerateLcoef;
        return rep;
    }
}

FiberSequence compute_plane_fibers(const GammaDecomposition& g) {
    GenericityReport rep = certify_plane_generic(g);
    if (rep.status != GenericityStatus::Generic) {
        std::ostringstream os;
        if (rep.witness)
            os << "divisibility certificate fails at (k=" << rep.witness->k
               << ", i=" << rep.witness->i << ")";
        else
            os << "certificate fails";
        throw NotCertifiedGeneric(os.str());
    }

    FiberSequence seq;
    for (int k = 1; k < g.degree_y; ++k) {
        const MultiPoly& gk = g.gamma[static_cast<std::size_t>(k - 1)];
        if (gk.is_constant()) continue;
        UPoly<Rational> gku = to_upoly(gk, Var::X);
        for (RealAlgebraicNumber& a : RealAlgebraicNumber::isolate(gku)) {
            CriticalFiber cf;
            cf.k = k;
            cf.alpha = a;
            cf.alpha_is_rational = a.is_point();
            cf.ctx = make_ctx(a);
            cf.fiber_poly = upoly_over_ext(g.f, Var::X, cf.ctx, Var::Y);
            cf.roots = RealRoot<AlgExt>::isolate(cf.fiber_poly);

            // beta = -sr_{k,k-1}(alpha) / (k * sr_{k,k}(alpha)).
            AlgExt num = eval_at_alpha(-g.chain.sr(k, k - 1), cf.ctx);
            AlgExt den = eval_at_alpha(g.chain.principal(k) * Rational(k), cf.ctx);
            cf.beta = num * den.inverse();

            // Locate beta among the fiber roots via the linear polynomial Y - beta.
            UPoly<AlgExt> lin;
            lin.c = {-cf.beta, elem_from_rational(cf.beta, Rational(1))};
            lin.trim();
            cf.critical_index = -1;
            for (std::size_t r = 0; r < cf.roots.size(); ++r) {
                if (cf.roots[r].sign_at(lin) == 0) {
                    if (cf.critical_index >= 0)
                        throw NotCertifiedGeneric("multiple point matched twice in its fiber");
                    cf.critical_index = static_cast<int>(r);
                }
            }
            if (cf.critical_index < 0)
                throw NotCertifiedGeneric("multiple point not found among the fiber roots");
            if (cf.roots[static_cast<std::size_t>(cf.critical_index)].multiplicity != k + 1)
                throw NotCertifiedGeneric("fiber multiplicity disagrees with the gcd level");
            for (std::size_t r = 0; r < cf.roots.size(); ++r)
                if (static_cast<int>(r) != cf.critical_index && cf.roots[r].multiplicity != 1)
                    throw NotCertifiedGeneric("second multiple root in a critical fiber");

            // Independent vanishing check of the defining subresultant.
            AlgExt on_srk =
                eval_multipoly(g.chain.S[static_cast<std::size_t>(k)],
                               AlgExt::generator(cf.ctx), cf.beta, AlgExt());
            if (!on_srk.is_zero())
                throw NotCertifiedGeneric("Sr_k does not vanish at the rational lift");

            cf.singular =
                eval_multipoly(g.f.derivative(Var::X), AlgExt::generator(cf.ctx), cf.beta,
                               AlgExt())
                    .is_zero();
            seq.critical.push_back(std::move(cf));
        }
    }

    std::sort(seq.critical.begin(), seq.critical.end(),
              [](const CriticalFiber& a, const CriticalFiber& b) {
                  return RealAlgebraicNumber::compare(a.alpha, b.alpha) < 0;
              });

    // Shrink enclosures until consecutive critical abscissas are strictly
    // separated, then pick rational sweep abscissas in between.
    for (std::size_t i = 0; i + 1 < seq.critical.size(); ++i) {
        const RealAlgebraicNumber& a = seq.critical[i].alpha;
        const RealAlgebraicNumber& b = seq.critical[i + 1].alpha;
        while (!(a.hi < b.lo)) {
            a.refine_step();
            b.refine_step();
        }
    }
    std::vector<Rational> xs;
    if (seq.critical.empty()) {
        xs.push_back(Rational(0));
    } else {
        xs.push_back(seq.critical.front().alpha.lo - 1);
        for (std::size_t i = 0; i + 1 < seq.critical.size(); ++i)
            xs.push_back((seq.critical[i].alpha.hi + seq.critical[i + 1].alpha.lo) / 2);
        xs.push_back(seq.critical.back().alpha.hi + 1);
    }
    for (const Rational& x0 : xs) {
        RegularFiber rf;
        rf.x = x0;
        MultiPoly fx = g.f.specialize(Var::X, x0);
        if (fx.depends_on(Var::Y))
            rf.roots = RealAlgebraicNumber::isolate(to_upoly(fx, Var::Y));
        seq.regular.push_back(std::move(rf));
    }
    return seq;
}

std::vector<std::pair<int, int>> match_branches(int s, int p, int mi) {
    int b = mi;
    int a = p - mi - 1;
    int middle = s - a - b;
    if (middle < 0) throw NotCertifiedGeneric("adjacent fiber counts are inconsistent");
    std::vector<std::pair<int, int>> out;
    for (int t = 0; t < b; ++t) out.emplace_back(t, t);
    for (int t = 0; t < middle; ++t) out.emplace_back(b + t, mi);
    for (int t = 0; t < a; ++t) out.emplace_back(s - a + t, mi + 1 + t);
    return out;
}

namespace {

PLSGraph build_plane_graph(const FiberSequence& seq, const MultiPoly& f,
                           const Rational& lambda) {
    PLSGraph graph;
    graph.dimension = 2;
    bool shear = sign_of(lambda) != 0;

    auto add_vertex = [&](VertexKind kind, const RealAlgebraicNumber& x,
                          const RealAlgebraicNumber& y) {
        PLSVertex v;
        v.id = static_cast<int>(graph.vertices.size());
        v.kind = kind;
        RealAlgebraicNumber xo = shear ? linear_comb(x, lambda, y) : x;
        v.coords = {xo, y};
        graph.vertices.push_back(std::move(v));
        return graph.vertices.back().id;
    };

    std::vector<std::vector<int>> reg_ids(seq.regular.size());
    std::vector<std::vector<int>> crit_ids(seq.critical.size());

    for (std::size_t i = 0; i < seq.regular.size(); ++i) {
        const RegularFiber& rf = seq.regular[i];
        UPoly<Rational> fiber;
        MultiPoly fx = f.specialize(Var::X, rf.x);
        if (fx.depends_on(Var::Y)) fiber = to_upoly(fx, Var::Y);
        RealAlgebraicNumber x0 = ran_from_rational(rf.x);
        for (const RealAlgebraicNumber& y : rf.roots) {
            if (!fiber.is_zero() && y.sign_at(fiber) != 0)
                throw CurveError("regular fiber point fails the on-curve check");
            reg_ids[i].push_back(add_vertex(VertexKind::SweepRegular, x0, y));
        }
    }
    for (std::size_t i = 0; i < seq.critical.size(); ++i) {
        const CriticalFiber& cf = seq.critical[i];
        for (std::size_t r = 0; r < cf.roots.size(); ++r) {
            if (cf.roots[r].sign_at(cf.fiber_poly) != 0)
                throw CurveError("critical fiber point fails the on-curve check");
            RealAlgebraicNumber y0 = level0_from_level1(cf.roots[r]);
            VertexKind kind = VertexKind::Regular;
            if (static_cast<int>(r) == cf.critical_index)
                kind = cf.singular ? VertexKind::RealSingular : VertexKind::XCritical;
            crit_ids[i].push_back(add_vertex(kind, cf.alpha, y0));
        }
    }

    for (std::size_t c = 0; c < seq.critical.size(); ++c) {
        int p = static_cast<int>(crit_ids[c].size());
        int mi = seq.critical[c].critical_index;
        for (std::size_t side : {c, c + 1}) {
            int s = static_cast<int>(reg_ids[side].size());
            for (auto [ri, ci] : match_branches(s, p, mi))
                graph.add_edge(reg_ids[side][static_cast<std::size_t>(ri)],
                               crit_ids[c][static_cast<std::size_t>(ci)]);
        }
    }
    return graph;
}

} // namespace

PlaneTopologyResult plane_topology(const MultiPoly& f, const ShearRetryPolicy& policy) {
    if (f.is_zero()) throw ZeroPolynomial();
    MultiPoly fs = MultiPoly::squarefree_part_total(f);
    bool replaced = fs != f.normalized();

    int attempt = 0;
    while (true) {
        ShearMap sm;
        sm.space = false;
        sm.lambda = attempt == 0 ? Rational(0) : shear_value(attempt);
        MultiPoly fsh = attempt == 0 ? fs : sm.apply(fs).normalized();
        try {
            GammaDecomposition g = gamma_decomposition(fsh);
            GenericityReport rep = certify_plane_generic(g);
            if (rep.status == GenericityStatus::Generic) {
                PlaneTopologyResult res;
                res.f_used = fsh;
                res.shear = sm;
                res.fibers = compute_plane_fibers(g);
                res.graph = build_plane_graph(res.fibers, fsh, sm.lambda);
                res.squarefree_replaced = replaced;
                if (!sm.is_identity()) rep.shear_applied = sm;
                res.report = rep;
                res.graph.certificates.plane_generic = true;
                if (!sm.is_identity())
                    res.graph.certificates.shears.push_back(sm.str());
                if (replaced)
                    res.graph.certificates.notes.push_back(
                        "input replaced by its squarefree part");
                res.decomp = std::move(g);
                return res;
            }
        } catch (const LeadingCoefficientVanishes&) {
            // fall through to the next shear
        }
        ++attempt;
        if (!policy.allow_shear || attempt > policy.budget) throw ShearBudgetExhausted();
    }
}

} // namespace curvetop

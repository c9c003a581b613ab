#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <curvetop/parse.hpp>
#include <curvetop/plane_topology.hpp>
#include <curvetop/subresultant.hpp>

#include <random>

using namespace curvetop;

namespace {

MultiPoly random_curve(std::mt19937& rng, int max_total_deg) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, max_total_deg);
    MultiPoly p;
    int terms = 3 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        int ex = deg(rng), ey = deg(rng);
        if (ex + ey > max_total_deg) continue;
        p += MultiPoly::term(Rational(coef(rng)), ex, ey, 0);
    }
    // Constant leading coefficient in Y so no normalization shear is needed.
    p += MultiPoly::term(Rational(1), 0, std::max(p.degree(Var::Y) + 1, 2), 0);
    return MultiPoly::squarefree_part(p, Var::Y);
}

/// Root-counting oracle for a certified-generic curve: above every real
/// x-critical value, the fiber's multiple part collapses to a single point
/// (the squarefree part of gcd(f, f_Y) specialized at alpha has degree 1).
bool real_fibers_have_single_multiple_point(const MultiPoly& f) {
    MultiPoly fy = f.derivative(Var::Y);
    MultiPoly res = MultiPoly::squarefree_part(resultant(f, fy, Var::Y), Var::X);
    if (res.is_constant()) return true;
    UPoly<Rational> rx;
    for (const MultiPoly& c : res.dense_in(Var::X)) rx.c.push_back(c.constant_value());
    rx.trim();
    for (const auto& alpha : RealRoot<Rational>::isolate_squarefree(rx)) {
        auto ctx = make_ctx(alpha);
        UPoly<AlgExt> fa = upoly_over_ext(f, Var::X, ctx, Var::Y);
        UPoly<AlgExt> fya = upoly_over_ext(fy, Var::X, ctx, Var::Y);
        UPoly<AlgExt> g = UPoly<AlgExt>::gcd(fa, fya);
        if (g.squarefree_part().degree() != 1) return false;
    }
    return true;
}

/// Recompute the witness residue from the determinantal (minor-based)
/// subresultant oracle and confirm it really is nonzero mod Gamma_k.
bool witness_confirmed(const MultiPoly& f, const GammaDecomposition& g,
                       const PlaneWitness& w) {
    MultiPoly fy = f.derivative(Var::Y);
    auto sr = [&](int k, int j) { return subres_minor(f, fy, Var::Y, k, j); };
    int k = w.k, i = w.i;
    MultiPoly R = Rational(static_cast<long>(k) * (k - i)) * sr(k, i) * sr(k, k) -
                  Rational(i + 1) * sr(k, k - 1) * sr(k, i + 1);
    const MultiPoly& gk = g.gamma[static_cast<std::size_t>(k - 1)];
    if (gk.degree(Var::X) < 1) return false;
    return !MultiPoly::prem(R, gk, Var::X).is_zero();
}

} // namespace

TEST_CASE("gamma decomposition of textbook curves") {
    // Circle: one multiplicity-2 contact at each of x = +-1.
    GammaDecomposition c = gamma_decomposition(parse_poly("x^2 + y^2 - 1"));
    REQUIRE(c.gamma.size() == 1);
    CHECK(c.gamma[0].normalized() == parse_poly("x^2 - 1"));
    CHECK(c.phi[0].normalized() == parse_poly("x^2 - 1"));

    // Nodal cubic: critical abscissas x = 0 (node) and x = -1 (turn).
    GammaDecomposition n = gamma_decomposition(parse_poly("y^2 - x^2*(x+1)"));
    REQUIRE(n.gamma.size() == 1);
    CHECK(n.gamma[0].normalized() == parse_poly("x^2 + x"));

    // Parabola y^2 = x: single turning point at the origin.
    GammaDecomposition p = gamma_decomposition(parse_poly("y^2 - x"));
    CHECK(p.gamma[0].normalized() == parse_poly("x"));

    // Phi_0 = prod Gamma_i up to normalization.
    MultiPoly prod(Rational(1));
    for (const MultiPoly& gi : n.gamma) prod *= gi;
    CHECK(prod.normalized() == n.phi[0].normalized());
}

TEST_CASE("gamma decomposition input errors") {
    CHECK_THROWS_AS(gamma_decomposition(MultiPoly()), ZeroPolynomial);
    CHECK_THROWS_AS(gamma_decomposition(parse_poly("(y - x)^2")), NotSquarefree);
    CHECK_THROWS_AS(gamma_decomposition(parse_poly("x*y^2 + 1")), LeadingCoefficientVanishes);
}

TEST_CASE("plane genericity certificate on fixed curves") {
    CHECK(certify_plane_generic(parse_poly("y^2 - x")).status == GenericityStatus::Generic);
    CHECK(certify_plane_generic(parse_poly("x^2 + y^2 - 1")).status == GenericityStatus::Generic);

    // Two circles stacked above each other: both critical points of the
    // x = +-1 fibers share their abscissa, so the curve is not generic.
    MultiPoly stacked = parse_poly("(x^2 + (y-2)^2 - 1)*(x^2 + (y+2)^2 - 1)");
    GenericityReport rep = certify_plane_generic(stacked);
    CHECK(rep.status == GenericityStatus::NonGeneric);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->k == 2);
    CHECK(rep.witness->i == 0);
    CHECK(witness_confirmed(stacked, gamma_decomposition(stacked), *rep.witness));

    // The same curve after a shear is generic.
    ShearMap sh{false, Rational(1), Rational(0), Rational(0)};
    CHECK(certify_plane_generic(sh.apply(stacked)).status == GenericityStatus::Generic);
}

TEST_CASE("certificate decision matches the root-counting oracle") {
    std::mt19937 rng(5150);
    int checked = 0;
    while (checked < 12) {
        MultiPoly f = random_curve(rng, 4);
        if (f.degree(Var::Y) < 2) continue;
        GammaDecomposition g;
        try {
            g = gamma_decomposition(f);
        } catch (const CurveError&) {
            continue;
        }
        GenericityReport rep = certify_plane_generic(g);
        if (rep.status == GenericityStatus::Generic) {
            CHECK(real_fibers_have_single_multiple_point(f));
        } else if (rep.witness) {
            CHECK(witness_confirmed(f, g, *rep.witness));
        }
        ++checked;
    }
}

TEST_CASE("critical fiber structure of the nodal cubic") {
    MultiPoly f = parse_poly("y^2 - x^2*(x+1)");
    FiberSequence fs = compute_plane_fibers(gamma_decomposition(f));
    REQUIRE(fs.critical.size() == 2);
    REQUIRE(fs.regular.size() == 3);

    // x = -1: smooth turning point; x = 0: the node (f_X vanishes too).
    auto minus1 = ran_from_rational(Rational(-1));
    auto zero = ran_from_rational(Rational(0));
    CHECK(RealRoot<Rational>::compare(fs.critical[0].alpha, minus1) == 0);
    CHECK_FALSE(fs.critical[0].singular);
    CHECK(RealRoot<Rational>::compare(fs.critical[1].alpha, zero) == 0);
    CHECK(fs.critical[1].singular);

    // Fiber cardinalities: empty left of the loop, two branches inside, two
    // branches to the right of the node.
    CHECK(fs.regular[0].roots.empty());
    CHECK(fs.regular[1].roots.size() == 2);
    CHECK(fs.regular[2].roots.size() == 2);
    CHECK(fs.critical[0].roots.size() == 1);
    CHECK(fs.critical[1].roots.size() == 1);
}

TEST_CASE("branch matching") {
    using P = std::vector<std::pair<int, int>>;
    // Two regular branches closing onto one critical point.
    CHECK(match_branches(2, 1, 0) == P{{0, 0}, {1, 0}});
    // Equal counts: identity matching through the multiple point.
    CHECK(match_branches(3, 3, 1) == P{{0, 0}, {1, 1}, {2, 2}});
    // One extra pair of middle branches folds onto the multiple point.
    CHECK(match_branches(4, 3, 1) == P{{0, 0}, {1, 1}, {2, 1}, {3, 2}});
    CHECK(match_branches(0, 1, 0) == P{});
}

TEST_CASE("plane topology of the circle") {
    PlaneTopologyResult r = plane_topology(parse_poly("x^2 + y^2 - 1"));
    CHECK(r.shear.is_identity());
    CHECK(r.graph.dimension == 2);
    CHECK(r.graph.vertices.size() == 4);
    CHECK(r.graph.edges.size() == 4);
    ComponentStats st = component_stats(r.graph);
    CHECK(st.components == 1);
    CHECK(st.cycle_rank == 1);
    int xcrit = 0;
    for (const auto& v : r.graph.vertices)
        if (v.kind == VertexKind::XCritical) ++xcrit;
    CHECK(xcrit == 2);
}

TEST_CASE("plane topology of singular and unbounded curves") {
    // Nodal cubic: one loop plus an unbounded branch through the node.
    PlaneTopologyResult n = plane_topology(parse_poly("y^2 - x^2*(x+1)"));
    ComponentStats ns = component_stats(n.graph);
    CHECK(ns.components == 1);
    CHECK(ns.cycle_rank == 1);
    bool has_sing = false;
    for (const auto& v : n.graph.vertices)
        if (v.kind == VertexKind::RealSingular) has_sing = true;
    CHECK(has_sing);

    // Parabola: a single unbounded arc.
    ComponentStats ps = component_stats(plane_topology(parse_poly("y^2 - x")).graph);
    CHECK(ps.components == 1);
    CHECK(ps.cycle_rank == 0);

    // Cusp: still one arc, with a singular vertex at the origin.
    ComponentStats cs = component_stats(plane_topology(parse_poly("y^2 - x^3")).graph);
    CHECK(cs.components == 1);
    CHECK(cs.cycle_rank == 0);
}

TEST_CASE("non-generic input is sheared automatically") {
    MultiPoly stacked = parse_poly("(x^2 + (y-2)^2 - 1)*(x^2 + (y+2)^2 - 1)");
    PlaneTopologyResult r = plane_topology(stacked);
    CHECK_FALSE(r.shear.is_identity());
    CHECK(r.report.status == GenericityStatus::Generic);
    ComponentStats st = component_stats(r.graph);
    CHECK(st.components == 2);
    CHECK(st.cycle_rank == 2);

    // A zero budget must fail instead.
    ShearRetryPolicy none;
    none.budget = 0;
    CHECK_THROWS_AS(plane_topology(stacked, none), ShearBudgetExhausted);
}

TEST_CASE("non-squarefree input is replaced by its squarefree part") {
    PlaneTopologyResult r = plane_topology(parse_poly("(x^2 + y^2 - 1)^2"));
    CHECK(r.squarefree_replaced);
    ComponentStats st = component_stats(r.graph);
    CHECK(st.components == 1);
    CHECK(st.cycle_rank == 1);
}

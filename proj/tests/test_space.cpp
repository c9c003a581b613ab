#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grid_oracle.hpp"

#include <curvetop/parse.hpp>
#include <curvetop/space_topology.hpp>

#include <random>

using namespace curvetop;

namespace {

MultiPoly random_surface(std::mt19937& rng, int max_total_deg) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, max_total_deg);
    MultiPoly p;
    int terms = 2 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        int ex = deg(rng), ey = deg(rng), ez = deg(rng);
        if (ex + ey + ez > max_total_deg) continue;
        p += MultiPoly::term(Rational(coef(rng)), ex, ey, ez);
    }
    p += MultiPoly::term(Rational(1), 0, 0, std::max(p.degree(Var::Z) + 1, 1));
    return p;
}

/// Count distinct real z-values above (x0, y) by specializing the inputs
/// and taking the fiber gcd over Q(y).
int fiber_point_count(const MultiPoly& p1, const MultiPoly& p2, const Rational& x0,
                      const RealAlgebraicNumber& y) {
    auto ctx = make_ctx(y);
    UPoly<AlgExt> u1 = upoly_over_ext(p1.specialize(Var::X, x0), Var::Y, ctx, Var::Z);
    UPoly<AlgExt> u2 = upoly_over_ext(p2.specialize(Var::X, x0), Var::Y, ctx, Var::Z);
    UPoly<AlgExt> g = UPoly<AlgExt>::gcd(u1, u2).squarefree_part();
    if (g.degree() < 1) return 0;
    return static_cast<int>(RealRoot<AlgExt>::isolate_squarefree(g).size());
}

ComponentStats stats_of(const PLSGraph& g) { return component_stats(g); }

} // namespace

TEST_CASE("projection input validation") {
    CHECK_THROWS_AS(projected_curve(parse_poly("z^2"), parse_poly("z^2*x")), CommonComponent);
    CHECK_THROWS_AS(projected_curve(parse_poly("x + y"), parse_poly("z - y")),
                    LeadingCoefficientVanishes);
    CHECK_THROWS_AS(projected_curve(parse_poly("x*z + 1"), parse_poly("z - y")),
                    LeadingCoefficientVanishes);
}

TEST_CASE("delta decomposition of the lifted parabola") {
    DeltaDecomposition d = delta_decomposition(parse_poly("z^2 - x"), parse_poly("z - y"));
    CHECK(d.h.normalized() == parse_poly("y^2 - x"));
    REQUIRE(d.m >= 1);
    MultiPoly prod(Rational(1));
    for (const MultiPoly& dk : d.delta) prod *= dk;
    CHECK(prod.normalized() == d.h.normalized());
    CHECK(d.delta[0].normalized() == parse_poly("y^2 - x"));
}

TEST_CASE("h equals the product of the deltas on random pairs") {
    std::mt19937 rng(1234);
    int done = 0;
    while (done < 20) {
        MultiPoly p1 = random_surface(rng, 3), p2 = random_surface(rng, 3);
        if (p1.degree(Var::Z) < 1 || p2.degree(Var::Z) < 1) continue;
        DeltaDecomposition d;
        try {
            d = delta_decomposition(p1, p2);
        } catch (const CurveError&) {
            continue; // shared component or degenerate input: not this test's subject
        }
        MultiPoly prod(Rational(1));
        for (const MultiPoly& dk : d.delta) prod *= dk;
        CHECK(prod.normalized() == d.h.normalized());
        ++done;
    }
}

TEST_CASE("pseudo-genericity certificate") {
    DeltaDecomposition ok = delta_decomposition(parse_poly("z^2 - x"), parse_poly("z - y"));
    CHECK(certify_pseudo_generic(ok).ok);

    DeltaDecomposition bad = delta_decomposition(parse_poly("z^2 - x"), parse_poly("z^2 - y"));
    PseudoGenericReport rep = certify_pseudo_generic(bad);
    CHECK_FALSE(rep.ok);

    // Fiber-count oracle: the accepted pair has exactly one point above
    // every shadow point; the rejected pair has a shadow point with two.
    auto count_above = [&](const MultiPoly& p1, const MultiPoly& p2, const MultiPoly& h,
                           const Rational& x0) {
        UPoly<Rational> hy;
        for (const MultiPoly& c : h.specialize(Var::X, x0).dense_in(Var::Y))
            hy.c.push_back(c.constant_value());
        hy.trim();
        std::vector<int> counts;
        for (const auto& y : RealRoot<Rational>::isolate(hy))
            counts.push_back(fiber_point_count(p1, p2, x0, y));
        return counts;
    };
    for (const Rational& x0 : std::vector<Rational>{Rational(1), Rational(4), Rational(9) / 4}) {
        for (int c : count_above(parse_poly("z^2 - x"), parse_poly("z - y"), ok.h, x0))
            CHECK(c == 1);
    }
    bool saw_multiple = false;
    for (const Rational& x0 : std::vector<Rational>{Rational(1), Rational(4)}) {
        for (int c : count_above(parse_poly("z^2 - x"), parse_poly("z^2 - y"), bad.h, x0))
            if (c != 1) saw_multiple = true;
    }
    CHECK(saw_multiple);
}

TEST_CASE("singularity classification: cusp is a real space singularity") {
    // p1 carries no z, so the pipeline must shear before it can project;
    // the cusp stays a single-preimage (real) singularity afterwards.
    MultiPoly p1 = parse_poly("y^2 - x^3"), p2 = parse_poly("z - x^2");
    SpaceTopologyResult r = space_topology(p1, p2);
    bool found_real = false;
    for (const auto& sc : r.classes.classes) {
        if (sc.gamma_jk.degree(Var::X) >= 1) found_real = true;
        CHECK(sc.chi_jk.degree(Var::X) < 1);
    }
    CHECK(found_real);
    // Independent fiber oracle on the original curve: exactly one point
    // above the cusp (0, 0).
    CHECK(fiber_point_count(p1, p2, Rational(0), ran_from_rational(Rational(0))) == 1);
}

TEST_CASE("singularity classification: nodal shadow is apparent with lifts +-1") {
    MultiPoly p1 = parse_poly("x - z^2 + 1"), p2 = parse_poly("y - z^3 + z");
    DeltaDecomposition d = delta_decomposition(p1, p2);
    GammaDecomposition g = gamma_decomposition(d.h);
    SingularityClassification cls = classify_singularities(d, g);
    bool found_chi = false;
    for (const auto& sc : cls.classes) {
        if (sc.chi_jk.degree(Var::X) >= 1) {
            found_chi = true;
            CHECK(sc.plane_level == 1);
            CHECK(sc.space_level == 2);
            CHECK(sc.chi_jk.normalized() == parse_poly("x"));
        }
    }
    REQUIRE(found_chi);

    // Lift of the apparent node: z = +-1, and the smaller z belongs to the
    // branch with the smaller tangent slope (parametrization (t^2-1, t^3-t, t):
    // slope +1 at t = 1 with z = 1, slope -1 at t = -1 with z = -1).
    FiberSequence fs = compute_plane_fibers(g);
    REQUIRE(fs.critical.size() >= 1);
    const CriticalFiber* node = nullptr;
    for (const auto& cf : fs.critical)
        if (RealRoot<Rational>::compare(cf.alpha, ran_from_rational(Rational(0))) == 0)
            node = &cf;
    REQUIRE(node != nullptr);
    NodeLift lift = lift_apparent(d, g, *node);
    CHECK(RealRoot<Rational>::compare(lift.z_low, ran_from_rational(Rational(-1))) == 0);
    CHECK(RealRoot<Rational>::compare(lift.z_high, ran_from_rational(Rational(1))) == 0);
    CHECK(lift.low_is_low_slope);
}

TEST_CASE("regular point lifting satisfies both surfaces") {
    MultiPoly p1 = parse_poly("x - z^2 + 1"), p2 = parse_poly("y - z^3 + z");
    DeltaDecomposition d = delta_decomposition(p1, p2);
    // Above x0 = 3 the shadow has roots with z = +-2 (t = +-2 on the curve).
    UPoly<Rational> hy;
    for (const MultiPoly& c : d.h.specialize(Var::X, Rational(3)).dense_in(Var::Y))
        hy.c.push_back(c.constant_value());
    hy.trim();
    auto ys = RealRoot<Rational>::isolate(hy);
    REQUIRE(ys.size() == 2);
    RealAlgebraicNumber z0 = lift_regular_point(d, Rational(3), ys[0]);
    RealAlgebraicNumber z1 = lift_regular_point(d, Rational(3), ys[1]);
    CHECK(RealRoot<Rational>::compare(z0, ran_from_rational(Rational(-2))) == 0);
    CHECK(RealRoot<Rational>::compare(z1, ran_from_rational(Rational(2))) == 0);
}

TEST_CASE("space topology: planar circle") {
    SpaceTopologyResult r = space_topology(parse_poly("z"), parse_poly("x^2 + y^2 - 1"));
    ComponentStats st = stats_of(r.graph);
    CHECK(r.graph.dimension == 3);
    CHECK(st.components == 1);
    CHECK(st.cycle_rank == 1);
    auto oracle = oracle::grid_stats_3d(parse_poly("z"), parse_poly("x^2 + y^2 - 1"),
                                        -4, 4, 512, false);
    CHECK(oracle.components == st.components);
    CHECK(oracle.cycle_rank == st.cycle_rank);
}

TEST_CASE("space topology: nodal shadow") {
    SpaceTopologyResult r =
        space_topology(parse_poly("x - z^2 + 1"), parse_poly("y - z^3 + z"));
    ComponentStats st = stats_of(r.graph);
    CHECK(st.components == 1);
    CHECK(st.cycle_rank == 0);
    int apparent = 0;
    for (const auto& v : r.graph.vertices)
        if (v.kind == VertexKind::ApparentLift) ++apparent;
    CHECK(apparent == 2);
    auto oracle = oracle::grid_stats_3d(parse_poly("x - z^2 + 1"),
                                        parse_poly("y - z^3 + z"), -4, 4, 512, false);
    CHECK(oracle.components == st.components);
    CHECK(oracle.cycle_rank == st.cycle_rank);
}

TEST_CASE("space topology: cusp curve carries a real singular vertex") {
    SpaceTopologyResult r = space_topology(parse_poly("y^2 - x^3"), parse_poly("z - x^2"));
    ComponentStats st = stats_of(r.graph);
    CHECK(st.components == 1);
    CHECK(st.cycle_rank == 0);
    bool has_sing = false;
    for (const auto& v : r.graph.vertices)
        if (v.kind == VertexKind::RealSingular) has_sing = true;
    CHECK(has_sing);
}

TEST_CASE("space topology: tangent sphere and saddle") {
    MultiPoly p1 = parse_poly("x^2 + y^2 + z^2 - 1");
    MultiPoly p2 = parse_poly("x^2 - y^2 - z + 1");
    SpaceTopologyResult r = space_topology(p1, p2);
    ComponentStats st = stats_of(r.graph);
    CHECK(st.components == 1);
    CHECK(st.cycle_rank == 2);
    CHECK_FALSE(r.shear.is_identity()); // symmetric input: identity is never generic
    CHECK(r.graph.certificates.plane_generic == true);
    CHECK(r.graph.certificates.pseudo_generic == true);
    CHECK(r.graph.certificates.space_generic == true);
    int sing = 0;
    for (const auto& v : r.graph.vertices) {
        REQUIRE(v.coords.size() == 3);
        if (v.kind == VertexKind::RealSingular) ++sing;
    }
    CHECK(sing == 1); // the tangency point (0, 0, 1)
    auto oracle = oracle::grid_stats_3d(p1, p2, -4, 4, 512, false);
    CHECK(oracle.components == st.components);
    CHECK(oracle.cycle_rank == st.cycle_rank);
}

TEST_CASE("parallel lifting agrees with the serial reference") {
    SpaceOptions par;
    par.parallel = true;
    MultiPoly p1 = parse_poly("x^2 + y^2 + z^2 - 1");
    MultiPoly p2 = parse_poly("x^2 - y^2 - z + 1");
    SpaceTopologyResult a = space_topology(p1, p2);
    SpaceTopologyResult b = space_topology(p1, p2, par);
    CHECK(a.graph.vertices.size() == b.graph.vertices.size());
    CHECK(a.graph.edges == b.graph.edges);
    for (std::size_t i = 0; i < a.graph.vertices.size(); ++i) {
        CHECK(a.graph.vertices[i].kind == b.graph.vertices[i].kind);
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(RealRoot<Rational>::compare(a.graph.vertices[i].coords[c],
                                              b.graph.vertices[i].coords[c]) == 0);
    }
}

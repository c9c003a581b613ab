#ifndef CURVETOP_SPACE_TOPOLOGY_HPP
#define CURVETOP_SPACE_TOPOLOGY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvetop/errors.hpp"
#include "curvetop/plane_topology.hpp"

namespace curvetop {

struct SpaceCurveInput {
    MultiPoly p1, p2;
};

// Gcd cascade of the squarefree projection h against the principal
// subresultant coefficients of (p1, p2) w.r.t. z. delta[k-1] = Delta_k
// collects the components of h over which the z-fiber gcd has degree k.
struct DeltaDecomposition {
    MultiPoly p1, p2;               // normalized inputs
    SubresChain chain;              // chain of (p1, p2) w.r.t. z
    MultiPoly h;                    // squarefree projected curve in (x, y)
    std::vector<MultiPoly> theta;   // Theta_0 .. Theta_m
    std::vector<MultiPoly> delta;   // Delta_1 .. Delta_m
    int m = 0;                      // top chain index
};

struct PseudoGenericReport {
    bool ok = false;
    std::optional<PlaneWitness> witness; // (k, i) and the offending combination
};

// Shadow singularities of h sorted by plane level j (multiplicity structure
// of the projected curve) and space level k (z-fiber gcd degree above them).
// gamma_jk collects the abscissas whose multiple point has a single point
// above it (true space singularity or plain turning point); chi_jk collects
// the abscissas with >= 2 distinct points above (apparent singularities).
struct ShadowClass {
    int plane_level = 0;           // j
    int space_level = 0;           // k
    MultiPoly gamma_jk;            // single-preimage abscissas
    MultiPoly chi_jk;              // apparent-singularity abscissas
    std::vector<MultiPoly> w;      // gcd cascade w_{k,0} .. w_{k,k} (audit)
};

struct SingularityClassification {
    std::vector<std::vector<MultiPoly>> u; // per plane level j: u_0 .. u_m
    std::vector<ShadowClass> classes;      // entries with nonconstant w_{k,0}
};

struct SpaceGenericReport {
    bool ok = false;
    std::string reason;
};

struct SpaceOptions {
    ShearRetryPolicy shear;
    bool parallel = false;
};

struct SpaceTopologyResult {
    PLSGraph graph;
    MultiPoly p1_used, p2_used;      // sheared inputs actually analysed
    ShearMap shear;                  // identity when none was needed
    DeltaDecomposition delta;
    GammaDecomposition plane;        // decomposition of h
    SingularityClassification classes;
    bool parallel_used = false;
};

// Squarefree part of Res_z(p1, p2). Throws CommonComponent when the surfaces
// share a factor and LeadingCoefficientVanishes when either input has z-degree
// < 1 or a non-constant leading z-coefficient.
MultiPoly projected_curve(const MultiPoly& p1, const MultiPoly& p2);

DeltaDecomposition delta_decomposition(const MultiPoly& p1, const MultiPoly& p2);

// Divisibility certificate: over each Delta_k the fiber gcd is a k-th power
// of one linear factor, so every shadow point has exactly one point above it.
PseudoGenericReport certify_pseudo_generic(const DeltaDecomposition& d);

// Requires a certified decomposition of h (throws NotCertified otherwise).
SingularityClassification classify_singularities(const DeltaDecomposition& d,
                                                 const GammaDecomposition& g);

// Generic iff every nonconstant class has space level 1 (true space
// singularities) or is the (1,2) class of simple apparent nodes, each of
// which passes the transversality test on h.
SpaceGenericReport certify_space_generic(const DeltaDecomposition& d,
                                         const GammaDecomposition& g,
                                         const SingularityClassification& c);

// z-value above the pseudo-generic shadow point (x0, y). Throws
// ParamDenominatorVanishes when the rational parametrization degenerates.
RealAlgebraicNumber lift_regular_point(const DeltaDecomposition& d, const Rational& x0,
                                       const RealAlgebraicNumber& y);

// Lift of an apparent node: the two z-values in ascending order and the
// branch assignment (low_is_low_slope: the smaller z belongs to the branch
// with the smaller tangent slope).
struct NodeLift {
    RealAlgebraicNumber z_low, z_high;
    bool low_is_low_slope = false;
};

NodeLift lift_apparent(const DeltaDecomposition& d, const GammaDecomposition& g,
                       const CriticalFiber& cf);

SpaceTopologyResult space_topology(const MultiPoly& p1, const MultiPoly& p2,
                                   const SpaceOptions& opts = {});

} // namespace curvetop

#endif

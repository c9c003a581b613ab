#ifndef CURVETOP_PLANE_TOPOLOGY_HPP
#define CURVETOP_PLANE_TOPOLOGY_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvetop/algext.hpp"
#include "curvetop/algnum.hpp"
#include "curvetop/errors.hpp"
#include "curvetop/multipoly.hpp"
#include "curvetop/pls_graph.hpp"
#include "curvetop/subresultant.hpp"

namespace curvetop {

// Cascade of gcds of the principal subresultant coefficients of (f, df/dY).
// phi[0] is the squarefree part of the resultant; gamma[k-1] = Gamma_k
// collects the X-critical values whose fiber carries a multiplicity-(k+1)
// root.
struct GammaDecomposition {
    MultiPoly f;                     // squarefree input actually analysed
    int degree_y = 0;                // degree of f in the fiber variable
    SubresChain chain;               // chain of (f, f_Y) w.r.t. Y
    std::vector<MultiPoly> phi;      // Phi_0 .. Phi_{d-1}
    std::vector<MultiPoly> gamma;    // Gamma_1 .. Gamma_{d-1}
};

enum class GenericityStatus { Generic, NonGeneric, DegenerateLcoef };

struct PlaneWitness {
    int k = -1;
    int i = -1;
    MultiPoly residue;               // nonzero remainder of R_{k,i} mod Gamma_k
};

struct GenericityReport {
    GenericityStatus status = GenericityStatus::NonGeneric;
    std::optional<PlaneWitness> witness;
    std::optional<ShearMap> shear_applied;
};

// One critical fiber x = alpha, with the fiber polynomial and its real roots
// represented over Q(alpha).
struct CriticalFiber {
    std::shared_ptr<AlgExtCtx> ctx;          // defines alpha
    RealAlgebraicNumber alpha;               // level-0 copy of alpha
    bool alpha_is_rational = false;
    int k = 0;                               // Gamma_k level: fiber gcd degree
    UPoly<AlgExt> fiber_poly;                // f(alpha, Y)
    std::vector<RealRoot<AlgExt>> roots;     // ascending
    int critical_index = -1;                 // index of beta among roots
    AlgExt beta;                             // the unique multiple root
    bool singular = false;                   // f_X also vanishes at (alpha, beta)
};

struct RegularFiber {
    Rational x;
    std::vector<RealAlgebraicNumber> roots;  // ascending
};

// Interleaved sweep sequence R_0 C_1 R_1 ... C_n R_n.
struct FiberSequence {
    std::vector<CriticalFiber> critical;     // sorted by alpha
    std::vector<RegularFiber> regular;       // critical.size() + 1 entries
};

struct ShearRetryPolicy {
    int budget = 32;                         // number of nonzero shears to try
    bool allow_shear = true;
};

struct PlaneTopologyResult {
    PLSGraph graph;
    MultiPoly f_used;                        // squarefree + sheared input
    ShearMap shear;                          // identity when no shear was needed
    GammaDecomposition decomp;
    FiberSequence fibers;
    bool squarefree_replaced = false;
    GenericityReport report;
};

// Throws ZeroPolynomial, NotSquarefree, LeadingCoefficientVanishes.
GammaDecomposition gamma_decomposition(const MultiPoly& f);

GenericityReport certify_plane_generic(const GammaDecomposition& g);
GenericityReport certify_plane_generic(const MultiPoly& f);

// Throws NotCertifiedGeneric when the certificate fails.
FiberSequence compute_plane_fibers(const GammaDecomposition& g);

// Branch matching between a regular fiber with s points and an adjacent
// critical fiber with p points whose multiple point has index mi. Returns
// (regular index, critical index) pairs; all middle branches go to mi.
std::vector<std::pair<int, int>> match_branches(int s, int p, int mi);

PlaneTopologyResult plane_topology(const MultiPoly& f,
                                   const ShearRetryPolicy& policy = {});

} // namespace curvetop

#endif

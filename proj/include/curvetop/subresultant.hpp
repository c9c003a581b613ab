#ifndef CURVETOP_SUBRESULTANT_HPP
#define CURVETOP_SUBRESULTANT_HPP

#include "curvetop/multipoly.hpp"

#include <vector>

namespace curvetop {

/// Subresultant chain of (P, Q) with respect to one variable.
///
/// Entries S[k] for k = 0..m (m = min degree) follow the determinantal
/// normalization of subres_minor below: S[0] is the resultant (det of the
/// ascending-row Sylvester matrix), and when q < p, S[q] = lc(Q)^(p-q-1) * Q.
/// For deg P == deg Q the top minor is degenerate and we adopt the convention
/// S[q] = Q (so the principal coefficient sr_q = lc(Q) is a nonzero scalar
/// once the inputs have scalar leading coefficients).
///
/// If deg_v P < deg_v Q the inputs are swapped internally and each entry is
/// multiplied by (-1)^((p-k)(q-k)).
struct SubresChain {
    Var var = Var::Y;
    int p = -1;          // deg of the higher-degree input
    int q = -1;          // deg of the lower-degree input (chain top index)
    bool swapped = false;
    std::vector<MultiPoly> S; // size q+1; S[k] == Sr_k

    /// sr_{k,j}: coefficient of var^j in Sr_k (a polynomial in the other vars).
    MultiPoly sr(int k, int j) const { return S[static_cast<std::size_t>(k)].coeff_of(var, j); }
    /// Principal subresultant coefficient sr_k = sr_{k,k}.
    MultiPoly principal(int k) const { return sr(k, k); }
};

/// Compute the chain by a pseudo-remainder sequence with exact divisions.
/// Requires P, Q nonzero with max(deg_v P, deg_v Q) >= 1.
SubresChain subres_chain(const MultiPoly& P, const MultiPoly& Q, Var v);

/// Resultant w.r.t. v (Sr_0 of the chain; handles degree-0 edge cases).
MultiPoly resultant(const MultiPoly& P, const MultiPoly& Q, Var v);

/// Gcd of P and Q as polynomials in v over the fraction field of the other
/// variables, extracted from the chain: the first Sr_k with sr_k != 0 is an
/// associate of the gcd. The result is normalized.
MultiPoly gcd_via_chain(const MultiPoly& P, const MultiPoly& Q, Var v);

/// Independent determinantal evaluation of sr-chain entries (test oracle):
/// Sr_k = sum_j det(M_k[j]) v^j where M_k[j] takes the coefficient rows of
/// v^i*P (i = 0..q-k-1) and v^i*Q (i = 0..p-k-1) in the monomial basis
/// 1..v^(p+q-k-1), and keeps columns j, k+1, ..., p+q-k-1 in that order.
/// The determinant is evaluated by fraction-free (Bareiss) elimination.
/// At k = q (degenerate matrix) the Remark-1 closed form is returned.
/// If deg_v P < deg_v Q, arguments are swapped and the result is scaled by
/// (-1)^((p-k)(q-k)) (the row-block permutation parity).
MultiPoly subres_minor(const MultiPoly& P, const MultiPoly& Q, Var v, int k, int j);

} // namespace curvetop

#endif

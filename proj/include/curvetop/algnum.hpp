#ifndef CURVETOP_ALGNUM_HPP
#define CURVETOP_ALGNUM_HPP

#include "curvetop/algext.hpp"
#include "curvetop/realroot.hpp"
#include "curvetop/subresultant.hpp"

#include <functional>

namespace curvetop {

/// Real algebraic number over Q: squarefree rational defining polynomial plus
/// an isolating interval.
using RealAlgebraicNumber = RealRoot<Rational>;

RealAlgebraicNumber ran_from_rational(const Rational& r);

/// Pick the unique candidate equal to the value described by `enclose`,
/// a callback that returns ever-tighter rational enclosures of that value.
/// Pre: the value is one of the candidates; candidate intervals are disjoint.
RealAlgebraicNumber identify_root(std::vector<RealAlgebraicNumber> candidates,
                                  const std::function<QInterval()>& enclose);

/// Express a level-1 root (a real root of F(alpha, Y) with coefficients in
/// Q(alpha)) as a real algebraic number over Q, via the resultant annihilator
/// Res_X(modulus(X), F~(X, Y)).
RealAlgebraicNumber level0_from_level1(const RealRoot<AlgExt>& y);

/// Express an element of Q(alpha) as a real algebraic number over Q.
RealAlgebraicNumber ran_from_algext(const AlgExt& w);

/// Value N(b)/D(b); pre: D(b) != 0.
RealAlgebraicNumber ratfun_value(const UPoly<Rational>& N, const UPoly<Rational>& D,
                                 const RealAlgebraicNumber& b);

/// Value a + r*b.
RealAlgebraicNumber linear_comb(const RealAlgebraicNumber& a, const Rational& r,
                                const RealAlgebraicNumber& b);

/// Double approximation with absolute error <= 2^-bits (plus one ulp of the
/// final binary conversion).
double approx_double(const RealAlgebraicNumber& x, int bits);

} // namespace curvetop

#endif

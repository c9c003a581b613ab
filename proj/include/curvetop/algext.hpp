#ifndef CURVETOP_ALGEXT_HPP
#define CURVETOP_ALGEXT_HPP

#include "curvetop/realroot.hpp"
#include "curvetop/upoly.hpp"

#include <memory>

namespace curvetop {

/// Shared description of Q(alpha): a squarefree modulus q with q(alpha) = 0
/// and an isolating interval for the concrete real root alpha. When a
/// zero-divisor is met, the modulus is replaced in place by the factor that
/// still vanishes at alpha (dynamic-evaluation splitting restricted to the
/// branch that contains the tracked root).
struct AlgExtCtx {
    UPoly<Rational> modulus;     // squarefree, degree >= 1, monic
    RealRoot<Rational> alpha;    // the tracked real root; alpha.def may be coarser than modulus

    AlgExtCtx(UPoly<Rational> m, RealRoot<Rational> a);
};

/// Element of Q(alpha), or a plain rational when ctx is null.
class AlgExt {
public:
    AlgExt() = default;
    AlgExt(const Rational& r) { rep_ = UPoly<Rational>::constant(r); }
    AlgExt(std::shared_ptr<AlgExtCtx> ctx, UPoly<Rational> rep);

    static AlgExt generator(const std::shared_ptr<AlgExtCtx>& ctx);

    const std::shared_ptr<AlgExtCtx>& ctx() const { return ctx_; }
    const UPoly<Rational>& rep() const { return rep_; }

    AlgExt operator-() const;
    AlgExt operator+(const AlgExt& o) const;
    AlgExt operator-(const AlgExt& o) const;
    AlgExt operator*(const AlgExt& o) const;
    AlgExt operator*(const Rational& r) const;

    /// Exact sign; may refine/split the shared context.
    int sign() const;
    bool is_zero() const { return sign() == 0; }
    AlgExt inverse() const;

    QInterval interval() const;
    void refine() const; // tighten the enclosure by refining alpha

private:
    std::shared_ptr<AlgExtCtx> ctx_; // null: rational constant
    mutable UPoly<Rational> rep_;    // reduced mod the modulus current at last touch

    void reduce() const;
    static void unify(const AlgExt& a, const AlgExt& b, std::shared_ptr<AlgExtCtx>& ctx);
};

inline int elem_sign(const AlgExt& x) { return x.sign(); }
inline AlgExt elem_inv(const AlgExt& x) { return x.inverse(); }
inline QInterval elem_interval(const AlgExt& x) { return x.interval(); }
inline void elem_refine(const AlgExt& x) { x.refine(); }
inline AlgExt elem_from_rational(const AlgExt& like, const Rational& v) {
    if (!like.ctx()) return AlgExt(v);
    return AlgExt(like.ctx(), UPoly<Rational>::constant(v));
}

/// Build the context for a level-0 root (modulus = the root's squarefree defining polynomial).
std::shared_ptr<AlgExtCtx> make_ctx(const RealRoot<Rational>& alpha);

/// Evaluate a MultiPoly at (X = alpha-generator or given elements).
/// Substitutes xv, yv, zv for the three variables; any variable the
/// polynomial does not use may be passed as AlgExt().
AlgExt eval_multipoly(const MultiPoly& p, const AlgExt& xv, const AlgExt& yv, const AlgExt& zv);

/// Convert a bivariate polynomial p(outer fixed = alpha, inner = v) into a
/// UPoly<AlgExt> in v, substituting alpha for `alpha_var`.
UPoly<AlgExt> upoly_over_ext(const MultiPoly& p, Var alpha_var,
                             const std::shared_ptr<AlgExtCtx>& ctx, Var v);

} // namespace curvetop

#endif

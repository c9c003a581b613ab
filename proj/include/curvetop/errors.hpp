#ifndef CURVETOP_ERRORS_HPP
#define CURVETOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace curvetop {

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : CurveError {
    ZeroPolynomial() : CurveError("zero polynomial") {}
};
struct NotSquarefree : CurveError {
    NotSquarefree() : CurveError("polynomial is not squarefree") {}
};
struct LeadingCoefficientVanishes : CurveError {
    LeadingCoefficientVanishes() : CurveError("leading coefficient w.r.t. the fiber variable is not a nonzero constant") {}
};
struct NotCertifiedGeneric : CurveError {
    explicit NotCertifiedGeneric(const std::string& what) : CurveError("not certified generic: " + what) {}
};
struct ShearBudgetExhausted : CurveError {
    ShearBudgetExhausted() : CurveError("shear retry budget exhausted without certification") {}
};
struct CommonComponent : CurveError {
    CommonComponent() : CurveError("input surfaces share a component") {}
};
struct ParamDenominatorVanishes : CurveError {
    ParamDenominatorVanishes() : CurveError("rational parametrization denominator vanishes") {}
};
struct NotANode : CurveError {
    NotANode() : CurveError("apparent singularity is not a node") {}
};
struct LimitUndetermined : CurveError {
    LimitUndetermined() : CurveError("branch limit could not be determined") {}
};
struct InternalDivisionNotExact : CurveError {
    InternalDivisionNotExact() : CurveError("internal exact-division invariant violated") {}
};
struct NotCertified : CurveError {
    NotCertified() : CurveError("preconditions were not certified") {}
};

} // namespace curvetop

#endif

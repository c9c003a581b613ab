#ifndef CURVETOP_MULTIPOLY_HPP
#define CURVETOP_MULTIPOLY_HPP

#include "curvetop/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvetop {

enum class Var : int { X = 0, Y = 1, Z = 2 };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::X: return "x";
        case Var::Y: return "y";
        default: return "z";
    }
}

/// Exponent vector (x, y, z).
using ExpVec = std::array<int, 3>;

/// Lexicographic compare with z most significant, then y, then x.
struct ExpLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        if (a[2] != b[2]) return a[2] < b[2];
        if (a[1] != b[1]) return a[1] < b[1];
        return a[0] < b[0];
    }
};

struct DivisionNotExact : std::runtime_error {
    DivisionNotExact() : std::runtime_error("polynomial division is not exact") {}
};

/// Sparse exact polynomial in Q[x, y, z].
class MultiPoly {
public:
    using TermMap = std::map<ExpVec, Rational, ExpLess>;

    MultiPoly() = default;
    explicit MultiPoly(const Rational& c) {
        if (sign_of(c) != 0) terms_[{0, 0, 0}] = c;
    }
    MultiPoly(long c) : MultiPoly(Rational(c)) {}

    static MultiPoly variable(Var v, int power = 1);
    static MultiPoly term(const Rational& c, int ex, int ey, int ez);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ExpVec{0, 0, 0}); }
    Rational constant_value() const;
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    int degree(Var v) const;
    int total_degree() const;
    bool depends_on(Var v) const { return degree(v) > 0; }

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator+(const MultiPoly& o) const { MultiPoly r = *this; r += o; return r; }
    MultiPoly operator-(const MultiPoly& o) const { MultiPoly r = *this; r -= o; return r; }
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }
    MultiPoly operator*(const Rational& c) const;
    MultiPoly pow(unsigned e) const;

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly derivative(Var v) const;
    /// Leading coefficient w.r.t. v, as a polynomial in the remaining variables.
    MultiPoly lcoef(Var v) const { return coeff_of(v, degree(v)); }
    /// Coefficient of v^k, as a polynomial in the remaining variables.
    MultiPoly coeff_of(Var v, int k) const;

    Rational leading_rational() const; // coefficient of the largest term in canonical order

    MultiPoly specialize(Var v, const Rational& value) const;
    MultiPoly subst(Var v, const MultiPoly& value) const;
    Rational eval(const Rational& x, const Rational& y, const Rational& z) const;
    QInterval eval_interval(const QInterval& x, const QInterval& y, const QInterval& z) const;

    /// Dense coefficient list w.r.t. v, index = power of v, size = degree+1 (empty for 0).
    std::vector<MultiPoly> dense_in(Var v) const;
    static MultiPoly from_dense(const std::vector<MultiPoly>& coeffs, Var v);

    /// Canonical form: integer coefficients with content 1 and positive leading
    /// coefficient in the canonical (z,y,x-lex) term order.
    MultiPoly normalized() const;

    static MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b); // throws DivisionNotExact
    static bool try_exact_div(const MultiPoly& a, const MultiPoly& b, MultiPoly& quotient);
    /// True iff b divides a exactly (b != 0).
    static bool divides(const MultiPoly& b, const MultiPoly& a);

    /// Normalized gcd. gcd(0,0)=0, gcd(p,0)=normalized(p).
    static MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

    /// Squarefree part w.r.t. one variable: p / gcd(p, dp/dv), normalized.
    static MultiPoly squarefree_part(const MultiPoly& p, Var v);
    /// Total squarefree part: p / gcd(p, p_x, p_y, p_z), normalized.
    static MultiPoly squarefree_part_total(const MultiPoly& p);

    /// Pseudo-remainder of a by b w.r.t. v: lc(b)^(deg a - deg b + 1) * a mod b.
    static MultiPoly prem(const MultiPoly& a, const MultiPoly& b, Var v);

    /// Euclidean quotient for univariate-in-v polynomials with rational
    /// coefficients in the other variables treated exactly; requires the
    /// division to run to completion in Q(other vars) -- used for univariate
    /// inputs. Throws DivisionNotExact if a remainder step fails.
    static MultiPoly quo_univariate(const MultiPoly& a, const MultiPoly& b, Var v);

    std::string str() const;

private:
    void insert_term(const ExpVec& e, const Rational& c);
    TermMap terms_;
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

/// Coordinate shear. For the plane case (space=false): x := x + lambda*y.
/// For the space case: x := x + lambda*z, y := y + mu*z.
struct ShearMap {
    bool space = false;
    Rational lambda = 0;
    Rational mu = 0;
    // In-plane component X := X + nu*Y of a space shear. It commutes with the
    // Z-resultant, so it repairs the plane genericity of the projected curve
    // without changing the projection direction. Symmetric inputs need it:
    // when the curve is invariant under Y -> -Y, the abscissa X + lambda*Z of
    // a projection-critical point is symmetry-invariant for every (lambda, mu),
    // so those points come in same-fiber pairs until Y enters the abscissa.
    Rational nu = 0;

    bool is_identity() const {
        return sign_of(lambda) == 0 && sign_of(mu) == 0 && sign_of(nu) == 0;
    }
    MultiPoly apply(const MultiPoly& p) const;
    std::string str() const;
};

} // namespace curvetop

#endif

#include "curvetop/subresultant.hpp"

#include "curvetop/errors.hpp"

#include <stdexcept>

namespace curvetop {

namespace {

SubresChain chain_ordered(const MultiPoly& P, const MultiPoly& Q, Var v) {
    // Pre: p = deg P >= q = deg Q >= 0, p >= 1.
    SubresChain out;
    out.var = v;
    out.p = P.degree(v);
    out.q = Q.degree(v);
    const int p = out.p, q = out.q;
    out.S.assign(static_cast<std::size_t>(q) + 1, MultiPoly());

    if (q == 0) {
        out.S[0] = Q.pow(static_cast<unsigned>(p)); // Res(P, b) = b^p for v-free b
        return out;
    }

    MultiPoly lcQ = Q.lcoef(v);
    out.S[static_cast<std::size_t>(q)] = (p > q) ? lcQ.pow(static_cast<unsigned>(p - q - 1)) * Q : Q;

    // First descent step: Sr_{q-1} = (-1)^(p-q+1) * prem(P, Q).
    MultiPoly B = MultiPoly::prem(P, Q, v);
    if (((p - q - 1) % 2) != 0) B = -B;

    // A: regular representative at index d (its leading coefficient is the
    // divisor in the exact-division steps). For p == q the role is played by Q.
    MultiPoly A = (p > q) ? out.S[static_cast<std::size_t>(q)] : Q;
    int d = q;

    while (!B.is_zero()) {
        out.S[static_cast<std::size_t>(d - 1)] = B;
        int e = B.degree(v);
        MultiPoly Se = B;
        if (e < d - 1) {
            // Similar regular copy at index e; entries strictly between stay 0.
            unsigned t = static_cast<unsigned>(d - 1 - e);
            Se = MultiPoly::exact_div(B.lcoef(v).pow(t) * B, A.lcoef(v).pow(t));
            out.S[static_cast<std::size_t>(e)] = Se;
        }
        if (e == 0) break;
        MultiPoly R = MultiPoly::prem(A, B, v);
        MultiPoly next = R.is_zero()
                             ? MultiPoly()
                             : MultiPoly::exact_div(R, A.lcoef(v).pow(static_cast<unsigned>(d - 1 - e) + 2));
        if (((d - 1 - e) % 2) != 0) next = -next;
        A = std::move(Se);
        d = e;
        B = std::move(next);
    }

    // Post-normalize the classical PRS values to the determinantal convention
    // (ascending coefficient rows, columns [j, k+1..p+q-k-1]); calibrated
    // against the Bareiss minor oracle: det = (-1)^(pq + k(p+q+1)) * prs,
    // with an extra lc(Q)^(q-1-k) scale when deg P == deg Q.
    for (int k = 0; k < q; ++k) {
        MultiPoly& Sk = out.S[static_cast<std::size_t>(k)];
        if (Sk.is_zero()) continue;
        if (p == q) Sk *= lcQ.pow(static_cast<unsigned>(q - 1 - k));
        long e = static_cast<long>(p) * q + static_cast<long>(k) * (p + q + 1);
        if (e % 2 != 0) Sk = -Sk;
    }
    return out;
}

} // namespace

SubresChain subres_chain(const MultiPoly& P, const MultiPoly& Q, Var v) {
    if (P.is_zero() || Q.is_zero()) throw std::domain_error("subres_chain: zero input");
    int dp = P.degree(v), dq = Q.degree(v);
    if (dp < 1 && dq < 1) throw std::domain_error("subres_chain: both inputs free of the main variable");
    if (dp >= dq) return chain_ordered(P, Q, v);
    SubresChain c = chain_ordered(Q, P, v);
    c.swapped = true;
    // Swapping the inputs flips Sr_k by (-1)^((p-k)(q-k)).
    for (int k = 0; k <= c.q; ++k) {
        long fl = static_cast<long>(c.p - k) * static_cast<long>(c.q - k);
        if (fl % 2 != 0) c.S[static_cast<std::size_t>(k)] = -c.S[static_cast<std::size_t>(k)];
    }
    return c;
}

MultiPoly resultant(const MultiPoly& P, const MultiPoly& Q, Var v) {
    if (P.is_zero() || Q.is_zero()) return MultiPoly();
    int dp = P.degree(v), dq = Q.degree(v);
    if (dp <= 0 && dq <= 0) return MultiPoly(Rational(1));
    return subres_chain(P, Q, v).S[0];
}

MultiPoly gcd_via_chain(const MultiPoly& P, const MultiPoly& Q, Var v) {
    if (P.is_zero()) return Q.normalized();
    if (Q.is_zero()) return P.normalized();
    if (P.degree(v) <= 0 || Q.degree(v) <= 0)
        return MultiPoly(Rational(1)); // coprime as polynomials in v over the fraction field
    SubresChain c = subres_chain(P, Q, v);
    for (int k = 0; k <= c.q; ++k)
        if (!c.principal(k).is_zero()) return c.S[static_cast<std::size_t>(k)].normalized();
    // Unreachable: sr_q is a power of a leading coefficient, hence nonzero.
    throw InternalDivisionNotExact();
}

namespace {

/// Fraction-free determinant (Bareiss) with row pivoting over MultiPoly.
MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly(Rational(1));
    int sign = 1;
    MultiPoly prev(Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return MultiPoly();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = MultiPoly::exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

} // namespace

MultiPoly subres_minor(const MultiPoly& P, const MultiPoly& Q, Var v, int k, int j) {
    int p = P.degree(v), q = Q.degree(v);
    const MultiPoly* A = &P;
    const MultiPoly* B = &Q;
    long swap_sign = 1;
    if (p < q) {
        std::swap(p, q);
        std::swap(A, B);
        if ((static_cast<long>(p - k) * (q - k)) % 2 != 0) swap_sign = -swap_sign;
    }
    if (k < 0 || k > q || j < 0 || j > k) throw std::domain_error("subres_minor: bad indices");
    if (k == q) { // determinantal definition degenerates at the top index
        MultiPoly top = (p > q) ? B->lcoef(v).pow(static_cast<unsigned>(p - q - 1)) * (*B) : *B;
        MultiPoly r = top.coeff_of(v, j);
        return swap_sign < 0 ? -r : r;
    }

    std::vector<MultiPoly> ca = A->dense_in(v);
    std::vector<MultiPoly> cb = B->dense_in(v);
    auto coeff = [](const std::vector<MultiPoly>& c, int t) {
        return (t >= 0 && t < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(t)] : MultiPoly();
    };

    const int rows = p + q - 2 * k;
    std::vector<int> cols;
    cols.reserve(static_cast<std::size_t>(rows));
    cols.push_back(j);
    for (int c = k + 1; c <= p + q - k - 1; ++c) cols.push_back(c);

    std::vector<std::vector<MultiPoly>> m(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
        m[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(rows));
        for (int cidx = 0; cidx < rows; ++cidx) {
            int c = cols[static_cast<std::size_t>(cidx)];
            // Row r < q-k: coefficients of v^r * A; otherwise v^(r-(q-k)) * B.
            MultiPoly entry = (r < q - k) ? coeff(ca, c - r) : coeff(cb, c - (r - (q - k)));
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cidx)] = std::move(entry);
        }
    }
    MultiPoly det = bareiss_det(std::move(m));
    return swap_sign < 0 ? -det : det;
}

} // namespace curvetop

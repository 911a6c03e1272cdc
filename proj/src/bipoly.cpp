#include "qtrank/bipoly.hpp"

#include <stdexcept>

namespace qtrank {

int bipoly_degree(const BiPoly& p) {
    for (size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<int>(i);
    return -1;
}

namespace {

// Fraction-free (Bareiss) determinant. Every division is exact in Z[X].
IntPoly bareiss_det(std::vector<std::vector<IntPoly>>& m) {
    size_t n = m.size();
    if (n == 0) return IntPoly::constant(1);
    int sign = 1;
    IntPoly prev = IntPoly::constant(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return IntPoly();  // whole column zero
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                IntPoly num = sub(mul(m[k][k], m[i][j]), mul(m[i][k], m[k][j]));
                m[i][j] = divexact(num, prev);
            }
            m[i][k] = IntPoly();
        }
        prev = m[k][k];
    }
    IntPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace

IntPoly sylvester_resultant(const BiPoly& P, const BiPoly& Q, int dP, int dQ) {
    if (dP < 0 || dQ < 0)
        throw std::invalid_argument("sylvester_resultant: negative formal degree");
    if (dP + dQ < 1)
        throw std::invalid_argument("sylvester_resultant: dP + dQ must be at least 1");
    if (bipoly_degree(P) > dP || bipoly_degree(Q) > dQ)
        throw std::invalid_argument("sylvester_resultant: formal degree below true degree");

    auto coeff = [](const BiPoly& f, int i) -> IntPoly {
        return (i >= 0 && i < static_cast<int>(f.size())) ? f[static_cast<size_t>(i)]
                                                          : IntPoly();
    };
    size_t n = static_cast<size_t>(dP + dQ);
    std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
    // rows 0..dQ-1: coefficients of P from Y^dP down, shifted right
    for (int r = 0; r < dQ; ++r)
        for (int j = 0; j <= dP; ++j)
            m[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = coeff(P, dP - j);
    // rows dQ..dQ+dP-1: coefficients of Q from Y^dQ down, shifted right
    for (int r = 0; r < dP; ++r)
        for (int j = 0; j <= dQ; ++j)
            m[static_cast<size_t>(dQ + r)][static_cast<size_t>(r + j)] = coeff(Q, dQ - j);
    return bareiss_det(m);
}

IntPoly m_certificate(const IntPoly& P1, const IntPoly& P2, int d1) {
    if (P2.is_zero()) throw std::invalid_argument("m_certificate: P2 must be nonzero");
    if (d1 < P1.degree())
        throw std::invalid_argument("m_certificate: formal degree below deg P1");

    BiPoly p1;
    p1.reserve(static_cast<size_t>(d1) + 1);
    for (int i = 0; i <= d1; ++i)
        p1.push_back(IntPoly::constant(P1.coeff(static_cast<size_t>(i))));

    // Q(Y) = X^2 - P2(Y), at its true Y-degree
    int d2 = P2.degree() > 0 ? P2.degree() : 0;
    BiPoly q(static_cast<size_t>(d2) + 1);
    for (int i = 0; i <= d2; ++i)
        q[static_cast<size_t>(i)] = IntPoly::constant(-P2.coeff(static_cast<size_t>(i)));
    q[0] = add(q[0], IntPoly::x_power(2));

    return sylvester_resultant(p1, q, d1, d2);
}

}  // namespace qtrank

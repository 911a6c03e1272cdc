#pragma once

#include "qtrank/intpoly.hpp"

#include <vector>

namespace qtrank {

// Polynomial in Y whose coefficients live in Z[X]; index = power of Y.
// Dense on purpose: every Y-degree we meet is <= 4 and every X-degree <= 8.
using BiPoly = std::vector<IntPoly>;

int bipoly_degree(const BiPoly& p);  // -1 for zero

// Resultant with respect to Y of P and Q, taken at the *formal* degrees dP
// and dQ (dP >= deg_Y P, dQ >= deg_Y Q; vanishing leading coefficients are
// allowed and fill the matrix with zeros). Because the determinant is a
// polynomial identity in the coefficients, the result commutes with every
// coefficient-ring homomorphism, reduction mod p included.
// Requires dP, dQ >= 0 and dP + dQ >= 1.
IntPoly sylvester_resultant(const BiPoly& P, const BiPoly& Q, int dP, int dQ);

// Res_Y(P1(Y), X^2 - P2(Y)) with P1 taken at formal degree d1 and the second
// argument at its true degree. Rejects P2 = 0.
IntPoly m_certificate(const IntPoly& P1, const IntPoly& P2, int d1);

}  // namespace qtrank

#pragma once

#include "qtrank/bipoly.hpp"
#include "qtrank/intpoly.hpp"

namespace qtrank {

// One member of the quadratic-in-T family Y^2 = A(X) T^2 + B(X) T + C(X),
// with C monic of degree 3 and deg A, deg B <= 2.
struct FamilyCurve {
    IntPoly A, B, C;
};

// Y^2 = X^3 + a2(T) X^2 + a4(T) X + a6(T); coefficients are polynomials in T.
struct WeierstrassQT {
    IntPoly a2, a4, a6;
};

// Regroups A(X) T^2 + B(X) T + C(X) by powers of X. Rejects C not monic of
// degree exactly 3 and deg A or deg B above 2.
WeierstrassQT to_weierstrass(const FamilyCurve& curve);

// Discriminant in T of the cubic X^3 + a2 X^2 + a4 X + a6 (the conventional
// scalar factor 16 is dropped; only vanishing is ever used).
IntPoly disc_T(const WeierstrassQT& w);

// True iff the j-invariant is constant: c4^3 and the discriminant are
// proportional, with c4 = 16 (a2^2 - 3 a4). Rejects singular input
// (disc_T == 0). A = B = 0 forces a constant j, but not conversely: members
// with j = 0 (A=0, B=1, C=X^3) or constant-j twists (A=4X, B=3X^2, C=X^3)
// are isotrivial with A, B not both zero.
bool is_isotrivial(const WeierstrassQT& w);

}  // namespace qtrank

#include "qtrank/family.hpp"

#include <stdexcept>

namespace qtrank {

WeierstrassQT to_weierstrass(const FamilyCurve& curve) {
    if (curve.C.degree() != 3 || curve.C.leading() != 1)
        throw std::invalid_argument("to_weierstrass: C must be monic of degree 3");
    if (curve.A.degree() > 2 || curve.B.degree() > 2)
        throw std::invalid_argument("to_weierstrass: deg A and deg B must be <= 2");
    // the T-polynomial multiplying X^k collects the X^k coefficients of
    // (C, B, A) at T^0, T^1, T^2
    auto column = [&](size_t xpow) {
        return IntPoly(
            std::vector<Int>{curve.C.coeff(xpow), curve.B.coeff(xpow), curve.A.coeff(xpow)});
    };
    return WeierstrassQT{column(2), column(1), column(0)};
}

IntPoly disc_T(const WeierstrassQT& w) {
    const IntPoly &a2 = w.a2, &a4 = w.a4, &a6 = w.a6;
    IntPoly a2sq = mul(a2, a2);
    IntPoly t1 = scalar_mul(mul(mul(a2sq, a2), a6), Int(-4));
    IntPoly t2 = mul(a2sq, mul(a4, a4));
    IntPoly t3 = scalar_mul(mul(a2, mul(a4, a6)), Int(18));
    IntPoly t4 = scalar_mul(mul(a4, mul(a4, a4)), Int(-4));
    IntPoly t5 = scalar_mul(mul(a6, a6), Int(-27));
    return add(add(add(t1, t2), add(t3, t4)), t5);
}

bool is_isotrivial(const WeierstrassQT& w) {
    IntPoly delta = disc_T(w);
    if (delta.is_zero())
        throw std::invalid_argument("is_isotrivial: singular input (disc_T == 0)");
    IntPoly c4 = scalar_mul(sub(mul(w.a2, w.a2), scalar_mul(w.a4, Int(3))), Int(16));
    if (c4.is_zero()) return true;  // j identically 0
    IntPoly c4cub = mul(c4, mul(c4, c4));
    if (c4cub.degree() != delta.degree()) return false;
    return scalar_mul(c4cub, delta.leading()) == scalar_mul(delta, c4cub.leading());
}

}  // namespace qtrank

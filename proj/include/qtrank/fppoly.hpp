#pragma once

#include <qtrank/intpoly.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace qtrank {

// Dense univariate polynomial over F_p, p an odd prime. coeffs()[i] is the
// residue multiplying X^i, always in [0, p); the sequence is trimmed, so a
// nonzero polynomial has a nonzero leading residue. Construct through
// fp_poly / reduce_mod_p so the invariants hold.
struct FpPoly {
    uint32_t p = 0;
    std::vector<uint32_t> c;

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    uint32_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    uint32_t leading() const;  // requires nonzero
    bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }
};

// Validates that p is an odd prime, reduces every coefficient into [0, p)
// and trims trailing zeros. Input residues may be arbitrary uint32 values.
FpPoly fp_poly(uint32_t p, std::vector<uint32_t> coeffs);
FpPoly fp_zero(uint32_t p);
FpPoly fp_const(uint32_t p, uint32_t v);
FpPoly fp_x(uint32_t p);

// Coefficient-wise reduction of an integer polynomial.
FpPoly reduce_mod_p(const IntPoly& f, uint32_t p);

// Quadratic-residue character by Euler's criterion: 0 on multiples of p,
// +1 on nonzero squares, -1 otherwise.
int legendre(int64_t a, uint32_t p);

uint32_t fp_inv(uint32_t a, uint32_t p);  // a != 0 mod p

FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_scalar_mul(const FpPoly& a, uint32_t k);
FpPoly fp_monic(const FpPoly& a);  // a != 0
uint32_t fp_eval(const FpPoly& a, uint32_t x);
FpPoly fp_derivative(const FpPoly& a);

// Euclidean division, b != 0: returns (quotient, remainder).
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b);
FpPoly fp_divexact(const FpPoly& a, const FpPoly& b);  // requires b | a

// Monic gcd (zero if both inputs are zero).
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b);

// base^e mod m, deg m >= 1. The wide exponent type fits p^d for every
// Frobenius power used by the factoring routines.
FpPoly fp_powmod(const FpPoly& base, unsigned __int128 e, const FpPoly& m);

}  // namespace qtrank

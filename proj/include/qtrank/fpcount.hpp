#pragma once

#include <qtrank/fppoly.hpp>

#include <cstdint>

namespace qtrank {

// Number of monic irreducible polynomials of degree n over F_p:
// (1/n) * sum_{d | n} mu(d) p^{n/d}.
uint64_t count_irreducible_monic(uint32_t p, int n);

// Number of even monic irreducible polynomials of degree n (n even, >= 4):
// (1/n) * sum_{d | n, d odd} mu(d) (p^{n/2d} - 1).
uint64_t count_even_irreducible_monic(uint32_t p, int n);

// Exhaustive censuses of monic irreducible polynomials of degree n. `All`
// ranges over every monic polynomial, `Even` over polynomials in X^2,
// `EvenWithCoeff` additionally fixes the coefficient of X^{n-2}. Guarded by
// p^n <= 10^8 (budget_error beyond that).
struct CensusPredicate {
    enum class Kind { All, Even, EvenWithCoeff } kind = Kind::All;
    uint32_t coeff = 0;

    static CensusPredicate all() { return {Kind::All, 0}; }
    static CensusPredicate even() { return {Kind::Even, 0}; }
    static CensusPredicate even_with_coeff(uint32_t a) {
        return {Kind::EvenWithCoeff, a};
    }
};

uint64_t brute_census(uint32_t p, int n, CensusPredicate pred);

}  // namespace qtrank

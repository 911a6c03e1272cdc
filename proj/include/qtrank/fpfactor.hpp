#pragma once

#include <qtrank/fppoly.hpp>

#include <utility>
#include <vector>

namespace qtrank {

// Complete factorization over F_p: unit * prod factor^multiplicity equals the
// input exactly. Factors are monic irreducible, listed by ascending degree and
// then ascending lexicographic coefficient sequence (constant term first).
struct FactorMultiset {
    uint32_t p = 0;
    uint32_t unit = 1;
    std::vector<std::pair<FpPoly, int>> factors;
};

// Distinct-degree irreducibility test: f (deg >= 1) is irreducible iff
// gcd(X^{p^d} - X, f) = 1 for every d <= deg(f)/2. Frobenius powers are taken
// one step at a time, so the exponent p^d is never materialized.
bool is_irreducible(const FpPoly& f);

// Squarefree split (with p-th power descent), then distinct-degree split,
// then equal-degree split by a deterministically seeded randomized method.
FactorMultiset factor(const FpPoly& f);

// Number of irreducible factors counted with multiplicity; 0 for nonzero
// constants. Rejects zero.
int omega_p(const FpPoly& f);

}  // namespace qtrank

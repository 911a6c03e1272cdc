#pragma once

#include <qtrank/intpoly.hpp>

#include <vector>

namespace qtrank {

// Irreducible factors over Q of a squarefree primitive polynomial, each
// primitive with positive leading coefficient; their product equals the
// input normalized to a positive leading coefficient. Strategy: reduce mod a
// good prime, Hensel-lift the modular factors above the Landau-Mignotte
// coefficient bound, then recombine factor subsets by increasing cardinality
// with exact trial division. Polynomials in X^2 are handled by factoring the
// deflated polynomial first and refining each factor's preimage.
std::vector<IntPoly> irreducible_factors_squarefree(const IntPoly& s);

// Number of irreducible factors over Q counted with multiplicity; content is
// ignored, nonzero constants count 0. Rejects zero. Squarefree split first
// (Yun), then irreducible_factors_squarefree per part.
int omega_q(const IntPoly& P);

enum class IrrFast { Irreducible, Unknown };

// One-sided irreducibility probe: Irreducible if the reduction mod one of the
// first prime_budget odd primes keeps the degree and is irreducible, Unknown
// otherwise. Never claims Irreducible falsely; Unknown proves nothing.
IrrFast irreducible_over_q_fast(const IntPoly& P, int prime_budget);

}  // namespace qtrank

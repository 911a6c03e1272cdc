#pragma once

#include <qtrank/census.hpp>
#include <qtrank/family.hpp>
#include <qtrank/intpoly.hpp>
#include <qtrank/systems.hpp>

#include <iosfwd>
#include <optional>
#include <vector>

namespace qtrank {

// Primes admitted into the sieve, described by residue classes: a prime p is
// admitted when p >= min_p and p % modulus is one of the listed residues
// (modulus 1 admits everything past min_p). density_c is the constant C of
// the class union's prime count, #{p <= x} ~ C x / log x.
struct PrimeClassSet {
    long long modulus = 1;
    std::vector<long long> residues;
    double density_c = 1.0;
    long long min_p = 2;
};

bool prime_set_admits(const PrimeClassSet& set, long long p);  // p prime

// Admitted primes up to z in increasing order. budget_error past z = 10^8.
std::vector<long long> admitted_primes(const PrimeClassSet& set, long long z);

// Inputs of the three-term sieve bound. box lists the per-coordinate bounds
// H_1..H_n of the tuple region |a_i| <= H_i; delta >= 1 is the inverse local
// density of irreducible specializations (one prime's worth of tuples has
// about a 1/delta chance of an irreducible certificate); z cuts off the
// prime sums. c1 and c2 scale the two remainder shapes X/p and pX/H.
// allow_large_z skips the z <= sqrt(min H) requirement for formula-driven
// evaluations outside the proven range.
struct SieveParams {
    std::vector<double> box;
    double delta = 1.0;
    PrimeClassSet primes;
    long long z = 2;
    double c1 = 1.0;
    double c2 = 1.0;
    bool allow_large_z = false;
};

// Cutoff that balances the main and remainder terms:
// ceil((H ln H ln ln H)^(1/3)). Requires H >= 16 so the inner log is safely
// positive; std::invalid_argument below that.
long long choose_z(long long H);

// The three-term upper bound for the number of tuples whose certificate is
// reducible modulo every admitted prime up to z. With X = prod H_i,
// H = min H_i, S = sum_{p admitted, p <= z} 1/delta and the remainder
// surrogates
//   Rp(p)    = c1 X/p + c2 p X/H
//   Rpq(p,q) = c1 X/p + c1 X/q + c2 p q X/H
// the value is X/S + (2/S) sum_p Rp + (1/S^2) sum_{p,q} Rpq, the double sum
// running over all ordered pairs including p = q. Throws
// std::invalid_argument on an empty or nonpositive box, delta < 1, z < 2,
// z > sqrt(min H) without allow_large_z, or when no prime up to z is
// admitted (the density sum degenerates to zero).
double turan_bound(const SieveParams& params);

// The integer coefficient box each system kind sieves over.
FamilySpec family_for_system(SystemKind kind, long long H);

// Inverse local density of irreducible certificates: 4, 4, 8, 2, 4, 8. One
// tuple mod p has about a 1/delta chance of an irreducible certificate, and
// #A_p is p^dim/delta up to lower order.
long long system_inverse_density(SystemKind kind);

// Ready-made parameters for a kind's box: per-coordinate half-sides, the
// kind's inverse density (4, 4, 8, 2, 4, 8) and its admissible prime classes
// (p = 2 mod 3 starting at 5 with C = 1/2 where cubing must permute the
// field, all odd primes with C = 1 otherwise).
SieveParams sieve_params_for(SystemKind kind, long long H, long long z,
                             double c1 = 1.0, double c2 = 1.0);

// turan_bound over the kind's parameters, or nullopt when the inputs fall
// outside the bound's range (z < 2, z past sqrt of the smallest box side, or
// no admitted prime up to z). Never throws on those; the caller decides
// whether an absent bound is an error.
std::optional<double> theoretical_bound_for(SystemKind kind, long long H,
                                            long long z, double c1 = 1.0,
                                            double c2 = 1.0);

// The kind's coefficient map applied to one member over the integers:
//   sys1, m11: certificate of (B, C)
//   sys2, m12: B^2 - 4AC with the constant A
//   sys3, m21: certificate of (B^2 - 4AC, A) for linear A; the zero
//              polynomial on the degenerate slice where A is not linear
// Shape violations (nonzero A for sys1/m11, nonconstant A for sys2/m12,
// deg A > 1 for sys3/m21) throw std::invalid_argument.
IntPoly sieve_certificate(SystemKind kind, const FamilyCurve& member);

// True when the certificate keeps its integer degree modulo p and the
// reduction is irreducible in F_p[X]. This is the membership test behind
// empirical_b_pz: a tuple stays in the sieved set only if no admitted prime
// certifies it this way. The degree condition is what makes "reducible over
// Q implies reducible modulo p" valid, so the exact count can never exceed
// the modular one. False on certificates of degree < 1.
bool irreducible_keeping_degree_mod(const IntPoly& cert, long long p);

struct SieveReport {
    SystemKind kind = SystemKind::Sys1;
    long long H = 0;
    long long z = 0;
    long long box_size = 0;
    // Absent when z exceeds sqrt(min H) or no prime up to z is admitted.
    std::optional<double> theoretical_bound;
    // Tuples whose certificate is reducible mod every admitted prime <= z.
    std::optional<long long> empirical_b_pz;
    // Tuples whose certificate is not irreducible of degree >= 1 over Q.
    std::optional<long long> exact_b;
};

// Sweeps the kind's box at height H: counts the tuples whose certificate is
// reducible modulo every admitted prime up to z (z below the smallest
// admitted prime makes the condition vacuous, so the count is the whole
// box), optionally the tuples reducible or degenerate over Q, and fills the
// theoretical bound when the cutoff fits the box. Enforces
// exact_b <= empirical_b_pz. Ranges are split across workers with
// deterministic merges; the per-tuple prime tests run in increasing order
// with early exit. budget_error when the box exceeds max_box.
SieveReport empirical_sieve(SystemKind kind, long long H, long long z,
                            bool with_exact = true,
                            long long max_box = 1000000000LL);

// {kind, H, z, theoretical_bound, empirical_b_pz, exact_b, box_size} with
// null for absent fields.
void write_sieve_report_json(std::ostream& os, const SieveReport& report);

}  // namespace qtrank

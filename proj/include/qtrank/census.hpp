#pragma once

#include <qtrank/family.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qtrank {

// Coefficient boxes whose members get rank bounds. All bounds are sup-norm
// bounds on the coefficients; boxes include tuples whose leading
// coefficients vanish (members of lower degree are kept).
//   S0       A = 0; B any quadratic, C - X^3 any quadratic, coeffs in [-H, H]
//   Ssquare  A = k^2 with |k| <= H; B, C as in S0
//   Sell     deg A, deg B <= 1; C = X^3 + c1 X + c0; coeffs in [-H, H]
//   Smn      Y^2 = X^3 + alpha4(T) X + alpha6(T) with deg alpha4 <= m,
//            deg alpha6 <= n, |alpha4 coeffs| < H^3, |alpha6 coeffs| < H^2
//            (both strict), regrouped by powers of T into A, B, C
enum class FamilyKind { S0, Ssquare, Sell, Smn };

struct FamilySpec {
    FamilyKind kind = FamilyKind::Sell;
    long long H = 1;
    int m = 1, n = 1;  // degree caps, Smn only
};

// "s0", "ssquare", "sell", or "s11".."s22" (Smn with the caps spelled out).
std::string family_spec_name(const FamilySpec& spec);
std::optional<FamilySpec> family_spec_from_name(std::string_view name,
                                                long long H);

// Number of coefficient tuples in the box. Validates the spec (H >= 1, Smn
// caps in 0..2); std::invalid_argument on bad specs, budget_error if the
// count overflows 2^63.
long long family_box_size(const FamilySpec& spec);

// Half-side of every coordinate range in decode order: coefficient i runs
// over [-h_i, h_i]. Same validation as family_box_size.
std::vector<long long> family_box_half_sides(const FamilySpec& spec);

// Decodes a box index (odometer order, least-significant coefficient first)
// into the corresponding member.
FamilyCurve family_member(const FamilySpec& spec, long long index);

// Per-member census outcome. `bound` is meaningful only when the member is
// neither singular nor isotrivial. Agrees with rank_upper_bound on every
// input; when all coefficients are at most 64 in magnitude the certificate
// is built by closed-form machine arithmetic and irreducibility is first
// probed through the precomputed mod-p tables, which is what makes exact
// censuses of 10^7-tuple boxes feasible. (64 keeps the worst intermediate,
// the cube of c4, inside int64; the isotriviality cross-check above that
// runs in 128-bit.)
struct MemberOutcome {
    bool singular = false;
    bool isotrivial = false;
    int bound = 0;
};
MemberOutcome census_outcome(const FamilyCurve& curve);

// One measured family. In sampled mode the fields hold the tallies of the
// draws themselves (total_box = draws taken), so proportions stay unbiased
// and the invariants below hold in both modes:
//   family_size = total_box - singular, positive_bound <= family_size.
// Isotrivial members are excluded from rank accounting: the reported
// density is positive_bound / (family_size - isotrivial) and avg_bound_den
// is that same denominator (1 when it would be 0).
struct DensityRecord {
    FamilySpec spec;
    bool sampled = false;
    long long sample_n = 0;  // draws requested (sampled mode)
    uint64_t seed = 0;
    long long total_box = 0;
    long long singular = 0;
    long long isotrivial = 0;
    long long family_size = 0;
    long long positive_bound = 0;
    long long avg_bound_num = 0;  // sum of bounds over accounted members
    long long avg_bound_den = 0;
    double ci_halfwidth = 0.0;  // 95% binomial half-width, sampled mode only
    double wall_time_s = 0.0;
};

double density(const DensityRecord& rec);

// Exact census of the whole box; budget_error when the box exceeds
// max_box tuples. Partitioned across default_workers() threads; totals are
// partition independent.
DensityRecord measure_density(const FamilySpec& spec,
                              long long max_box = 1000000000LL);

// N seeded uniform draws (with replacement). Identical (seed, N) give
// identical records; ci_halfwidth is the normal-approximation half-width of
// the positive proportion among the accounted draws.
DensityRecord measure_density_sampled(const FamilySpec& spec, long long n,
                                      uint64_t seed);

// Least-squares slope of log(positive_bound / family_size) against log H.
// Requires records with positive density at >= 3 distinct H.
double fit_exponent(const std::vector<DensityRecord>& records);

// CSV: fixed header kind,H,mode,total_box,singular,isotrivial,family_size,
// positive_bound,avg_bound_num,avg_bound_den,ci_halfwidth,wall_time_s.
// JSON: array of objects with the same fields. with_timing = false writes 0
// for wall_time_s so repeated runs emit identical bytes.
void write_density_csv(std::ostream& os,
                       const std::vector<DensityRecord>& records,
                       bool with_timing = true);
void write_density_json(std::ostream& os,
                        const std::vector<DensityRecord>& records,
                        bool with_timing = true);

}  // namespace qtrank

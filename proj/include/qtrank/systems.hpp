#pragma once

#include <qtrank/fppoly.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qtrank {

// The six coefficient-map systems behind the density estimates. Each one
// sends a tuple of residues (the reduced curve parameters) to the reduced
// certificate it produces:
//   Sys1: A = 0, certificate of (B, C)              tuple (b2,b1,b0,c2,c1,c0)
//   Sys2: A a constant square, B^2 - 4a^2 C         tuple (a,b2,b1,b0,c2,c1,c0)
//   Sys3: A linear, certificate of (B^2-4AC, A),
//         normalized by the unit a1                 tuple (a0,a1!=0,b0,b1,c0,c1)
//   M11, M12, M21: the reduced systems for the mixed boxes with both
//         parameter degrees at most 2               tuples of 4, 5, 5 residues
enum class SystemKind { Sys1, Sys2, Sys3, M11, M12, M21 };

inline constexpr SystemKind kAllSystemKinds[] = {
    SystemKind::Sys1, SystemKind::Sys2, SystemKind::Sys3,
    SystemKind::M11,  SystemKind::M12,  SystemKind::M21};

const char* system_kind_name(SystemKind k);  // "sys1", ..., "m21"
std::optional<SystemKind> system_kind_from_name(std::string_view name);

int system_tuple_dim(SystemKind k);      // 6, 7, 6, 4, 5, 5
int system_target_coords(SystemKind k);  // free target coefficients

// Sys1, Sys3, M11, M21 need p = 2 mod 3 (so cubing permutes F_p); Sys2 and
// M12 accept any odd prime.
bool system_admissible_prime(SystemKind k, uint32_t p);

// Target polynomials are reduced certificates. Shape by kind:
//   Sys1: even, degree <= 4                  coords (u0, u2, u4)
//   Sys2: degree <= 4                        coords (u0, u1, u2, u3, u4)
//   Sys3: even of degree exactly 8, lead -4  coords (u0, u2, u4, u6)
//   M11:  even, degree <= 2                  coords (u0, u2)
//   M12:  degree <= 3                        coords (u0, u1, u2, u3)
//   M21:  as Sys3 but with u6 = 0            coords (u0, u2, u4)
// The packed index is sum coords[i] * p^i in the listed order.
long long system_target_count(SystemKind k, uint32_t p);
long long target_index(SystemKind k, const FpPoly& U);  // validates the shape
FpPoly target_from_index(SystemKind k, uint32_t p, long long idx);

// Full fiber histogram: bucket[i] = #tuples whose certificate packs to index
// i. Exhaustive sweep, budget p^dim <= 10^9.
std::vector<long long> bucket_counts(SystemKind k, uint32_t p);

// #tuples whose certificate reduces to exactly U; single pass, no histogram.
long long brute_count_system(SystemKind k, uint32_t p, const FpPoly& U);

// Exact fiber size where a closed formula exists for (kind, U); nullopt on
// the strata without one. Where it exists it matches brute_count_system
// exactly.
std::optional<long long> closed_form_count(SystemKind k, uint32_t p,
                                           const FpPoly& U);

// #tuples whose certificate is irreducible at its true degree. Exhaustive
// over the tuple space (budget p^dim <= 10^9), batched through the active
// kernel backend, tuple ranges split across workers.
long long count_Ap(SystemKind k, uint32_t p);

}  // namespace qtrank

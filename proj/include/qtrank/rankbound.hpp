#pragma once

#include <qtrank/family.hpp>
#include <qtrank/intpoly.hpp>

#include <optional>
#include <utility>

namespace qtrank {

// Which certificate polynomial the case table assigns to a curve:
//   MBC:    A = 0                        -> m_certificate(B, C, 2)
//   Disc:   A constant != 0, and either  -> B^2 - 4AC
//           a perfect square or deg B <= 1
//   MDiscA: deg A = 1                    -> m_certificate(B^2 - 4AC, A, 4)
//   None:   uncovered (A a non-square constant with deg B = 2, or deg A = 2)
enum class CertificateKind { MBC, Disc, MDiscA, None };

const char* certificate_kind_name(CertificateKind k);

struct RankBoundResult {
    CertificateKind kind = CertificateKind::None;
    std::optional<IntPoly> certificate;  // absent for None and degenerate input
    std::optional<int> omega;            // factor count of the certificate
    std::optional<int> bound;            // in [0,5]; absent for degenerate input
    bool isotrivial = false;
    bool singular = false;
};

// Case table above. Rejects singular or isotrivial curves
// (std::invalid_argument); shape errors propagate from to_weierstrass.
std::pair<CertificateKind, std::optional<IntPoly>> select_certificate(
    const FamilyCurve& curve);

// Full pipeline: flags singular / isotrivial curves (no bound in that case),
// otherwise selects the certificate and turns its factor count Omega into
// bound = min(5, max(0, Omega - 1)); kind None gives the blanket bound 5.
// A cheap irreducibility probe short-circuits Omega = 1 before the exact
// factor count runs.
RankBoundResult rank_upper_bound(const FamilyCurve& curve);

}  // namespace qtrank

#include <qtrank/rankbound.hpp>

#include <qtrank/bipoly.hpp>
#include <qtrank/qfactor.hpp>

#include <algorithm>
#include <stdexcept>

namespace qtrank {

namespace {

bool is_positive_square(const Int& c) {
    if (c <= 0) return false;
    Int r = sqrt(c);
    return r * r == c;
}

// The case table, with validity of the curve already established.
std::pair<CertificateKind, std::optional<IntPoly>> certificate_case(
    const FamilyCurve& curve) {
    const IntPoly& A = curve.A;
    const IntPoly& B = curve.B;
    const IntPoly& C = curve.C;
    if (A.is_zero()) return {CertificateKind::MBC, m_certificate(B, C, 2)};
    if (A.degree() == 0) {
        if (is_positive_square(A.coeff(0)) || B.degree() <= 1) {
            IntPoly disc = sub(mul(B, B), scalar_mul(mul(A, C), 4));
            return {CertificateKind::Disc, std::move(disc)};
        }
        return {CertificateKind::None, std::nullopt};
    }
    if (A.degree() == 1) {
        IntPoly disc = sub(mul(B, B), scalar_mul(mul(A, C), 4));
        return {CertificateKind::MDiscA, m_certificate(disc, A, 4)};
    }
    return {CertificateKind::None, std::nullopt};
}

}  // namespace

const char* certificate_kind_name(CertificateKind k) {
    switch (k) {
        case CertificateKind::MBC: return "MBC";
        case CertificateKind::Disc: return "Disc";
        case CertificateKind::MDiscA: return "MDiscA";
        case CertificateKind::None: return "None";
    }
    return "?";
}

std::pair<CertificateKind, std::optional<IntPoly>> select_certificate(
    const FamilyCurve& curve) {
    WeierstrassQT w = to_weierstrass(curve);
    if (disc_T(w).is_zero())
        throw std::invalid_argument("select_certificate: singular curve");
    if (is_isotrivial(w))
        throw std::invalid_argument("select_certificate: isotrivial curve");
    return certificate_case(curve);
}

RankBoundResult rank_upper_bound(const FamilyCurve& curve) {
    RankBoundResult res;
    WeierstrassQT w = to_weierstrass(curve);
    if (disc_T(w).is_zero()) {
        res.singular = true;
        return res;
    }
    if (is_isotrivial(w)) {
        res.isotrivial = true;
        return res;
    }
    auto [kind, cert] = certificate_case(curve);
    res.kind = kind;
    if (kind == CertificateKind::None) {
        res.bound = 5;
        return res;
    }
    // a vanishing certificate would mean a singular or isotrivial curve,
    // both excluded above
    if (cert->is_zero() || cert->degree() > 8)
        throw std::logic_error("rank_upper_bound: certificate out of range");
    int om;
    if (cert->degree() >= 1 &&
        irreducible_over_q_fast(*cert, 5) == IrrFast::Irreducible) {
        om = 1;
    } else {
        om = omega_q(*cert);
    }
    res.certificate = std::move(cert);
    res.omega = om;
    res.bound = std::min(5, std::max(0, om - 1));
    return res;
}

}  // namespace qtrank

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qtrank/qfactor.hpp>
#include <qtrank/rankbound.hpp>

#include <random>
#include <string>

using namespace qtrank;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 g(0x7e11bdull);
    return g;
}

long long rand_in(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

IntPoly rand_poly(int deg_max, long long bound) {
    std::vector<Int> cs(static_cast<size_t>(deg_max) + 1);
    for (auto& v : cs) v = rand_in(-bound, bound);
    return IntPoly(std::move(cs));
}

FamilyCurve rand_curve(long long bound) {
    FamilyCurve cv;
    cv.A = rand_poly(2, bound);
    cv.B = rand_poly(2, bound);
    cv.C = add(IntPoly{0, 0, 0, 1}, rand_poly(2, bound));
    return cv;
}

}  // namespace

TEST_CASE("select_certificate case table on pinned curves") {
    // A = 1, B = 3X^2+3X, C = X^3: constant square lead
    auto [k1, c1] = select_certificate(
        {IntPoly::constant(1), IntPoly{0, 3, 3}, IntPoly{0, 0, 0, 1}});
    CHECK(k1 == CertificateKind::Disc);
    REQUIRE(c1.has_value());
    CHECK(*c1 == IntPoly{0, 0, 9, 14, 9});

    // A = 0: resultant certificate of (B, C)
    auto [k2, c2] = select_certificate(
        {IntPoly(), IntPoly{0, 1}, IntPoly{1, 0, 0, 1}});
    CHECK(k2 == CertificateKind::MBC);
    REQUIRE(c2.has_value());
    CHECK(*c2 == IntPoly{-1, 0, 1});

    // deg A = 1: resultant certificate of (B^2-4AC, A)
    auto [k3, c3] = select_certificate(
        {IntPoly{0, 1}, IntPoly::constant(1), IntPoly{0, 0, 0, 1}});
    CHECK(k3 == CertificateKind::MDiscA);
    REQUIRE(c3.has_value());
    CHECK(*c3 == IntPoly{1, 0, 0, 0, 0, 0, 0, 0, -4});

    // A a positive square with deg B = 2
    auto [k4, c4] = select_certificate(
        {IntPoly::constant(4), IntPoly{0, 0, 1}, IntPoly{0, 0, 0, 1}});
    CHECK(k4 == CertificateKind::Disc);
    REQUIRE(c4.has_value());
    CHECK(*c4 == IntPoly{0, 0, 0, -16, 1});

    // A a non-square constant with deg B <= 1 still gets the discriminant
    auto [k5, c5] = select_certificate(
        {IntPoly::constant(2), IntPoly{0, 1}, IntPoly{1, 0, 0, 1}});
    CHECK(k5 == CertificateKind::Disc);
    REQUIRE(c5.has_value());
    CHECK(*c5 == IntPoly{-8, 0, 1, -8});

    // uncovered: non-square constant with deg B = 2
    auto [k6, c6] = select_certificate(
        {IntPoly::constant(2), IntPoly{0, 0, 1}, IntPoly{0, 0, 0, 1}});
    CHECK(k6 == CertificateKind::None);
    CHECK(!c6.has_value());

    // uncovered: deg A = 2
    auto [k7, c7] = select_certificate(
        {IntPoly{0, 0, 1}, IntPoly{0, 1}, IntPoly{1, 0, 0, 1}});
    CHECK(k7 == CertificateKind::None);
    CHECK(!c7.has_value());

    // negative constants are not integer squares
    auto [k8, c8] = select_certificate(
        {IntPoly::constant(-4), IntPoly{0, 0, 1}, IntPoly{0, 1, 0, 1}});
    CHECK(k8 == CertificateKind::None);
    CHECK(!c8.has_value());
}

TEST_CASE("select_certificate rejects degenerate curves") {
    // B = X^2 alone: discriminant in T vanishes identically
    CHECK_THROWS_AS(select_certificate(
                        {IntPoly(), IntPoly{0, 0, 1}, IntPoly{0, 0, 0, 1}}),
                    std::invalid_argument);
    // constant j: A = 0, B = 1, C = X^3
    CHECK_THROWS_AS(select_certificate(
                        {IntPoly(), IntPoly::constant(1), IntPoly{0, 0, 0, 1}}),
                    std::invalid_argument);
    // shape violations propagate
    CHECK_THROWS_AS(select_certificate(
                        {IntPoly(), IntPoly{0, 1}, IntPoly{0, 0, 0, 2}}),
                    std::invalid_argument);
}

TEST_CASE("rank_upper_bound on pinned curves") {
    RankBoundResult r = rank_upper_bound(
        {IntPoly::constant(1), IntPoly{0, 3, 3}, IntPoly{0, 0, 0, 1}});
    CHECK(r.kind == CertificateKind::Disc);
    CHECK(!r.singular);
    CHECK(!r.isotrivial);
    REQUIRE(r.omega.has_value());
    CHECK(*r.omega == 3);
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == 2);

    r = rank_upper_bound({IntPoly(), IntPoly{0, 1}, IntPoly{1, 0, 0, 1}});
    CHECK(r.kind == CertificateKind::MBC);
    CHECK(*r.omega == 2);
    CHECK(*r.bound == 1);

    // 1-4X^8 = -(2X^4-1)(2X^4+1)
    r = rank_upper_bound({IntPoly{0, 1}, IntPoly::constant(1), IntPoly{0, 0, 0, 1}});
    CHECK(r.kind == CertificateKind::MDiscA);
    CHECK(*r.omega == 2);
    CHECK(*r.bound == 1);

    // X^4 - 16X^3 = X^3 (X-16)
    r = rank_upper_bound({IntPoly::constant(4), IntPoly{0, 0, 1}, IntPoly{0, 0, 0, 1}});
    CHECK(r.kind == CertificateKind::Disc);
    CHECK(*r.omega == 4);
    CHECK(*r.bound == 3);

    // uncovered case falls back to the blanket bound
    r = rank_upper_bound({IntPoly::constant(2), IntPoly{0, 0, 1}, IntPoly{0, 0, 0, 1}});
    CHECK(r.kind == CertificateKind::None);
    CHECK(!r.certificate.has_value());
    CHECK(!r.omega.has_value());
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == 5);
}

TEST_CASE("rank_upper_bound flags degenerate curves without a bound") {
    RankBoundResult r =
        rank_upper_bound({IntPoly(), IntPoly{0, 0, 1}, IntPoly{0, 0, 0, 1}});
    CHECK(r.singular);
    CHECK(!r.isotrivial);
    CHECK(!r.bound.has_value());
    CHECK(!r.omega.has_value());
    CHECK(!r.certificate.has_value());

    r = rank_upper_bound({IntPoly(), IntPoly::constant(1), IntPoly{0, 0, 0, 1}});
    CHECK(r.isotrivial);
    CHECK(!r.singular);
    CHECK(!r.bound.has_value());

    // constant-j curve with A, B not both zero
    r = rank_upper_bound({IntPoly{0, 4}, IntPoly{0, 0, 3}, IntPoly{0, 0, 0, 1}});
    CHECK(r.isotrivial);
    CHECK(!r.bound.has_value());
}

TEST_CASE("certificate_kind_name round trip") {
    CHECK(std::string(certificate_kind_name(CertificateKind::MBC)) == "MBC");
    CHECK(std::string(certificate_kind_name(CertificateKind::Disc)) == "Disc");
    CHECK(std::string(certificate_kind_name(CertificateKind::MDiscA)) == "MDiscA");
    CHECK(std::string(certificate_kind_name(CertificateKind::None)) == "None");
}

TEST_CASE("random curves: case table, bound range, probe agreement") {
    int seen_mbc = 0, seen_disc = 0, seen_mdisca = 0, seen_none = 0;
    int degenerate = 0;
    for (int it = 0; it < 10000; ++it) {
        FamilyCurve cv = rand_curve(4);
        RankBoundResult r = rank_upper_bound(cv);
        if (r.singular || r.isotrivial) {
            ++degenerate;
            CHECK(!r.bound.has_value());
            CHECK(!r.certificate.has_value());
            continue;
        }
        REQUIRE(r.bound.has_value());
        CHECK(*r.bound >= 0);
        CHECK(*r.bound <= 5);

        // kind must match the case table read off the inputs
        CertificateKind expect;
        if (cv.A.is_zero()) {
            expect = CertificateKind::MBC;
        } else if (cv.A.degree() == 0) {
            Int a = cv.A.coeff(0);
            Int s = a > 0 ? Int(sqrt(a)) : Int(0);
            expect = (s * s == a || cv.B.degree() <= 1) ? CertificateKind::Disc
                                                        : CertificateKind::None;
        } else if (cv.A.degree() == 1) {
            expect = CertificateKind::MDiscA;
        } else {
            expect = CertificateKind::None;
        }
        CHECK(r.kind == expect);

        switch (r.kind) {
            case CertificateKind::MBC: ++seen_mbc; break;
            case CertificateKind::Disc: ++seen_disc; break;
            case CertificateKind::MDiscA: ++seen_mdisca; break;
            case CertificateKind::None: ++seen_none; break;
        }

        if (r.kind == CertificateKind::None) {
            CHECK(*r.bound == 5);
            CHECK(!r.certificate.has_value());
            continue;
        }
        REQUIRE(r.certificate.has_value());
        REQUIRE(r.omega.has_value());
        CHECK(r.certificate->degree() <= 8);
        CHECK(!r.certificate->is_zero());
        CHECK(*r.bound == std::min(5, std::max(0, *r.omega - 1)));
        // the probe short-circuit must agree with the exact factor count
        CHECK(*r.omega == omega_q(*r.certificate));
    }
    CHECK(seen_mbc > 0);
    CHECK(seen_disc > 0);
    CHECK(seen_mdisca > 0);
    CHECK(seen_none > 0);
    CHECK(degenerate < 2000);
}

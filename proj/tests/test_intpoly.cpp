#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qtrank/intpoly.hpp>

#include <random>

using namespace qtrank;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 g(0x9e3779b97f4a7c15ULL);
    return g;
}

long long rand_in(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

// Random polynomial of degree exactly `deg` (coefficients in [-bound, bound],
// leading coefficient nonzero).
IntPoly rand_poly(int deg, long long bound) {
    std::vector<Int> cs(static_cast<size_t>(deg) + 1);
    for (int i = 0; i < deg; ++i) cs[static_cast<size_t>(i)] = rand_in(-bound, bound);
    long long lead = rand_in(1, bound);
    if (rand_in(0, 1)) lead = -lead;
    cs[static_cast<size_t>(deg)] = lead;
    return IntPoly(std::move(cs));
}

}  // namespace

TEST_CASE("construction, trim, degree") {
    IntPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(z.coeff(0) == 0);
    CHECK(z.coeff(7) == 0);

    IntPoly p(std::vector<Int>{Int(1), Int(2), Int(0), Int(0)});
    CHECK(p.degree() == 1);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 2);
    CHECK(p.coeff(5) == 0);
    CHECK(p.leading() == 2);

    CHECK(IntPoly{0, 0, 0}.is_zero());
    CHECK(IntPoly::constant(5).degree() == 0);
    CHECK(IntPoly::constant(0).is_zero());
    CHECK(IntPoly::x_power(3) == IntPoly{0, 0, 0, 1});
    CHECK_THROWS_AS((void)z.leading(), std::invalid_argument);
}

TEST_CASE("arithmetic basics") {
    IntPoly xp1{1, 1}, xm1{-1, 1};
    CHECK(mul(xp1, xm1) == IntPoly{-1, 0, 1});
    CHECK(add(xp1, xm1) == IntPoly{0, 2});
    CHECK(sub(xp1, xp1).is_zero());
    CHECK(mul(xp1, IntPoly{}).is_zero());
    CHECK((xp1 * xp1) == IntPoly{1, 2, 1});
    CHECK(scalar_mul(xp1, Int(-3)) == IntPoly{-3, -3});
    CHECK(scalar_mul(xp1, Int(0)).is_zero());
    CHECK((-xm1) == IntPoly{1, -1});

    // cancellation in add must retrim
    CHECK(add(IntPoly{0, 0, 1}, IntPoly{1, 0, -1}) == IntPoly::constant(1));

    CHECK(eval(IntPoly{1, 0, 1}, Int(2)) == 5);
    CHECK(eval(IntPoly{}, Int(9)) == 0);
    CHECK(eval(IntPoly{3, -2, 0, 1}, Int(-3)) == -18);
}

TEST_CASE("height") {
    CHECK(height(IntPoly{}) == 0);
    CHECK(height(IntPoly{2, -7, 3}) == 7);
    CHECK(height(IntPoly::x_power(3)) == 1);
}

TEST_CASE("height of a product is at most (min deg + 1) * h * h") {
    for (int it = 0; it < 500; ++it) {
        IntPoly a = rand_poly(static_cast<int>(rand_in(0, 6)), 50);
        IntPoly b = rand_poly(static_cast<int>(rand_in(0, 6)), 50);
        Int lhs = height(mul(a, b));
        Int rhs = Int(std::min(a.degree(), b.degree()) + 1) * height(a) * height(b);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("derivative") {
    CHECK(derivative(IntPoly{5, -1, 0, 3}) == IntPoly{-1, 0, 9});
    CHECK(derivative(IntPoly::constant(4)).is_zero());
    CHECK(derivative(IntPoly{}).is_zero());
}

TEST_CASE("content and primitive part") {
    CHECK(content(IntPoly{6, -9, 12}) == 3);
    CHECK(content(IntPoly{}) == 0);
    CHECK(content(IntPoly{-4}) == 4);
    CHECK(primitive_part(IntPoly{6, -9, 12}) == IntPoly{2, -3, 4});
    // sign of the leading coefficient is preserved
    CHECK(primitive_part(IntPoly{-6, -9}) == IntPoly{-2, -3});
    CHECK(primitive_part(IntPoly{}).is_zero());
    for (int it = 0; it < 100; ++it) {
        IntPoly a = rand_poly(static_cast<int>(rand_in(0, 5)), 30);
        IntPoly pp = primitive_part(a);
        CHECK(content(pp) == 1);
        CHECK(scalar_mul(pp, content(a)) == a);
    }
}

TEST_CASE("divexact and divides") {
    CHECK(divexact(IntPoly{-1, 0, 1}, IntPoly{-1, 1}) == IntPoly{1, 1});
    CHECK(divexact(IntPoly{0, 0, 0, 2}, IntPoly{0, 2}) == IntPoly{0, 0, 1});
    CHECK(divides(IntPoly{-1, 1}, IntPoly{-1, 0, 1}));
    CHECK_FALSE(divides(IntPoly{-1, 1}, IntPoly{1, 0, 1}));
    CHECK_FALSE(divides(IntPoly{2}, IntPoly{1, 2}));
    CHECK(divides(IntPoly{3}, IntPoly{6, -9}));
    CHECK_THROWS_AS(divexact(IntPoly{1, 0, 1}, IntPoly{-1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(divexact(IntPoly{1}, IntPoly{}), std::invalid_argument);
    CHECK(divexact(IntPoly{}, IntPoly{1, 2}).is_zero());

    for (int it = 0; it < 200; ++it) {
        IntPoly a = rand_poly(static_cast<int>(rand_in(0, 4)), 20);
        IntPoly b = rand_poly(static_cast<int>(rand_in(0, 4)), 20);
        IntPoly ab = mul(a, b);
        CHECK(divides(b, ab));
        CHECK(divexact(ab, b) == a);
    }
}

TEST_CASE("poly_gcd") {
    // common factor X-1, result normalized to positive leading coefficient
    CHECK(poly_gcd(IntPoly{-1, 0, 1}, IntPoly{1, -2, 1}) == IntPoly{-1, 1});
    CHECK(poly_gcd(IntPoly{1, -2, 1}, IntPoly{-1, 0, 1}) == IntPoly{-1, 1});
    // content participates
    CHECK(poly_gcd(IntPoly{2, 2}, IntPoly{4, 4}) == IntPoly{2, 2});
    CHECK(poly_gcd(IntPoly{6}, IntPoly{4}) == IntPoly::constant(2));
    // coprime
    CHECK(poly_gcd(IntPoly{1, 0, 1}, IntPoly{-1, 1}) == IntPoly::constant(1));
    // zero operands
    CHECK(poly_gcd(IntPoly{}, IntPoly{-2, -4}) == IntPoly{2, 4});
    CHECK(poly_gcd(IntPoly{}, IntPoly{}).is_zero());

    for (int it = 0; it < 150; ++it) {
        IntPoly g = rand_poly(static_cast<int>(rand_in(0, 3)), 10);
        IntPoly a = mul(g, rand_poly(static_cast<int>(rand_in(0, 3)), 10));
        IntPoly b = mul(g, rand_poly(static_cast<int>(rand_in(0, 3)), 10));
        IntPoly d = poly_gcd(a, b);
        CHECK(divides(d, a));
        CHECK(divides(d, b));
        CHECK(divides(g, d));
        CHECK(d.leading() > 0);
    }
}

TEST_CASE("even inflation and deflation") {
    IntPoly p{1, -2, 0, 3};
    IntPoly q = inflate2(p);
    CHECK(q == IntPoly{1, 0, -2, 0, 0, 0, 3});
    CHECK(is_even_poly(q));
    CHECK(deflate2(q) == p);
    CHECK(is_even_poly(IntPoly{}));
    CHECK(is_even_poly(IntPoly::constant(7)));
    CHECK_FALSE(is_even_poly(IntPoly{0, 1}));
    CHECK_THROWS_AS(deflate2(IntPoly{0, 1}), std::invalid_argument);
    for (int it = 0; it < 100; ++it) {
        IntPoly a = rand_poly(static_cast<int>(rand_in(0, 6)), 40);
        CHECK(deflate2(inflate2(a)) == a);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qtrank/fpcount.hpp>
#include <qtrank/util.hpp>

using namespace qtrank;

TEST_CASE("closed-form counts") {
    CHECK(count_irreducible_monic(3, 2) == 3);
    CHECK(count_irreducible_monic(5, 1) == 5);
    CHECK(count_irreducible_monic(5, 4) == 150);
    CHECK(count_irreducible_monic(7, 6) == 19544);  // (7^6 - 7^3 - 7^2 + 7)/6
    CHECK_THROWS_AS(count_irreducible_monic(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(count_irreducible_monic(4, 2), std::invalid_argument);

    CHECK(count_even_irreducible_monic(5, 4) == 6);
    CHECK(count_even_irreducible_monic(3, 4) == 2);
    CHECK(count_even_irreducible_monic(5, 6) == 20);
    CHECK(count_even_irreducible_monic(3, 8) == 10);  // (3^4 - 1)/8
    CHECK_THROWS_AS(count_even_irreducible_monic(5, 3), std::invalid_argument);
    CHECK_THROWS_AS(count_even_irreducible_monic(5, 2), std::invalid_argument);
}

TEST_CASE("census examples and guards") {
    CHECK(brute_census(3, 2, CensusPredicate::all()) == 3);
    CHECK(brute_census(5, 4, CensusPredicate::even()) == 6);
    CHECK_THROWS_AS(brute_census(97, 5, CensusPredicate::all()), budget_error);
    CHECK_THROWS_AS(brute_census(101, 4, CensusPredicate::all()), budget_error);
    CHECK_THROWS_AS(brute_census(5, 3, CensusPredicate::even()), std::invalid_argument);
    CHECK_THROWS_AS(brute_census(5, 4, CensusPredicate::even_with_coeff(7)),
                    std::invalid_argument);
}

TEST_CASE("fixed-coefficient censuses partition the even census") {
    for (uint32_t p : {3u, 5u, 7u, 13u}) {
        uint64_t total = 0;
        for (uint32_t a = 0; a < p; ++a)
            total += brute_census(p, 4, CensusPredicate::even_with_coeff(a));
        CHECK(total == brute_census(p, 4, CensusPredicate::even()));
    }
}

TEST_CASE("formula agrees with the census") {
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u})
        for (int n = 1; n <= 6; ++n)
            CHECK(count_irreducible_monic(p, n) ==
                  brute_census(p, n, CensusPredicate::all()));
}

TEST_CASE("even formula agrees with the census") {
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u})
        for (int n : {4, 6})
            CHECK(count_even_irreducible_monic(p, n) ==
                  brute_census(p, n, CensusPredicate::even()));
    for (uint32_t p : {3u, 5u})
        CHECK(count_even_irreducible_monic(p, 8) ==
              brute_census(p, 8, CensusPredicate::even()));
}

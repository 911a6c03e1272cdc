#include <qtrank/fpcount.hpp>
#include <qtrank/fpfactor.hpp>
#include <qtrank/util.hpp>

#include <stdexcept>

namespace qtrank {

namespace {

int mobius(int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

uint64_t pow_checked(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > UINT64_MAX / b) throw std::overflow_error("pow_checked: overflow");
        r *= b;
    }
    return r;
}

void check_prime(uint32_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw std::invalid_argument("counting: modulus must be an odd prime");
}

}  // namespace

uint64_t count_irreducible_monic(uint32_t p, int n) {
    check_prime(p);
    if (n < 1) throw std::invalid_argument("count_irreducible_monic: n must be >= 1");
    int64_t total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        total += mu * static_cast<int64_t>(pow_checked(p, n / d));
    }
    if (total < 0 || total % n) throw std::logic_error("count_irreducible_monic: bad sum");
    return static_cast<uint64_t>(total) / static_cast<uint64_t>(n);
}

uint64_t count_even_irreducible_monic(uint32_t p, int n) {
    check_prime(p);
    if (n < 4 || n % 2)
        throw std::invalid_argument("count_even_irreducible_monic: n must be even, >= 4");
    int64_t total = 0;
    for (int d = 1; d <= n; d += 2) {
        if (n % d) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        total += mu * static_cast<int64_t>(pow_checked(p, n / (2 * d)) - 1);
    }
    if (total < 0 || total % n) throw std::logic_error("count_even_irreducible_monic: bad sum");
    return static_cast<uint64_t>(total) / static_cast<uint64_t>(n);
}

uint64_t brute_census(uint32_t p, int n, CensusPredicate pred) {
    check_prime(p);
    if (n < 1) throw std::invalid_argument("brute_census: n must be >= 1");
    uint64_t box = 1;
    for (int i = 0; i < n; ++i) {
        box *= p;
        if (box > 100000000ULL)
            throw budget_error("brute_census: p^n exceeds the 10^8 enumeration budget");
    }

    if (pred.kind == CensusPredicate::Kind::All) {
        std::vector<uint32_t> c(static_cast<size_t>(n) + 1, 0);
        c[static_cast<size_t>(n)] = 1;
        FpPoly f{p, std::move(c)};
        uint64_t count = 0;
        for (;;) {
            if (is_irreducible(f)) ++count;
            int i = 0;
            while (i < n && ++f.c[static_cast<size_t>(i)] == p) f.c[static_cast<size_t>(i++)] = 0;
            if (i == n) break;
        }
        return count;
    }

    // even predicates: f(X) = Q(X^2) for monic Q of degree n/2
    if (n % 2) throw std::invalid_argument("brute_census: even predicate needs even degree");
    int m = n / 2;
    bool fixed = pred.kind == CensusPredicate::Kind::EvenWithCoeff;
    if (fixed && pred.coeff >= p)
        throw std::invalid_argument("brute_census: fixed coefficient out of range");
    int free_coeffs = fixed ? m - 1 : m;
    std::vector<uint32_t> fc(static_cast<size_t>(n) + 1, 0);
    fc[static_cast<size_t>(n)] = 1;
    if (fixed) fc[static_cast<size_t>(n - 2)] = pred.coeff;
    FpPoly f{p, std::move(fc)};
    uint64_t count = 0;
    for (;;) {
        if (is_irreducible(f)) ++count;
        int i = 0;
        while (i < free_coeffs && ++f.c[static_cast<size_t>(2 * i)] == p)
            f.c[static_cast<size_t>(2 * i++)] = 0;
        if (i == free_coeffs) break;
    }
    return count;
}

}  // namespace qtrank

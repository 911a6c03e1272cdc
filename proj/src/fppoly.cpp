#include <qtrank/fppoly.hpp>
#include <qtrank/util.hpp>

#include <stdexcept>

namespace qtrank {

namespace {

void trim(std::vector<uint32_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

void check_modulus(uint32_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw std::invalid_argument("FpPoly: modulus must be an odd prime");
}

void check_same(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("FpPoly: mixed moduli");
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

uint32_t FpPoly::leading() const {
    if (c.empty()) throw std::invalid_argument("FpPoly::leading: zero polynomial");
    return c.back();
}

FpPoly fp_poly(uint32_t p, std::vector<uint32_t> coeffs) {
    check_modulus(p);
    for (auto& v : coeffs) v %= p;
    trim(coeffs);
    return FpPoly{p, std::move(coeffs)};
}

FpPoly fp_zero(uint32_t p) {
    check_modulus(p);
    return FpPoly{p, {}};
}

FpPoly fp_const(uint32_t p, uint32_t v) { return fp_poly(p, {v}); }

FpPoly fp_x(uint32_t p) { return fp_poly(p, {0, 1}); }

FpPoly reduce_mod_p(const IntPoly& f, uint32_t p) {
    check_modulus(p);
    std::vector<uint32_t> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) {
        Int r = f.coeffs()[i] % p;
        if (r < 0) r += p;
        c[i] = static_cast<uint32_t>(r);
    }
    trim(c);
    return FpPoly{p, std::move(c)};
}

int legendre(int64_t a, uint32_t p) {
    check_modulus(p);
    int64_t r = a % static_cast<int64_t>(p);
    if (r < 0) r += p;
    if (r == 0) return 0;
    uint64_t e = powmod_u64(static_cast<uint64_t>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    check_modulus(p);
    a %= p;
    if (a == 0) throw std::invalid_argument("fp_inv: zero has no inverse");
    return static_cast<uint32_t>(powmod_u64(a, p - 2, p));
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    std::vector<uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        uint32_t v = a.coeff(i) + b.coeff(i);
        c[i] = v >= a.p ? v - a.p : v;
    }
    trim(c);
    return FpPoly{a.p, std::move(c)};
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    std::vector<uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        uint32_t av = a.coeff(i), bv = b.coeff(i);
        c[i] = av >= bv ? av - bv : av + a.p - bv;
    }
    trim(c);
    return FpPoly{a.p, std::move(c)};
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return FpPoly{a.p, {}};
    std::vector<uint32_t> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            uint64_t v = c[i + j] + static_cast<uint64_t>(a.c[i]) * b.c[j];
            c[i + j] = static_cast<uint32_t>(v % a.p);
        }
    }
    trim(c);
    return FpPoly{a.p, std::move(c)};
}

FpPoly fp_scalar_mul(const FpPoly& a, uint32_t k) {
    k %= a.p;
    if (k == 0) return FpPoly{a.p, {}};
    std::vector<uint32_t> c(a.c.size());
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = static_cast<uint32_t>(static_cast<uint64_t>(a.c[i]) * k % a.p);
    return FpPoly{a.p, std::move(c)};
}

FpPoly fp_monic(const FpPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("fp_monic: zero polynomial");
    if (a.leading() == 1) return a;
    return fp_scalar_mul(a, fp_inv(a.leading(), a.p));
}

uint32_t fp_eval(const FpPoly& a, uint32_t x) {
    x %= a.p;
    uint64_t r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = (r * x + a.c[i]) % a.p;
    return static_cast<uint32_t>(r);
}

FpPoly fp_derivative(const FpPoly& a) {
    if (a.c.size() <= 1) return FpPoly{a.p, {}};
    std::vector<uint32_t> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        c[i - 1] = static_cast<uint32_t>(static_cast<uint64_t>(a.c[i]) * (i % a.p) % a.p);
    trim(c);
    return FpPoly{a.p, std::move(c)};
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    if (b.is_zero()) throw std::invalid_argument("fp_divmod: division by zero");
    int da = a.degree(), db = b.degree();
    if (da < db) return {FpPoly{a.p, {}}, a};
    uint32_t p = a.p;
    uint64_t binv = fp_inv(b.leading(), p);
    std::vector<uint32_t> rem(a.c);
    std::vector<uint32_t> q(static_cast<size_t>(da - db) + 1, 0);
    for (int k = da - db; k >= 0; --k) {
        uint32_t qk = static_cast<uint32_t>(rem[static_cast<size_t>(k + db)] * binv % p);
        q[static_cast<size_t>(k)] = qk;
        if (qk == 0) continue;
        for (int j = 0; j <= db; ++j) {
            size_t idx = static_cast<size_t>(k + j);
            uint64_t sub = static_cast<uint64_t>(qk) * b.c[static_cast<size_t>(j)] % p;
            rem[idx] = static_cast<uint32_t>((rem[idx] + p - sub) % p);
        }
    }
    trim(rem);
    trim(q);
    return {FpPoly{p, std::move(q)}, FpPoly{p, std::move(rem)}};
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b) { return fp_divmod(a, b).second; }

FpPoly fp_divexact(const FpPoly& a, const FpPoly& b) {
    auto [q, r] = fp_divmod(a, b);
    if (!r.is_zero()) throw std::invalid_argument("fp_divexact: nonzero remainder");
    return q;
}

FpPoly fp_gcd(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    FpPoly u = a, v = b;
    while (!v.is_zero()) {
        FpPoly r = fp_mod(u, v);
        u = std::move(v);
        v = std::move(r);
    }
    return u.is_zero() ? u : fp_monic(u);
}

FpPoly fp_powmod(const FpPoly& base, unsigned __int128 e, const FpPoly& m) {
    check_same(base, m);
    if (m.degree() < 1) throw std::invalid_argument("fp_powmod: modulus must have degree >= 1");
    FpPoly r = fp_const(m.p, 1);
    FpPoly b = fp_mod(base, m);
    while (e) {
        if (e & 1) r = fp_mod(fp_mul(r, b), m);
        b = fp_mod(fp_mul(b, b), m);
        e >>= 1;
    }
    return r;
}

}  // namespace qtrank

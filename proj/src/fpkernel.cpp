#include <qtrank/fpkernel.hpp>

#include <qtrank/fpfactor.hpp>
#include <qtrank/fppoly.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qtrank {

namespace {

// Table size caps keep the byte tables under ~16 MB each; classifiers fall
// back to the generic factoring test above the cap.
constexpr uint32_t kCubicTableMaxP = 251;
constexpr uint32_t kQuarticTableMaxP = 63;
constexpr size_t kTablePad = 8;  // slack for 4-byte vector gathers at the end

bool small_prime(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; (uint64_t)d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline uint32_t mulp(uint32_t a, uint32_t b, uint32_t p) {
    return (uint32_t)((uint64_t)a * b % p);
}
inline uint32_t subp(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}
inline uint32_t negp(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

bool irreducible_by_factoring(uint32_t p, std::vector<uint32_t> coeffs) {
    FpPoly f = fp_poly(p, std::move(coeffs));
    return is_irreducible(f);
}

}  // namespace

FpCtx::FpCtx(uint32_t p_) : p(p_) {
    if (p < 3 || !small_prime(p))
        throw std::invalid_argument("FpCtx: p must be an odd prime");

    chi.assign(p, -1);
    chi[0] = 0;
    for (uint32_t a = 1; a < p; ++a) chi[mulp(a, a, p)] = 1;

    inv.assign(p, 0);
    inv[1] = 1;
    for (uint32_t a = 2; a < p; ++a)
        inv[a] = (uint32_t)(p - (uint64_t)(p / a) * inv[p % a] % p);

    if (p <= kCubicTableMaxP) {
        size_t n3 = (size_t)p * p * p;
        cubic_irr.assign(n3 + kTablePad, 0);
        std::fill(cubic_irr.begin(), cubic_irr.begin() + n3, uint8_t{1});
        // Every reducible monic cubic has a root: mark (X - r)(X^2 + aX + b).
        for (uint32_t r = 0; r < p; ++r) {
            for (uint32_t a = 0; a < p; ++a) {
                uint32_t c2 = subp(a, r, p);
                uint32_t ar = mulp(a, r, p);
                uint8_t* row = cubic_irr.data() + ((size_t)c2 * p) * p;
                for (uint32_t b = 0; b < p; ++b) {
                    uint32_t c1 = subp(b, ar, p);
                    uint32_t c0 = negp(mulp(r, b, p), p);
                    row[(size_t)c1 * p + c0] = 0;
                }
            }
        }
    }

    if (p <= kQuarticTableMaxP) {
        size_t n4 = (size_t)p * p * p * p;
        quartic_irr.assign(n4 + kTablePad, 0);
        std::fill(quartic_irr.begin(), quartic_irr.begin() + n4, uint8_t{1});
        // Splitting type 1+3 (or finer): (X - r)(X^3 + aX^2 + bX + c).
        for (uint32_t r = 0; r < p; ++r) {
            for (uint32_t a = 0; a < p; ++a) {
                uint32_t c3 = subp(a, r, p);
                uint32_t ar = mulp(a, r, p);
                for (uint32_t b = 0; b < p; ++b) {
                    uint32_t c2 = subp(b, ar, p);
                    uint32_t br = mulp(b, r, p);
                    uint8_t* row =
                        quartic_irr.data() + (((size_t)c3 * p + c2) * p) * p;
                    for (uint32_t c = 0; c < p; ++c) {
                        uint32_t c1 = subp(c, br, p);
                        uint32_t c0 = negp(mulp(c, r, p), p);
                        row[(size_t)c1 * p + c0] = 0;
                    }
                }
            }
        }
        // Splitting type 2+2: (X^2 + aX + b)(X^2 + cX + d).
        for (uint32_t a = 0; a < p; ++a) {
            for (uint32_t b = 0; b < p; ++b) {
                for (uint32_t c = 0; c < p; ++c) {
                    uint32_t c3 = (a + c) % p;
                    uint32_t ac = mulp(a, c, p);
                    uint8_t* row =
                        quartic_irr.data() + ((size_t)c3 * p) * p * p;
                    for (uint32_t d = 0; d < p; ++d) {
                        uint32_t c2 = (ac + b + d) % p;
                        uint32_t c1 = (uint32_t)(((uint64_t)a * d + (uint64_t)b * c) % p);
                        uint32_t c0 = mulp(b, d, p);
                        row[((size_t)c2 * p + c1) * p + c0] = 0;
                    }
                }
            }
        }
    }
}

bool classify_even2(const FpCtx& ctx, uint32_t u2, uint32_t u0) {
    // u2 X^2 + u0: discriminant -4 u2 u0, and chi(-4t) = chi(-t).
    if (u2 == 0) return false;
    return ctx.chi[negp(mulp(u2, u0, ctx.p), ctx.p)] == -1;
}

bool classify_even4(const FpCtx& ctx, uint32_t u4, uint32_t u2, uint32_t u0) {
    if (u4 == 0) return classify_even2(ctx, u2, u0);
    // u4 X^4 + u2 X^2 + u0 is irreducible iff the deflated quadratic has no
    // root in F_p and its roots are nonsquares in F_{p^2}; by the norm map the
    // latter is chi(u0 u4) == -1.
    uint32_t p = ctx.p;
    uint32_t d = subp(mulp(u2, u2, p), mulp(4 % p, mulp(u0, u4, p), p), p);
    if (ctx.chi[d] != -1) return false;
    return ctx.chi[mulp(u0, u4, p)] == -1;
}

bool classify_cubic3(const FpCtx& ctx, uint32_t u3, uint32_t u2, uint32_t u1,
                     uint32_t u0) {
    uint32_t p = ctx.p;
    if (u3 != 0) {
        uint32_t m = ctx.inv[u3];
        uint32_t c2 = mulp(u2, m, p), c1 = mulp(u1, m, p), c0 = mulp(u0, m, p);
        if (ctx.has_cubic_table())
            return ctx.cubic_irr[((size_t)c2 * p + c1) * p + c0] != 0;
        return irreducible_by_factoring(p, {c0, c1, c2, 1});
    }
    if (u2 != 0) {
        uint32_t d = subp(mulp(u1, u1, p), mulp(4 % p, mulp(u2, u0, p), p), p);
        return ctx.chi[d] == -1;
    }
    return u1 != 0;  // a linear polynomial is irreducible
}

bool classify_quartic4(const FpCtx& ctx, uint32_t u4, uint32_t u3, uint32_t u2,
                       uint32_t u1, uint32_t u0) {
    uint32_t p = ctx.p;
    if (u4 == 0) return classify_cubic3(ctx, u3, u2, u1, u0);
    uint32_t m = ctx.inv[u4];
    uint32_t c3 = mulp(u3, m, p), c2 = mulp(u2, m, p), c1 = mulp(u1, m, p),
             c0 = mulp(u0, m, p);
    if (ctx.has_quartic_table())
        return ctx.quartic_irr[(((size_t)c3 * p + c2) * p + c1) * p + c0] != 0;
    return irreducible_by_factoring(p, {c0, c1, c2, c3, 1});
}

namespace {

// w8 X^8 + w6 X^6 + w4 X^4 + w2 X^2 + w0 with w8 != 0. Irreducible iff the
// deflated quartic is irreducible and chi(w0 w8) == -1 (the constant term of
// the deflation is a nonsquare times the lead, by the F_{p^4}/F_p norm).
bool classify_even8(const FpCtx& ctx, uint32_t w8, uint32_t w6, uint32_t w4,
                    uint32_t w2, uint32_t w0) {
    uint32_t p = ctx.p;
    uint32_t m = ctx.inv[w8];
    uint32_t c3 = mulp(w6, m, p), c2 = mulp(w4, m, p), c1 = mulp(w2, m, p),
             c0 = mulp(w0, m, p);
    bool irr;
    if (ctx.has_quartic_table())
        irr = ctx.quartic_irr[(((size_t)c3 * p + c2) * p + c1) * p + c0] != 0;
    else
        irr = irreducible_by_factoring(p, {c0, c1, c2, c3, 1});
    if (!irr) return false;
    return ctx.chi[mulp(w0, w8, p)] == -1;
}

}  // namespace

bool classify_even8_m4(const FpCtx& ctx, uint32_t u6, uint32_t u4, uint32_t u2,
                       uint32_t u0) {
    uint32_t p = ctx.p;
    uint32_t lead = negp(4 % p, p);
    return classify_even8(ctx, lead, u6, u4, u2, u0);
}

bool classify_poly(const FpCtx& ctx, const uint32_t* c, int deg) {
    if (deg < 0 || c[deg] == 0)
        throw std::invalid_argument("classify_poly: leading coefficient zero");
    uint32_t p = ctx.p;
    switch (deg) {
        case 0:
            return false;
        case 1:
            return true;
        case 2: {
            uint32_t d = subp(mulp(c[1], c[1], p),
                              mulp(4 % p, mulp(c[2], c[0], p), p), p);
            return ctx.chi[d] == -1;
        }
        case 3:
            return classify_cubic3(ctx, c[3], c[2], c[1], c[0]);
        case 4:
            return classify_quartic4(ctx, c[4], c[3], c[2], c[1], c[0]);
        case 8:
            if (c[1] || c[3] || c[5] || c[7])
                throw std::invalid_argument(
                    "classify_poly: degree-8 input must be even");
            return classify_even8(ctx, c[8], c[6], c[4], c[2], c[0]);
        default:
            throw std::invalid_argument(
                "classify_poly: unsupported degree " + std::to_string(deg));
    }
}

namespace {

void scalar_even4(const FpCtx& ctx, const uint32_t* u4, const uint32_t* u2,
                  const uint32_t* u0, size_t n, uint8_t* out) {
    for (size_t i = 0; i < n; ++i)
        out[i] = classify_even4(ctx, u4[i], u2[i], u0[i]) ? 1 : 0;
}

void scalar_cubic3(const FpCtx& ctx, const uint32_t* u3, const uint32_t* u2,
                   const uint32_t* u1, const uint32_t* u0, size_t n,
                   uint8_t* out) {
    for (size_t i = 0; i < n; ++i)
        out[i] = classify_cubic3(ctx, u3[i], u2[i], u1[i], u0[i]) ? 1 : 0;
}

void scalar_even8_m4(const FpCtx& ctx, const uint32_t* u6, const uint32_t* u4,
                     const uint32_t* u2, const uint32_t* u0, size_t n,
                     uint8_t* out) {
    for (size_t i = 0; i < n; ++i)
        out[i] = classify_even8_m4(ctx, u6[i], u4[i], u2[i], u0[i]) ? 1 : 0;
}

const KernelVt kScalarVt = {"scalar", scalar_even4, scalar_cubic3,
                            scalar_even8_m4};

}  // namespace

const KernelVt& scalar_kernel_vt() { return kScalarVt; }

const KernelVt& active_kernel_vt() {
    if (const char* env = std::getenv("QTRANK_SIMD")) {
        std::string s(env);
        if (s == "scalar") return scalar_kernel_vt();
        if (s == "avx2") {
            const KernelVt* v = avx2_kernel_vt();
            return v ? *v : scalar_kernel_vt();
        }
        throw std::invalid_argument("QTRANK_SIMD: unknown backend \"" + s +
                                    "\" (use scalar or avx2)");
    }
    const KernelVt* v = avx2_kernel_vt();
    return v ? *v : scalar_kernel_vt();
}

}  // namespace qtrank

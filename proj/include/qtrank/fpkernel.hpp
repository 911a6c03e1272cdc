#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qtrank {

// Per-prime lookup tables for the hot classification loops. Immutable after
// construction, safe to share across threads.
//
// chi: quadratic-residue character, chi[a] in {-1,0,+1}.
// inv: multiplicative inverses, inv[0] = 0.
// cubic_irr / quartic_irr: irreducibility of monic cubics / quartics, indexed
// by ((c_{n-1}*p + ...)*p + c_0); built by marking every (linear x lower) and
// (quadratic x quadratic) product, so they do not depend on the polynomial
// factoring code. Tables are padded by a few bytes for vector gathers and are
// skipped (left empty) above the size caps; classifiers that need a missing
// table report a budget error.
struct FpCtx {
    uint32_t p = 0;
    std::vector<int32_t> chi;
    std::vector<uint32_t> inv;
    std::vector<uint8_t> cubic_irr;
    std::vector<uint8_t> quartic_irr;

    explicit FpCtx(uint32_t p_);
    bool has_cubic_table() const { return !cubic_irr.empty(); }
    bool has_quartic_table() const { return !quartic_irr.empty(); }
};

// True-degree irreducibility tests for the certificate shapes that occur.
// Inputs are residues in [0, p); constants and zero classify as false.
bool classify_even2(const FpCtx& ctx, uint32_t u2, uint32_t u0);
bool classify_even4(const FpCtx& ctx, uint32_t u4, uint32_t u2, uint32_t u0);
bool classify_cubic3(const FpCtx& ctx, uint32_t u3, uint32_t u2, uint32_t u1,
                     uint32_t u0);
bool classify_quartic4(const FpCtx& ctx, uint32_t u4, uint32_t u3, uint32_t u2,
                       uint32_t u1, uint32_t u0);
// -4 X^8 + u6 X^6 + u4 X^4 + u2 X^2 + u0 (fixed leading coefficient).
bool classify_even8_m4(const FpCtx& ctx, uint32_t u6, uint32_t u4, uint32_t u2,
                       uint32_t u0);

// Generic entry for reduced integer certificates: c[0..deg] with c[deg] != 0.
// Handles any shape of degree <= 4 plus the even degree-6/8 shapes; other
// degrees above 4 do not occur and are rejected.
bool classify_poly(const FpCtx& ctx, const uint32_t* c, int deg);

// Batched variants of the three inner-loop classifiers. out[i] is 0 or 1.
// Lane semantics are identical to the scalar functions above.
struct KernelVt {
    const char* name;
    void (*even4)(const FpCtx&, const uint32_t* u4, const uint32_t* u2,
                  const uint32_t* u0, size_t n, uint8_t* out);
    void (*cubic3)(const FpCtx&, const uint32_t* u3, const uint32_t* u2,
                   const uint32_t* u1, const uint32_t* u0, size_t n,
                   uint8_t* out);
    void (*even8_m4)(const FpCtx&, const uint32_t* u6, const uint32_t* u4,
                     const uint32_t* u2, const uint32_t* u0, size_t n,
                     uint8_t* out);
};

const KernelVt& scalar_kernel_vt();

// AVX2 implementation (8 lanes, 16-bit Barrett reduction, table gathers);
// requires p < 256, wider primes fall back to the scalar loops per call.
// Returns nullptr when the CPU lacks AVX2. An aarch64 NEON variant would slot
// in here the same way; none is built on this target.
const KernelVt* avx2_kernel_vt();

// Runtime selection: QTRANK_SIMD=scalar|avx2 forces a backend (avx2 on an
// unsupported CPU falls back to scalar), unset picks the best available.
// Evaluated on every call; hoist the reference out of hot loops.
const KernelVt& active_kernel_vt();

}  // namespace qtrank

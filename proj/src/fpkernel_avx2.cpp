// AVX2 batch classifiers: 8 tuples per iteration, residues in 32-bit lanes.
// Only primes below 256 take the vector path (so every product of two
// residues stays under 2^16 and a 16-bit Barrett step reduces it exactly);
// wider primes fall back to the scalar loops per call.

#include <qtrank/fpkernel.hpp>

#include <immintrin.h>

#include <cstdint>

namespace qtrank {

namespace {

#pragma GCC push_options
#pragma GCC target("avx2")

struct VecCtx {
    __m256i vp;
    __m256i vM;  // floor(2^16 / p)
    __m256i vone;
    __m256i vneg1;
    __m256i v4;  // 4 mod p
    const int* chi;
    const int* inv;
};

inline VecCtx make_vecctx(const FpCtx& ctx) {
    VecCtx v;
    v.vp = _mm256_set1_epi32((int)ctx.p);
    v.vM = _mm256_set1_epi32((int)(65536u / ctx.p));
    v.vone = _mm256_set1_epi32(1);
    v.vneg1 = _mm256_set1_epi32(-1);
    v.v4 = _mm256_set1_epi32((int)(4 % ctx.p));
    v.chi = reinterpret_cast<const int*>(ctx.chi.data());
    v.inv = reinterpret_cast<const int*>(ctx.inv.data());
    return v;
}

inline __m256i loadu(const uint32_t* ptr) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ptr));
}

// Reduce x < 2^16 mod p. q = floor(x*M/2^16) is floor(x/p) or one less, so a
// single conditional subtract finishes the job.
inline __m256i mod16(const VecCtx& v, __m256i x) {
    __m256i q = _mm256_srli_epi32(_mm256_mullo_epi32(x, v.vM), 16);
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, v.vp));
    __m256i lt = _mm256_cmpgt_epi32(v.vp, r);
    return _mm256_sub_epi32(r, _mm256_andnot_si256(lt, v.vp));
}

inline __m256i mulmod(const VecCtx& v, __m256i a, __m256i b) {
    return mod16(v, _mm256_mullo_epi32(a, b));
}

inline __m256i submod(const VecCtx& v, __m256i a, __m256i b) {
    __m256i d = _mm256_sub_epi32(a, b);
    __m256i neg = _mm256_srai_epi32(d, 31);
    return _mm256_add_epi32(d, _mm256_and_si256(neg, v.vp));
}

inline __m256i negmod(const VecCtx& v, __m256i a) {
    __m256i r = _mm256_sub_epi32(v.vp, a);
    __m256i wrap = _mm256_cmpeq_epi32(r, v.vp);
    return _mm256_andnot_si256(wrap, r);
}

inline __m256i chi_is_nonsquare(const VecCtx& v, __m256i a) {
    __m256i g = _mm256_i32gather_epi32(v.chi, a, 4);
    return _mm256_cmpeq_epi32(g, v.vneg1);
}

// 4-byte gather into a 0/1 byte table; the tables carry padding so the loads
// at the top indices stay in bounds.
inline __m256i byte_is_one(const VecCtx& v, const uint8_t* table,
                           __m256i idx) {
    __m256i g = _mm256_i32gather_epi32(reinterpret_cast<const int*>(table),
                                       idx, 1);
    g = _mm256_and_si256(g, _mm256_set1_epi32(0xFF));
    return _mm256_cmpeq_epi32(g, v.vone);
}

inline void store01(uint8_t* out, __m256i mask) {
    alignas(32) uint32_t tmp[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(tmp),
                       _mm256_and_si256(mask, _mm256_set1_epi32(1)));
    for (int k = 0; k < 8; ++k) out[k] = (uint8_t)tmp[k];
}

inline __m256i nonzero(__m256i a) {
    __m256i z = _mm256_cmpeq_epi32(a, _mm256_setzero_si256());
    return _mm256_xor_si256(z, _mm256_set1_epi32(-1));
}

void avx2_even4(const FpCtx& ctx, const uint32_t* u4, const uint32_t* u2,
                const uint32_t* u0, size_t n, uint8_t* out) {
    if (ctx.p >= 256) {
        for (size_t i = 0; i < n; ++i)
            out[i] = classify_even4(ctx, u4[i], u2[i], u0[i]) ? 1 : 0;
        return;
    }
    VecCtx v = make_vecctx(ctx);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i a4 = loadu(u4 + i), a2 = loadu(u2 + i), a0 = loadu(u0 + i);
        // quartic case: chi(u2^2 - 4 u0 u4) == -1 and chi(u0 u4) == -1
        __m256i t = mulmod(v, a0, a4);
        __m256i d = submod(v, mulmod(v, a2, a2), mulmod(v, v.v4, t));
        __m256i resq =
            _mm256_and_si256(chi_is_nonsquare(v, d), chi_is_nonsquare(v, t));
        // u4 == 0 case: chi(-u2 u0) == -1 (zero lanes classify false there)
        __m256i res2 = chi_is_nonsquare(v, negmod(v, mulmod(v, a2, a0)));
        __m256i res = _mm256_blendv_epi8(res2, resq, nonzero(a4));
        store01(out + i, res);
    }
    for (; i < n; ++i)
        out[i] = classify_even4(ctx, u4[i], u2[i], u0[i]) ? 1 : 0;
}

void avx2_cubic3(const FpCtx& ctx, const uint32_t* u3, const uint32_t* u2,
                 const uint32_t* u1, const uint32_t* u0, size_t n,
                 uint8_t* out) {
    if (ctx.p >= 256 || !ctx.has_cubic_table()) {
        for (size_t i = 0; i < n; ++i)
            out[i] = classify_cubic3(ctx, u3[i], u2[i], u1[i], u0[i]) ? 1 : 0;
        return;
    }
    VecCtx v = make_vecctx(ctx);
    const uint8_t* table = ctx.cubic_irr.data();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i a3 = loadu(u3 + i), a2 = loadu(u2 + i), a1 = loadu(u1 + i),
                a0 = loadu(u0 + i);
        // cubic case: monicize and look up. inv[0] = 0, so u3 == 0 lanes
        // compute a harmless in-range index that gets blended away.
        __m256i m = _mm256_i32gather_epi32(v.inv, a3, 4);
        __m256i c2 = mulmod(v, a2, m), c1 = mulmod(v, a1, m),
                c0 = mulmod(v, a0, m);
        __m256i idx = _mm256_add_epi32(
            _mm256_mullo_epi32(
                _mm256_add_epi32(_mm256_mullo_epi32(c2, v.vp), c1), v.vp),
            c0);
        __m256i resc = byte_is_one(v, table, idx);
        // quadratic case: chi(u1^2 - 4 u2 u0) == -1
        __m256i d =
            submod(v, mulmod(v, a1, a1), mulmod(v, v.v4, mulmod(v, a2, a0)));
        __m256i res2 = chi_is_nonsquare(v, d);
        // linear case: irreducible iff u1 != 0
        __m256i res = _mm256_blendv_epi8(nonzero(a1), res2, nonzero(a2));
        res = _mm256_blendv_epi8(res, resc, nonzero(a3));
        store01(out + i, res);
    }
    for (; i < n; ++i)
        out[i] = classify_cubic3(ctx, u3[i], u2[i], u1[i], u0[i]) ? 1 : 0;
}

void avx2_even8_m4(const FpCtx& ctx, const uint32_t* u6, const uint32_t* u4,
                   const uint32_t* u2, const uint32_t* u0, size_t n,
                   uint8_t* out) {
    if (ctx.p >= 256 || !ctx.has_quartic_table()) {
        for (size_t i = 0; i < n; ++i)
            out[i] = classify_even8_m4(ctx, u6[i], u4[i], u2[i], u0[i]) ? 1 : 0;
        return;
    }
    VecCtx v = make_vecctx(ctx);
    const uint8_t* table = ctx.quartic_irr.data();
    uint32_t p = ctx.p;
    uint32_t lead = (p - 4 % p) % p;
    __m256i vlead = _mm256_set1_epi32((int)lead);
    __m256i vminv = _mm256_set1_epi32((int)ctx.inv[lead]);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i a6 = loadu(u6 + i), a4 = loadu(u4 + i), a2 = loadu(u2 + i),
                a0 = loadu(u0 + i);
        __m256i c3 = mulmod(v, a6, vminv), c2 = mulmod(v, a4, vminv),
                c1 = mulmod(v, a2, vminv), c0 = mulmod(v, a0, vminv);
        __m256i idx = _mm256_add_epi32(
            _mm256_mullo_epi32(
                _mm256_add_epi32(
                    _mm256_mullo_epi32(
                        _mm256_add_epi32(_mm256_mullo_epi32(c3, v.vp), c2),
                        v.vp),
                    c1),
                v.vp),
            c0);
        __m256i irr = byte_is_one(v, table, idx);
        __m256i chio = chi_is_nonsquare(v, mulmod(v, a0, vlead));
        store01(out + i, _mm256_and_si256(irr, chio));
    }
    for (; i < n; ++i)
        out[i] = classify_even8_m4(ctx, u6[i], u4[i], u2[i], u0[i]) ? 1 : 0;
}

#pragma GCC pop_options

const KernelVt kAvx2Vt = {"avx2", avx2_even4, avx2_cubic3, avx2_even8_m4};

}  // namespace

const KernelVt* avx2_kernel_vt() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    return &kAvx2Vt;
}

}  // namespace qtrank

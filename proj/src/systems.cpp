#include <qtrank/systems.hpp>

#include <qtrank/fpfactor.hpp>
#include <qtrank/fpkernel.hpp>
#include <qtrank/util.hpp>

#include <stdexcept>
#include <string>

namespace qtrank {

namespace {

constexpr int kDim[6] = {6, 7, 6, 4, 5, 5};
constexpr int kCoords[6] = {3, 5, 4, 2, 4, 3};
constexpr const char* kNames[6] = {"sys1", "sys2", "sys3",
                                   "m11",  "m12",  "m21"};

int ki(SystemKind k) { return static_cast<int>(k); }

inline uint32_t mulp(uint32_t a, uint32_t b, uint32_t p) {
    return (uint32_t)((uint64_t)a * b % p);
}
inline uint32_t addp(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint32_t subp(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}
inline uint32_t negp(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

void require_admissible(SystemKind k, uint32_t p) {
    if (!system_admissible_prime(k, p))
        throw std::invalid_argument(std::string(system_kind_name(k)) +
                                    ": inadmissible prime " +
                                    std::to_string(p));
}

uint64_t tuple_space(SystemKind k, uint32_t p) {
    uint64_t n = 1;
    for (int i = 0; i < kDim[ki(k)]; ++i) {
        n *= p;
        if (n > 1000000000ULL)
            throw budget_error(std::string(system_kind_name(k)) +
                               ": p^dim exceeds the 10^9 enumeration budget");
    }
    return n;
}

[[noreturn]] void bad_target(SystemKind k) {
    throw std::invalid_argument(std::string("target_index: wrong shape for ") +
                                system_kind_name(k));
}

// ---- tuple streams ----------------------------------------------------
//
// Each stream enumerates the kind's tuples with the outermost coordinate
// restricted to [lo, hi) and hands the target coefficients to the sink in
// packing order. The groupings below are the certificate coefficient maps
// expanded once and for all; the tests recompute them through the resultant
// construction on random tuples.

// sink(u0, u2, u4); certificate of (B, C) with B = b2 X^2 + b1 X + b0,
// C = X^3 + c2 X^2 + c1 X + c0:
//   u4 = b2^3
//   u2 = -2 b2^3 c0 + (c1 b1 + 2 c2 b0) b2^2 - (c2 b1^2 + 3 b0 b1) b2 + b1^3
//   u0 = b2^3 c0^2 + Q1 c0 + Q0   (grouped by powers of c0)
//   Q1 = c2 b1^2 b2 + 3 b0 b1 b2 - c1 b1 b2^2 - 2 c2 b0 b2^2 - b1^3
//   Q0 = c1^2 b0 b2^2 - c1 c2 b0 b1 b2 + (c2^2 - 2 c1) b0^2 b2
//        + c1 b0 b1^2 - c2 b0^2 b1 + b0^3
template <class Sink>
void stream_sys1(uint32_t p, uint32_t lo, uint32_t hi, Sink&& sink) {
    uint32_t two = 2 % p, three = 3 % p;
    for (uint32_t b2 = lo; b2 < hi; ++b2) {
        uint32_t b2sq = mulp(b2, b2, p), b2cu = mulp(b2sq, b2, p);
        uint32_t u4 = b2cu;
        uint32_t l2 = negp(mulp(two, b2cu, p), p);
        for (uint32_t b1 = 0; b1 < p; ++b1) {
            uint32_t b1sq = mulp(b1, b1, p), b1cu = mulp(b1sq, b1, p);
            for (uint32_t b0 = 0; b0 < p; ++b0) {
                uint32_t b0sq = mulp(b0, b0, p), b0cu = mulp(b0sq, b0, p);
                uint32_t b0b1 = mulp(b0, b1, p);
                for (uint32_t c2 = 0; c2 < p; ++c2) {
                    for (uint32_t c1 = 0; c1 < p; ++c1) {
                        uint32_t k2 = addp(
                            mulp(addp(mulp(c1, b1, p),
                                      mulp(two, mulp(c2, b0, p), p), p),
                                 b2sq, p),
                            addp(mulp(negp(addp(mulp(c2, b1sq, p),
                                                mulp(three, b0b1, p), p),
                                           p),
                                      b2, p),
                                 b1cu, p),
                            p);
                        uint32_t q1 = subp(
                            addp(mulp(mulp(c2, b1sq, p), b2, p),
                                 mulp(three, mulp(b0b1, b2, p), p), p),
                            addp(addp(mulp(mulp(c1, b1, p), b2sq, p),
                                      mulp(two, mulp(mulp(c2, b0, p), b2sq, p),
                                           p),
                                      p),
                                 b1cu, p),
                            p);
                        uint32_t q0 = addp(
                            addp(subp(mulp(mulp(c1, c1, p), mulp(b0, b2sq, p),
                                           p),
                                      mulp(mulp(c1, c2, p),
                                           mulp(b0b1, b2, p), p),
                                      p),
                                 mulp(subp(mulp(c2, c2, p), mulp(two, c1, p),
                                           p),
                                      mulp(b0sq, b2, p), p),
                                 p),
                            addp(subp(mulp(c1, mulp(b0, b1sq, p), p),
                                      mulp(c2, mulp(b0sq, b1, p), p), p),
                                 b0cu, p),
                            p);
                        for (uint32_t c0 = 0; c0 < p; ++c0) {
                            uint32_t u2 = addp(mulp(l2, c0, p), k2, p);
                            uint32_t u0 = addp(
                                mulp(addp(mulp(b2cu, c0, p), q1, p), c0, p),
                                q0, p);
                            sink(u0, u2, u4);
                        }
                    }
                }
            }
        }
    }
}

// sink(u0, u1, u2, u3, u4); B^2 - 4 a^2 C:
//   u4 = b2^2, u3 = 2 b1 b2 - 4a^2, u2 = b1^2 + 2 b0 b2 - 4a^2 c2,
//   u1 = 2 b0 b1 - 4a^2 c1, u0 = b0^2 - 4a^2 c0
template <class Sink>
void stream_sys2(uint32_t p, uint32_t lo, uint32_t hi, Sink&& sink) {
    uint32_t two = 2 % p, four = 4 % p;
    for (uint32_t a = lo; a < hi; ++a) {
        uint32_t asq4 = mulp(four, mulp(a, a, p), p);
        for (uint32_t b2 = 0; b2 < p; ++b2) {
            uint32_t u4 = mulp(b2, b2, p);
            for (uint32_t b1 = 0; b1 < p; ++b1) {
                uint32_t u3 = subp(mulp(two, mulp(b1, b2, p), p), asq4, p);
                for (uint32_t b0 = 0; b0 < p; ++b0) {
                    uint32_t u2b = addp(mulp(b1, b1, p),
                                        mulp(two, mulp(b0, b2, p), p), p);
                    uint32_t u1b = mulp(two, mulp(b0, b1, p), p);
                    uint32_t u0b = mulp(b0, b0, p);
                    for (uint32_t c2 = 0; c2 < p; ++c2) {
                        uint32_t u2 = subp(u2b, mulp(asq4, c2, p), p);
                        for (uint32_t c1 = 0; c1 < p; ++c1) {
                            uint32_t u1 = subp(u1b, mulp(asq4, c1, p), p);
                            for (uint32_t c0 = 0; c0 < p; ++c0) {
                                uint32_t u0 = subp(u0b, mulp(asq4, c0, p), p);
                                sink(u0, u1, u2, u3, u4);
                            }
                        }
                    }
                }
            }
        }
    }
}

// sink(u0, u2, u4, u6); certificate of (B^2 - 4AC, A) for A = a1 X + a0
// divided by the unit a1, so the target lead is -4:
//   u6 = 12 a0
//   u4 = -12 a0^2 + a1 b1^2 - 4 a1^2 c1
//   u2 = 4 a0^3 + 2 a1^2 b0 b1 - 2 a0 a1 b1^2 - 4 a1^3 c0 + 4 a0 a1^2 c1
//   u0 = a1 (a1 b0 - a0 b1)^2
// a1 = 0 is excluded; the outer range indexes a1 - 1 in [0, p-1).
template <class Sink>
void stream_sys3(uint32_t p, uint32_t lo, uint32_t hi, Sink&& sink) {
    uint32_t two = 2 % p, four = 4 % p, twelve = 12 % p;
    for (uint32_t i = lo; i < hi; ++i) {
        uint32_t a1 = i + 1;
        uint32_t a1sq = mulp(a1, a1, p), a1cu = mulp(a1sq, a1, p);
        uint32_t slope = negp(mulp(four, a1cu, p), p);
        for (uint32_t a0 = 0; a0 < p; ++a0) {
            uint32_t u6 = mulp(twelve, a0, p);
            uint32_t a0sq = mulp(a0, a0, p), a0cu = mulp(a0sq, a0, p);
            for (uint32_t b1 = 0; b1 < p; ++b1) {
                uint32_t b1sq = mulp(b1, b1, p);
                uint32_t u4b = subp(mulp(a1, b1sq, p), mulp(twelve, a0sq, p), p);
                uint32_t u2b = subp(mulp(four, a0cu, p),
                                    mulp(two, mulp(a0, mulp(a1, b1sq, p), p), p),
                                    p);
                for (uint32_t c1 = 0; c1 < p; ++c1) {
                    uint32_t u4 = subp(u4b, mulp(four, mulp(a1sq, c1, p), p), p);
                    uint32_t u2c =
                        addp(u2b, mulp(four, mulp(a0, mulp(a1sq, c1, p), p), p),
                             p);
                    for (uint32_t b0 = 0; b0 < p; ++b0) {
                        uint32_t t = subp(mulp(a1, b0, p), mulp(a0, b1, p), p);
                        uint32_t u0 = mulp(a1, mulp(t, t, p), p);
                        uint32_t u2d = addp(
                            u2c, mulp(two, mulp(a1sq, mulp(b0, b1, p), p), p),
                            p);
                        for (uint32_t c0 = 0; c0 < p; ++c0) {
                            uint32_t u2 = addp(u2d, mulp(slope, c0, p), p);
                            sink(u0, u2, u4, u6);
                        }
                    }
                }
            }
        }
    }
}

// sink(u0, u2): u2 = a1^3, u0 = b1^3 + a0 a1^2 b1 - a1^3 b0
template <class Sink>
void stream_m11(uint32_t p, uint32_t lo, uint32_t hi, Sink&& sink) {
    for (uint32_t a1 = lo; a1 < hi; ++a1) {
        uint32_t a1sq = mulp(a1, a1, p), a1cu = mulp(a1sq, a1, p);
        for (uint32_t a0 = 0; a0 < p; ++a0) {
            for (uint32_t b1 = 0; b1 < p; ++b1) {
                uint32_t t = addp(mulp(mulp(b1, b1, p), b1, p),
                                  mulp(a0, mulp(a1sq, b1, p), p), p);
                for (uint32_t b0 = 0; b0 < p; ++b0)
                    sink(subp(t, mulp(a1cu, b0, p), p), a1cu);
            }
        }
    }
}

// sink(u0, u1, u2, u3): u3 = -4 b2, u2 = a1^2, u1 = 2 a1 b1 - 4 b2 a0,
// u0 = b1^2 - 4 b2 b0
template <class Sink>
void stream_m12(uint32_t p, uint32_t lo, uint32_t hi, Sink&& sink) {
    uint32_t two = 2 % p, four = 4 % p;
    for (uint32_t b2 = lo; b2 < hi; ++b2) {
        uint32_t b24 = mulp(four, b2, p);
        uint32_t u3 = negp(b24, p);
        for (uint32_t a1 = 0; a1 < p; ++a1) {
            uint32_t u2 = mulp(a1, a1, p);
            uint32_t a12 = mulp(two, a1, p);
            for (uint32_t b1 = 0; b1 < p; ++b1) {
                uint32_t u1b = mulp(a12, b1, p);
                uint32_t u0b = mulp(b1, b1, p);
                for (uint32_t a0 = 0; a0 < p; ++a0) {
                    uint32_t u1 = subp(u1b, mulp(b24, a0, p), p);
                    for (uint32_t b0 = 0; b0 < p; ++b0)
                        sink(subp(u0b, mulp(b24, b0, p), p), u1, u2, u3);
                }
            }
        }
    }
}

// sink(u0, u2, u4): u4 = a2 a1^2 - 4 a2^2 a0, u2 = 2 a2^2 a1 b1 - 4 a2^3 b0,
// u0 = a2^3 b1^2 (the target's u6 is identically 0)
template <class Sink>
void stream_m21(uint32_t p, uint32_t lo, uint32_t hi, Sink&& sink) {
    uint32_t two = 2 % p, four = 4 % p;
    for (uint32_t a2 = lo; a2 < hi; ++a2) {
        uint32_t a2sq = mulp(a2, a2, p), a2cu = mulp(a2sq, a2, p);
        uint32_t slope = negp(mulp(four, a2cu, p), p);
        for (uint32_t a1 = 0; a1 < p; ++a1) {
            uint32_t t4 = mulp(a2, mulp(a1, a1, p), p);
            uint32_t u2f = mulp(two, mulp(a2sq, a1, p), p);
            for (uint32_t a0 = 0; a0 < p; ++a0) {
                uint32_t u4 = subp(t4, mulp(four, mulp(a2sq, a0, p), p), p);
                for (uint32_t b1 = 0; b1 < p; ++b1) {
                    uint32_t u0 = mulp(a2cu, mulp(b1, b1, p), p);
                    uint32_t u2b = mulp(u2f, b1, p);
                    for (uint32_t b0 = 0; b0 < p; ++b0)
                        sink(u0, addp(u2b, mulp(slope, b0, p), p), u4);
                }
            }
        }
    }
}

// Size of the outermost stream coordinate, the unit of work splitting.
uint32_t outer_size(SystemKind k, uint32_t p) {
    return k == SystemKind::Sys3 ? p - 1 : p;
}

// Dispatches one outer-range pass over the kind's tuples. The sink object
// must provide the arity-matching operator() per kind; packing helpers below
// adapt it.
template <class S3, class S5, class S4, class S2>
void stream_kind(SystemKind k, uint32_t p, uint32_t lo, uint32_t hi, S3&& s3,
                 S5&& s5, S4&& s4, S2&& s2) {
    switch (k) {
        case SystemKind::Sys1:
            stream_sys1(p, lo, hi, s3);
            break;
        case SystemKind::Sys2:
            stream_sys2(p, lo, hi, s5);
            break;
        case SystemKind::Sys3:
            stream_sys3(p, lo, hi, s4);
            break;
        case SystemKind::M11:
            stream_m11(p, lo, hi, s2);
            break;
        case SystemKind::M12:
            stream_m12(p, lo, hi, s4);
            break;
        case SystemKind::M21:
            stream_m21(p, lo, hi, s3);
            break;
    }
}

}  // namespace

const char* system_kind_name(SystemKind k) { return kNames[ki(k)]; }

std::optional<SystemKind> system_kind_from_name(std::string_view name) {
    for (SystemKind k : kAllSystemKinds)
        if (name == kNames[ki(k)]) return k;
    return std::nullopt;
}

int system_tuple_dim(SystemKind k) { return kDim[ki(k)]; }

int system_target_coords(SystemKind k) { return kCoords[ki(k)]; }

bool system_admissible_prime(SystemKind k, uint32_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p)) return false;
    switch (k) {
        case SystemKind::Sys1:
        case SystemKind::Sys3:
        case SystemKind::M11:
        case SystemKind::M21:
            return p % 3 == 2;
        case SystemKind::Sys2:
        case SystemKind::M12:
            return true;
    }
    return false;
}

long long system_target_count(SystemKind k, uint32_t p) {
    long long n = 1;
    for (int i = 0; i < kCoords[ki(k)]; ++i) n *= p;
    return n;
}

long long target_index(SystemKind k, const FpPoly& U) {
    uint32_t p = U.p;
    auto even = [&](int from) {
        for (int i = from; i <= U.degree(); i += 2)
            if (U.coeff((size_t)i) != 0) return false;
        return true;
    };
    uint32_t lead = negp(4 % p, p);
    switch (k) {
        case SystemKind::Sys1:
            if (U.degree() > 4 || !even(1)) bad_target(k);
            return (long long)U.coeff(0) + (long long)p * U.coeff(2) +
                   (long long)p * p * U.coeff(4);
        case SystemKind::Sys2: {
            if (U.degree() > 4) bad_target(k);
            long long idx = 0;
            for (int i = 4; i >= 0; --i) idx = idx * p + U.coeff((size_t)i);
            return idx;
        }
        case SystemKind::Sys3:
            if (U.degree() != 8 || !even(1) || U.coeff(8) != lead)
                bad_target(k);
            return ((((long long)U.coeff(6) * p + U.coeff(4)) * p) +
                    U.coeff(2)) *
                       p +
                   U.coeff(0);
        case SystemKind::M11:
            if (U.degree() > 2 || !even(1)) bad_target(k);
            return (long long)U.coeff(0) + (long long)p * U.coeff(2);
        case SystemKind::M12: {
            if (U.degree() > 3) bad_target(k);
            long long idx = 0;
            for (int i = 3; i >= 0; --i) idx = idx * p + U.coeff((size_t)i);
            return idx;
        }
        case SystemKind::M21:
            if (U.degree() != 8 || !even(1) || U.coeff(8) != lead ||
                U.coeff(6) != 0)
                bad_target(k);
            return ((long long)U.coeff(4) * p + U.coeff(2)) * p + U.coeff(0);
    }
    bad_target(k);
}

FpPoly target_from_index(SystemKind k, uint32_t p, long long idx) {
    if (idx < 0 || idx >= system_target_count(k, p))
        throw std::invalid_argument("target_from_index: index out of range");
    int nc = kCoords[ki(k)];
    uint32_t c[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < nc; ++i) {
        c[i] = (uint32_t)(idx % p);
        idx /= p;
    }
    uint32_t lead = negp(4 % p, p);
    switch (k) {
        case SystemKind::Sys1:
            return fp_poly(p, {c[0], 0, c[1], 0, c[2]});
        case SystemKind::Sys2:
            return fp_poly(p, {c[0], c[1], c[2], c[3], c[4]});
        case SystemKind::Sys3:
            return fp_poly(p, {c[0], 0, c[1], 0, c[2], 0, c[3], 0, lead});
        case SystemKind::M11:
            return fp_poly(p, {c[0], 0, c[1]});
        case SystemKind::M12:
            return fp_poly(p, {c[0], c[1], c[2], c[3]});
        case SystemKind::M21:
            return fp_poly(p, {c[0], 0, c[1], 0, c[2], 0, 0, 0, lead});
    }
    throw std::logic_error("target_from_index: unreachable");
}

std::vector<long long> bucket_counts(SystemKind k, uint32_t p) {
    require_admissible(k, p);
    tuple_space(k, p);
    std::vector<long long> buckets((size_t)system_target_count(k, p), 0);
    uint64_t pp = p;
    auto s3 = [&](uint32_t u0, uint32_t u2, uint32_t u4) {
        ++buckets[u0 + pp * (u2 + pp * u4)];
    };
    auto s5 = [&](uint32_t u0, uint32_t u1, uint32_t u2, uint32_t u3,
                  uint32_t u4) {
        ++buckets[u0 + pp * (u1 + pp * (u2 + pp * (u3 + pp * u4)))];
    };
    auto s4 = [&](uint32_t u0, uint32_t u1, uint32_t u2, uint32_t u3) {
        ++buckets[u0 + pp * (u1 + pp * (u2 + pp * u3))];
    };
    auto s2 = [&](uint32_t u0, uint32_t u1) { ++buckets[u0 + pp * u1]; };
    stream_kind(k, p, 0, outer_size(k, p), s3, s5, s4, s2);
    return buckets;
}

long long brute_count_system(SystemKind k, uint32_t p, const FpPoly& U) {
    require_admissible(k, p);
    if (U.p != p)
        throw std::invalid_argument("brute_count_system: U is not mod p");
    tuple_space(k, p);
    long long tgt = target_index(k, U);
    long long count = 0;
    uint64_t pp = p;
    auto s3 = [&](uint32_t u0, uint32_t u2, uint32_t u4) {
        count += (long long)(u0 + pp * (u2 + pp * u4)) == tgt;
    };
    auto s5 = [&](uint32_t u0, uint32_t u1, uint32_t u2, uint32_t u3,
                  uint32_t u4) {
        count += (long long)(u0 + pp * (u1 + pp * (u2 + pp * (u3 + pp * u4)))) ==
                 tgt;
    };
    auto s4 = [&](uint32_t u0, uint32_t u1, uint32_t u2, uint32_t u3) {
        count += (long long)(u0 + pp * (u1 + pp * (u2 + pp * u3))) == tgt;
    };
    auto s2 = [&](uint32_t u0, uint32_t u1) {
        count += (long long)(u0 + pp * u1) == tgt;
    };
    stream_kind(k, p, 0, outer_size(k, p), s3, s5, s4, s2);
    return count;
}

std::optional<long long> closed_form_count(SystemKind k, uint32_t p,
                                           const FpPoly& U) {
    require_admissible(k, p);
    if (U.p != p)
        throw std::invalid_argument("closed_form_count: U is not mod p");
    target_index(k, U);  // shape validation
    long long lp = p;
    switch (k) {
        case SystemKind::Sys1: {
            uint32_t u4 = U.coeff(4), u2 = U.coeff(2), u0 = U.coeff(0);
            if (u4 == 0) return lp * lp * lp;
            uint32_t disc = subp(mulp(u2, u2, p),
                                 mulp(4 % p, mulp(u0, u4, p), p), p);
            if (disc != 0) return lp * lp * lp - lp * lp;
            return std::nullopt;  // degenerate deflation: no single formula
        }
        case SystemKind::Sys2: {
            if (U.degree() == 4 && is_irreducible(U))
                return (1 + legendre(U.coeff(4), p)) * (lp * lp - lp);
            if (U.degree() == 3 && is_irreducible(U))
                return (1 + legendre(negp(U.coeff(3), p), p)) * lp * lp;
            return std::nullopt;
        }
        case SystemKind::Sys3:
            if (U.coeff(0) != 0) return lp * lp - lp;
            return std::nullopt;
        case SystemKind::M11:
            return lp * lp;
        case SystemKind::M12:
            if (U.degree() == 3)
                return (1 + legendre(U.coeff(2), p)) * lp;
            return std::nullopt;
        case SystemKind::M21:
            if (U.coeff(0) != 0) return lp * lp - lp;
            return std::nullopt;
    }
    return std::nullopt;
}

namespace {

constexpr size_t kBatch = 4096;

// Accumulates tuples for one kernel batch function and counts the
// irreducible ones on flush.
struct BatchCounter {
    const FpCtx& ctx;
    const KernelVt& vt;
    int lanes;  // buffers in use: 3 (even4), 4 (cubic3 or even8_m4)
    bool octic;
    std::vector<uint32_t> buf[4];
    std::vector<uint8_t> out;
    long long total = 0;

    BatchCounter(const FpCtx& c, const KernelVt& v, int l, bool oct)
        : ctx(c), vt(v), lanes(l), octic(oct) {
        for (int i = 0; i < lanes; ++i) buf[i].reserve(kBatch);
        out.resize(kBatch);
    }
    void flush() {
        size_t n = buf[0].size();
        if (n == 0) return;
        if (lanes == 3)
            vt.even4(ctx, buf[2].data(), buf[1].data(), buf[0].data(), n,
                     out.data());
        else if (octic)
            vt.even8_m4(ctx, buf[3].data(), buf[2].data(), buf[1].data(),
                        buf[0].data(), n, out.data());
        else
            vt.cubic3(ctx, buf[3].data(), buf[2].data(), buf[1].data(),
                      buf[0].data(), n, out.data());
        for (size_t i = 0; i < n; ++i) total += out[i];
        for (int i = 0; i < lanes; ++i) buf[i].clear();
    }
    void maybe_flush() {
        if (buf[0].size() == kBatch) flush();
    }
};

}  // namespace

long long count_Ap(SystemKind k, uint32_t p) {
    require_admissible(k, p);
    tuple_space(k, p);
    FpCtx ctx(p);
    const KernelVt& vt = active_kernel_vt();
    int workers = default_workers();
    std::vector<long long> totals((size_t)workers, 0);
    parallel_ranges(outer_size(k, p), workers,
                    [&](uint64_t lo, uint64_t hi, int part) {
        long long local = 0;
        switch (k) {
            case SystemKind::Sys1: {
                BatchCounter bc(ctx, vt, 3, false);
                auto sink = [&](uint32_t u0, uint32_t u2, uint32_t u4) {
                    bc.buf[0].push_back(u0);
                    bc.buf[1].push_back(u2);
                    bc.buf[2].push_back(u4);
                    bc.maybe_flush();
                };
                stream_sys1(p, (uint32_t)lo, (uint32_t)hi, sink);
                bc.flush();
                local = bc.total;
                break;
            }
            case SystemKind::M21: {
                // octic targets with no X^6 term: pad the u6 lane with zeros
                BatchCounter bc(ctx, vt, 4, true);
                auto sink = [&](uint32_t u0, uint32_t u2, uint32_t u4) {
                    bc.buf[0].push_back(u0);
                    bc.buf[1].push_back(u2);
                    bc.buf[2].push_back(u4);
                    bc.buf[3].push_back(0);
                    bc.maybe_flush();
                };
                stream_m21(p, (uint32_t)lo, (uint32_t)hi, sink);
                bc.flush();
                local = bc.total;
                break;
            }
            case SystemKind::Sys3: {
                // even8_m4 takes (u6, u4, u2, u0); buffers hold packing order
                BatchCounter bc(ctx, vt, 4, true);
                auto sink = [&](uint32_t u0, uint32_t u2, uint32_t u4,
                                uint32_t u6) {
                    bc.buf[0].push_back(u0);
                    bc.buf[1].push_back(u2);
                    bc.buf[2].push_back(u4);
                    bc.buf[3].push_back(u6);
                    bc.maybe_flush();
                };
                stream_sys3(p, (uint32_t)lo, (uint32_t)hi, sink);
                bc.flush();
                local = bc.total;
                break;
            }
            case SystemKind::M12: {
                BatchCounter bc(ctx, vt, 4, false);
                auto sink = [&](uint32_t u0, uint32_t u1, uint32_t u2,
                                uint32_t u3) {
                    bc.buf[0].push_back(u0);
                    bc.buf[1].push_back(u1);
                    bc.buf[2].push_back(u2);
                    bc.buf[3].push_back(u3);
                    bc.maybe_flush();
                };
                stream_m12(p, (uint32_t)lo, (uint32_t)hi, sink);
                bc.flush();
                local = bc.total;
                break;
            }
            case SystemKind::M11: {
                BatchCounter bc(ctx, vt, 3, false);
                auto sink = [&](uint32_t u0, uint32_t u2) {
                    bc.buf[0].push_back(u0);
                    bc.buf[1].push_back(u2);
                    bc.buf[2].push_back(0);  // no quartic term
                    bc.maybe_flush();
                };
                stream_m11(p, (uint32_t)lo, (uint32_t)hi, sink);
                bc.flush();
                local = bc.total;
                break;
            }
            case SystemKind::Sys2: {
                auto sink = [&](uint32_t u0, uint32_t u1, uint32_t u2,
                                uint32_t u3, uint32_t u4) {
                    local += classify_quartic4(ctx, u4, u3, u2, u1, u0);
                };
                stream_sys2(p, (uint32_t)lo, (uint32_t)hi, sink);
                break;
            }
        }
        totals[(size_t)part] = local;
    });
    long long total = 0;
    for (long long t : totals) total += t;
    return total;
}

}  // namespace qtrank

#include <qtrank/census.hpp>

#include <qtrank/fpkernel.hpp>
#include <qtrank/qfactor.hpp>
#include <qtrank/rankbound.hpp>
#include <qtrank/util.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace qtrank {

namespace {

// ---------------------------------------------------------------------------
// Box geometry. Each coordinate is digit - off with side = 2*off + 1.

struct Box {
    int dims = 0;
    long long side[8] = {};
    long long off[8] = {};
};

Box box_shape(const FamilySpec& spec) {
    if (spec.H < 1)
        throw std::invalid_argument("family spec: H must be >= 1");
    Box b;
    auto sym = [&](long long half) {
        b.off[b.dims] = half;
        b.side[b.dims] = 2 * half + 1;
        ++b.dims;
    };
    switch (spec.kind) {
        case FamilyKind::S0:
            for (int i = 0; i < 6; ++i) sym(spec.H);
            break;
        case FamilyKind::Ssquare:
            for (int i = 0; i < 7; ++i) sym(spec.H);
            break;
        case FamilyKind::Sell:
            for (int i = 0; i < 6; ++i) sym(spec.H);
            break;
        case FamilyKind::Smn: {
            if (spec.m < 0 || spec.m > 2 || spec.n < 0 || spec.n > 2)
                throw std::invalid_argument(
                    "family spec: degree caps must be in 0..2");
            if (spec.H > 2000000)
                throw budget_error("family spec: H^3 overflows the box");
            long long h3 = spec.H * spec.H * spec.H;
            long long h2 = spec.H * spec.H;
            for (int i = 0; i <= spec.m; ++i) sym(h3 - 1);
            for (int j = 0; j <= spec.n; ++j) sym(h2 - 1);
            break;
        }
        default:
            throw std::invalid_argument("family spec: unknown kind");
    }
    return b;
}

long long box_total(const Box& b) {
    __int128 total = 1;
    for (int i = 0; i < b.dims; ++i) {
        total *= b.side[i];
        if (total > (__int128)INT64_MAX)
            throw budget_error("family box size overflows 2^63");
    }
    return (long long)total;
}

// The six X-coefficients that determine a member: A and B quadratic, C monic
// cubic. All decoding funnels through here so the census loop, the public
// family_member, and the tests agree on the odometer order.
struct Coeffs {
    long long A[3] = {0, 0, 0};
    long long B[3] = {0, 0, 0};
    long long C[4] = {0, 0, 0, 1};
};

void decode_coeffs(const FamilySpec& spec, const Box& b, long long index,
                   Coeffs& out) {
    long long d[8];
    for (int i = 0; i < b.dims; ++i) {
        d[i] = index % b.side[i] - b.off[i];
        index /= b.side[i];
    }
    out = Coeffs{};
    switch (spec.kind) {
        case FamilyKind::S0:
            out.B[0] = d[0], out.B[1] = d[1], out.B[2] = d[2];
            out.C[0] = d[3], out.C[1] = d[4], out.C[2] = d[5];
            break;
        case FamilyKind::Ssquare:
            out.A[0] = d[0] * d[0];
            out.B[0] = d[1], out.B[1] = d[2], out.B[2] = d[3];
            out.C[0] = d[4], out.C[1] = d[5], out.C[2] = d[6];
            break;
        case FamilyKind::Sell:
            out.A[0] = d[0], out.A[1] = d[1];
            out.B[0] = d[2], out.B[1] = d[3];
            out.C[0] = d[4], out.C[1] = d[5];
            break;
        case FamilyKind::Smn: {
            // alpha4 coefficients a_i, alpha6 coefficients b_j; regrouping
            // Y^2 = X^3 + alpha4 X + alpha6 by powers of T gives
            // A = a2 X + b2, B = a1 X + b1, C = X^3 + a0 X + b0
            long long a[3] = {0, 0, 0}, bb[3] = {0, 0, 0};
            for (int i = 0; i <= spec.m; ++i) a[i] = d[i];
            for (int j = 0; j <= spec.n; ++j) bb[j] = d[spec.m + 1 + j];
            out.A[0] = bb[2], out.A[1] = a[2];
            out.B[0] = bb[1], out.B[1] = a[1];
            out.C[0] = bb[0], out.C[1] = a[0];
            break;
        }
    }
}

FamilyCurve curve_from_coeffs(const Coeffs& q) {
    auto poly = [](const long long* c, int n) {
        std::vector<Int> v;
        v.reserve(n);
        for (int i = 0; i < n; ++i) v.emplace_back(c[i]);
        return IntPoly(std::move(v));
    };
    return FamilyCurve{poly(q.A, 3), poly(q.B, 3), poly(q.C, 4)};
}

// ---------------------------------------------------------------------------
// Machine-integer outcome path.

// All products below fit int64 when every coefficient is at most this; the
// worst case is the cube of c4 = 16(a2^2 - 3 a4), bounded by
// 25 * (144 * 64^2)^3 < 2^63.
constexpr long long kFastCoeffCap = 64;

void conv(const long long* a, int na, const long long* b, int nb,
          long long* out) {
    for (int i = 0; i < na + nb - 1; ++i) out[i] = 0;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
}

int top(const long long* a, int n) {
    for (int i = n - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

// Prime-field contexts used to certify certificates irreducible (hence
// factor count 1) without exact integer factoring. All primes sit below the
// quartic table cap, so every probe is a table lookup; larger primes first,
// since they certify more often.
const std::vector<FpCtx>& probe_contexts() {
    static const std::vector<FpCtx> ctxs = [] {
        std::vector<FpCtx> v;
        for (uint32_t p : {61u, 59u, 53u, 47u, 43u, 41u, 37u, 31u, 29u, 23u,
                           19u, 17u, 13u, 11u, 7u, 5u, 3u})
            v.emplace_back(p);
        return v;
    }();
    return ctxs;
}

// Factor count over Q of a nonconstant integer polynomial, probing first.
// A degree-preserving irreducible reduction proves factor count 1; only
// members failing every probe pay for the exact count.
int omega_int64(const long long* c, int deg) {
    for (const FpCtx& ctx : probe_contexts()) {
        uint32_t p = ctx.p;
        uint32_t cp[9];
        for (int i = 0; i <= deg; ++i)
            cp[i] = (uint32_t)((c[i] % (long long)p + p) % p);
        if (cp[deg] == 0) continue;
        if (classify_poly(ctx, cp, deg)) return 1;
    }
    std::vector<Int> v;
    v.reserve((size_t)deg + 1);
    for (int i = 0; i <= deg; ++i) v.emplace_back(c[i]);
    return omega_q(IntPoly(std::move(v)));
}

MemberOutcome outcome_reference(const Coeffs& q) {
    RankBoundResult r = rank_upper_bound(curve_from_coeffs(q));
    MemberOutcome o;
    o.singular = r.singular;
    o.isotrivial = r.isotrivial;
    o.bound = r.bound ? *r.bound : 0;
    return o;
}

bool within_cap(const Coeffs& q) {
    for (long long c : q.A)
        if (c < -kFastCoeffCap || c > kFastCoeffCap) return false;
    for (long long c : q.B)
        if (c < -kFastCoeffCap || c > kFastCoeffCap) return false;
    for (int i = 0; i < 3; ++i)
        if (q.C[i] < -kFastCoeffCap || q.C[i] > kFastCoeffCap) return false;
    return true;
}

MemberOutcome outcome_int64(const Coeffs& q) {
    if (q.C[3] != 1 || !within_cap(q)) return outcome_reference(q);

    // Weierstrass coefficients as polynomials in T (constant term first)
    long long a2[3] = {q.C[2], q.B[2], q.A[2]};
    long long a4[3] = {q.C[1], q.B[1], q.A[1]};
    long long a6[3] = {q.C[0], q.B[0], q.A[0]};

    long long a2a2[5], a4a4[5], a6a6[5], a2a4[5];
    conv(a2, 3, a2, 3, a2a2);
    conv(a4, 3, a4, 3, a4a4);
    conv(a6, 3, a6, 3, a6a6);
    conv(a2, 3, a4, 3, a2a4);
    long long a2cu[7], t1[9], t2[9], t3[7], t4[7];
    conv(a2a2, 5, a2, 3, a2cu);
    conv(a2cu, 7, a6, 3, t1);   // a2^3 a6
    conv(a2a2, 5, a4a4, 5, t2); // a2^2 a4^2
    conv(a2a4, 5, a6, 3, t3);   // a2 a4 a6
    conv(a4a4, 5, a4, 3, t4);   // a4^3

    long long delta[9];
    for (int i = 0; i < 9; ++i) delta[i] = -4 * t1[i] + t2[i];
    for (int i = 0; i < 7; ++i) delta[i] += 18 * t3[i] - 4 * t4[i];
    for (int i = 0; i < 5; ++i) delta[i] -= 27 * a6a6[i];
    int ddeg = top(delta, 9);
    if (ddeg < 0) return MemberOutcome{true, false, 0};

    long long c4[5];
    for (int i = 0; i < 5; ++i)
        c4[i] = 16 * (a2a2[i] - (i < 3 ? 3 * a4[i] : 0));
    if (top(c4, 5) < 0) return MemberOutcome{false, true, 0};
    long long c4sq[9], c4cu[13];
    conv(c4, 5, c4, 5, c4sq);
    conv(c4sq, 9, c4, 5, c4cu);
    int cdeg = top(c4cu, 13);
    if (cdeg == ddeg) {
        bool proportional = true;
        for (int i = 0; i <= ddeg && proportional; ++i)
            proportional = (__int128)c4cu[i] * delta[ddeg] ==
                           (__int128)delta[i] * c4cu[cdeg];
        if (proportional) return MemberOutcome{false, true, 0};
    }

    // certificate, by the case on A
    long long cert[9] = {};
    int degA = top(q.A, 3), degB = top(q.B, 3);
    long long b2 = q.B[2], b1 = q.B[1], b0 = q.B[0];
    long long c2 = q.C[2], c1 = q.C[1], c0 = q.C[0];
    if (degA < 0) {
        // resultant of (B, X^2 - C) with B at formal degree 2, expanded
        long long b2sq = b2 * b2, b2cu = b2sq * b2;
        long long b1sq = b1 * b1, b1cu = b1sq * b1;
        cert[4] = b2cu;
        cert[2] = -2 * b2cu * c0 + (c1 * b1 + 2 * c2 * b0) * b2sq -
                  (c2 * b1sq + 3 * b0 * b1) * b2 + b1cu;
        long long q1 = c2 * b1sq * b2 + 3 * b0 * b1 * b2 - c1 * b1 * b2sq -
                       2 * c2 * b0 * b2sq - b1cu;
        long long q0 = c1 * c1 * b0 * b2sq - c1 * c2 * b0 * b1 * b2 +
                       (c2 * c2 - 2 * c1) * b0 * b0 * b2 + c1 * b0 * b1sq -
                       c2 * b0 * b0 * b1 + b0 * b0 * b0;
        cert[0] = b2cu * c0 * c0 + q1 * c0 + q0;
    } else if (degA == 0) {
        long long d = q.A[0];
        long long r = (long long)std::llround(std::sqrt((double)d));
        bool square = d > 0 && r * r == d;
        if (!square && degB > 1) return MemberOutcome{false, false, 5};
        long long bb[5];
        conv(q.B, 3, q.B, 3, bb);
        for (int i = 0; i < 5; ++i)
            cert[i] = bb[i] - (i < 4 ? 4 * d * q.C[i] : 0);
    } else if (degA == 1 && b2 == 0 && c2 == 0) {
        // resultant of (B^2 - 4AC, X^2 - A) normalized by the unit a1; the
        // scalar does not change the factor count
        long long a1 = q.A[1], a0 = q.A[0];
        long long a1sq = a1 * a1, a1cu = a1sq * a1, a0sq = a0 * a0;
        cert[8] = -4;
        cert[6] = 12 * a0;
        cert[4] = -12 * a0sq + a1 * b1 * b1 - 4 * a1sq * c1;
        cert[2] = 4 * a0 * a0sq + 2 * a1sq * b0 * b1 - 2 * a0 * a1 * b1 * b1 -
                  4 * a1cu * c0 + 4 * a0 * a1sq * c1;
        long long w = a1 * b0 - a0 * b1;
        cert[0] = a1 * w * w;
    } else {
        // deg A = 2, or a linear A next to coefficients the closed octic
        // form does not cover
        return outcome_reference(q);
    }

    int cd = top(cert, 9);
    if (cd < 0) return outcome_reference(q);  // excluded above; keep parity
    int om = cd == 0 ? 0 : omega_int64(cert, cd);
    return MemberOutcome{false, false, std::min(5, std::max(0, om - 1))};
}

bool coeffs_from_curve(const FamilyCurve& fc, Coeffs& out) {
    auto grab = [](const IntPoly& P, long long* dst, int n) {
        if (P.degree() >= n) return false;
        for (int i = 0; i < n; ++i) {
            Int c = P.coeff((size_t)i);
            if (c > INT64_MAX / 4 || c < INT64_MIN / 4) return false;
            dst[i] = (long long)c;
        }
        return true;
    };
    return grab(fc.A, out.A, 3) && grab(fc.B, out.B, 3) && grab(fc.C, out.C, 4);
}

// ---------------------------------------------------------------------------
// Measuring.

struct Tally {
    long long singular = 0, isotrivial = 0, positive = 0, bound_sum = 0;
    void add(const MemberOutcome& o) {
        if (o.singular) {
            ++singular;
        } else if (o.isotrivial) {
            ++isotrivial;
        } else {
            bound_sum += o.bound;
            if (o.bound >= 1) ++positive;
        }
    }
    void merge(const Tally& t) {
        singular += t.singular;
        isotrivial += t.isotrivial;
        positive += t.positive;
        bound_sum += t.bound_sum;
    }
};

DensityRecord finish_record(const FamilySpec& spec, const Tally& t,
                            long long examined, double seconds) {
    DensityRecord rec;
    rec.spec = spec;
    rec.total_box = examined;
    rec.singular = t.singular;
    rec.isotrivial = t.isotrivial;
    rec.family_size = examined - t.singular;
    rec.positive_bound = t.positive;
    rec.avg_bound_num = t.bound_sum;
    long long den = rec.family_size - rec.isotrivial;
    rec.avg_bound_den = den > 0 ? den : 1;
    rec.wall_time_s = seconds;
    return rec;
}

}  // namespace

std::string family_spec_name(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::S0: return "s0";
        case FamilyKind::Ssquare: return "ssquare";
        case FamilyKind::Sell: return "sell";
        case FamilyKind::Smn:
            return "s" + std::to_string(spec.m) + std::to_string(spec.n);
    }
    return "?";
}

std::optional<FamilySpec> family_spec_from_name(std::string_view name,
                                                long long H) {
    FamilySpec spec;
    spec.H = H;
    if (name == "s0") {
        spec.kind = FamilyKind::S0;
    } else if (name == "ssquare") {
        spec.kind = FamilyKind::Ssquare;
    } else if (name == "sell") {
        spec.kind = FamilyKind::Sell;
    } else if (name.size() == 3 && name[0] == 's' && name[1] >= '0' &&
               name[1] <= '2' && name[2] >= '0' && name[2] <= '2') {
        spec.kind = FamilyKind::Smn;
        spec.m = name[1] - '0';
        spec.n = name[2] - '0';
    } else {
        return std::nullopt;
    }
    return spec;
}

long long family_box_size(const FamilySpec& spec) {
    return box_total(box_shape(spec));
}

std::vector<long long> family_box_half_sides(const FamilySpec& spec) {
    Box b = box_shape(spec);
    return std::vector<long long>(b.off, b.off + b.dims);
}

FamilyCurve family_member(const FamilySpec& spec, long long index) {
    Box b = box_shape(spec);
    if (index < 0 || index >= box_total(b))
        throw std::invalid_argument("family_member: index out of range");
    Coeffs q;
    decode_coeffs(spec, b, index, q);
    return curve_from_coeffs(q);
}

MemberOutcome census_outcome(const FamilyCurve& curve) {
    Coeffs q;
    if (!coeffs_from_curve(curve, q)) {
        RankBoundResult r = rank_upper_bound(curve);
        return MemberOutcome{r.singular, r.isotrivial,
                             r.bound ? *r.bound : 0};
    }
    return outcome_int64(q);
}

double density(const DensityRecord& rec) {
    long long den = rec.family_size - rec.isotrivial;
    return den > 0 ? (double)rec.positive_bound / (double)den : 0.0;
}

DensityRecord measure_density(const FamilySpec& spec, long long max_box) {
    Box b = box_shape(spec);
    long long total = box_total(b);
    if (total > max_box)
        throw budget_error("census: box of " + std::to_string(total) +
                           " tuples exceeds the budget of " +
                           std::to_string(max_box));
    probe_contexts();  // build the shared tables before the workers start
    auto t0 = std::chrono::steady_clock::now();
    int workers = default_workers();
    std::vector<Tally> parts((size_t)workers);
    parallel_ranges((uint64_t)total, workers,
                    [&](uint64_t lo, uint64_t hi, int part) {
                        Tally t;
                        Coeffs q;
                        for (uint64_t i = lo; i < hi; ++i) {
                            decode_coeffs(spec, b, (long long)i, q);
                            t.add(outcome_int64(q));
                        }
                        parts[(size_t)part] = t;
                    });
    Tally t;
    for (const Tally& part : parts) t.merge(part);
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return finish_record(spec, t, total, seconds);
}

DensityRecord measure_density_sampled(const FamilySpec& spec, long long n,
                                      uint64_t seed) {
    if (n <= 0)
        throw std::invalid_argument("census: sample size must be positive");
    Box b = box_shape(spec);
    long long total = box_total(b);
    probe_contexts();
    auto t0 = std::chrono::steady_clock::now();
    int workers = default_workers();
    std::vector<Tally> parts((size_t)workers);
    parallel_ranges((uint64_t)n, workers,
                    [&](uint64_t lo, uint64_t hi, int part) {
                        Tally t;
                        Coeffs q;
                        for (uint64_t ctr = lo; ctr < hi; ++ctr) {
                            long long idx = (long long)uniform_index(
                                seed, ctr, (uint64_t)total);
                            decode_coeffs(spec, b, idx, q);
                            t.add(outcome_int64(q));
                        }
                        parts[(size_t)part] = t;
                    });
    Tally t;
    for (const Tally& part : parts) t.merge(part);
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    DensityRecord rec = finish_record(spec, t, n, seconds);
    rec.sampled = true;
    rec.sample_n = n;
    rec.seed = seed;
    long long den = rec.family_size - rec.isotrivial;
    if (den > 0) {
        double phat = (double)rec.positive_bound / (double)den;
        rec.ci_halfwidth = 1.959964 * std::sqrt(phat * (1.0 - phat) / den);
    }
    return rec;
}

double fit_exponent(const std::vector<DensityRecord>& records) {
    std::vector<std::pair<double, double>> pts;
    std::set<long long> heights;
    for (const DensityRecord& r : records) {
        if (r.positive_bound <= 0 || r.family_size <= 0 || r.spec.H < 1)
            continue;
        double d = (double)r.positive_bound / (double)r.family_size;
        pts.emplace_back(std::log((double)r.spec.H), std::log(d));
        heights.insert(r.spec.H);
    }
    if (pts.size() < 3 || heights.size() < 3)
        throw std::invalid_argument(
            "fit_exponent: need positive densities at >= 3 distinct H");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double k = (double)pts.size();
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void write_density_csv(std::ostream& os,
                       const std::vector<DensityRecord>& records,
                       bool with_timing) {
    os << "kind,H,mode,total_box,singular,isotrivial,family_size,"
          "positive_bound,avg_bound_num,avg_bound_den,ci_halfwidth,"
          "wall_time_s\n";
    for (const DensityRecord& r : records) {
        os << family_spec_name(r.spec) << ',' << r.spec.H << ','
           << (r.sampled ? "sampled" : "exact") << ',' << r.total_box << ','
           << r.singular << ',' << r.isotrivial << ',' << r.family_size << ','
           << r.positive_bound << ',' << r.avg_bound_num << ','
           << r.avg_bound_den << ',' << format_double(r.ci_halfwidth) << ','
           << format_double(with_timing ? r.wall_time_s : 0.0) << '\n';
    }
}

void write_density_json(std::ostream& os,
                        const std::vector<DensityRecord>& records,
                        bool with_timing) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const DensityRecord& r : records) {
        nlohmann::ordered_json row;
        row["kind"] = family_spec_name(r.spec);
        row["H"] = r.spec.H;
        row["mode"] = r.sampled ? "sampled" : "exact";
        row["total_box"] = r.total_box;
        row["singular"] = r.singular;
        row["isotrivial"] = r.isotrivial;
        row["family_size"] = r.family_size;
        row["positive_bound"] = r.positive_bound;
        row["avg_bound_num"] = r.avg_bound_num;
        row["avg_bound_den"] = r.avg_bound_den;
        row["ci_halfwidth"] = r.ci_halfwidth;
        row["wall_time_s"] = with_timing ? r.wall_time_s : 0.0;
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << '\n';
}

}  // namespace qtrank

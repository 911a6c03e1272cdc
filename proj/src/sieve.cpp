#include <qtrank/sieve.hpp>

#include <qtrank/bipoly.hpp>
#include <qtrank/fpfactor.hpp>
#include <qtrank/fppoly.hpp>
#include <qtrank/qfactor.hpp>
#include <qtrank/util.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtrank {

namespace {

std::vector<long long> primes_up_to(long long z) {
    if (z > 100000000LL)
        throw budget_error("admitted_primes: cutoff " + std::to_string(z) +
                           " exceeds the 10^8 sieve budget");
    std::vector<long long> out;
    if (z < 2) return out;
    std::vector<char> composite((size_t)z + 1, 0);
    for (long long p = 2; p <= z; ++p) {
        if (composite[(size_t)p]) continue;
        out.push_back(p);
        for (long long q = p * p; q <= z; q += p) composite[(size_t)q] = 1;
    }
    return out;
}

constexpr long long kInverseDensity[6] = {4, 4, 8, 2, 4, 8};

bool needs_cube_permutation(SystemKind k) {
    return k == SystemKind::Sys1 || k == SystemKind::Sys3 ||
           k == SystemKind::M11 || k == SystemKind::M21;
}

IntPoly four_ac_discriminant(const FamilyCurve& m) {
    return sub(mul(m.B, m.B), scalar_mul(mul(m.A, m.C), 4));
}

}  // namespace

bool prime_set_admits(const PrimeClassSet& set, long long p) {
    if (p < set.min_p) return false;
    if (set.modulus <= 1) return true;
    long long r = p % set.modulus;
    return std::find(set.residues.begin(), set.residues.end(), r) !=
           set.residues.end();
}

std::vector<long long> admitted_primes(const PrimeClassSet& set, long long z) {
    std::vector<long long> out;
    for (long long p : primes_up_to(z))
        if (prime_set_admits(set, p)) out.push_back(p);
    return out;
}

long long choose_z(long long H) {
    if (H < 16)
        throw std::invalid_argument("choose_z: H must be at least 16");
    double h = (double)H;
    double v = std::cbrt(h * std::log(h) * std::log(std::log(h)));
    return (long long)std::ceil(v);
}

double turan_bound(const SieveParams& params) {
    if (params.box.empty())
        throw std::invalid_argument("turan_bound: empty box");
    for (double h : params.box)
        if (!(h > 0.0) || !std::isfinite(h))
            throw std::invalid_argument(
                "turan_bound: box bounds must be positive");
    if (!(params.delta >= 1.0) || !std::isfinite(params.delta))
        throw std::invalid_argument("turan_bound: delta must be >= 1");
    if (params.z < 2)
        throw std::invalid_argument("turan_bound: z must be at least 2");
    double hmin = *std::min_element(params.box.begin(), params.box.end());
    if (!params.allow_large_z && (double)params.z * (double)params.z > hmin)
        throw std::invalid_argument("turan_bound: z exceeds sqrt(min H)");

    std::vector<long long> primes = admitted_primes(params.primes, params.z);
    if (primes.empty())
        throw std::invalid_argument(
            "turan_bound: no admitted prime up to z, the density sum "
            "degenerates to zero");

    double big_x = 1.0;
    for (double h : params.box) big_x *= h;
    double inv_sum = 0.0, p_sum = 0.0;
    for (long long p : primes) {
        inv_sum += 1.0 / (double)p;
        p_sum += (double)p;
    }
    double m = (double)primes.size();
    double s = m / params.delta;
    // sum_p Rp and sum_{p,q} Rpq with the pair sum expanded: each of the
    // two X/p shapes appears m times per fixed partner, the pq shape
    // factorizes into (sum p)^2.
    double sum_rp = params.c1 * big_x * inv_sum +
                    params.c2 * big_x * p_sum / hmin;
    double sum_rpq = 2.0 * params.c1 * big_x * m * inv_sum +
                     params.c2 * big_x * p_sum * p_sum / hmin;
    return big_x / s + 2.0 * sum_rp / s + sum_rpq / (s * s);
}

FamilySpec family_for_system(SystemKind kind, long long H) {
    FamilySpec spec;
    spec.H = H;
    switch (kind) {
        case SystemKind::Sys1:
            spec.kind = FamilyKind::S0;
            break;
        case SystemKind::Sys2:
            spec.kind = FamilyKind::Ssquare;
            break;
        case SystemKind::Sys3:
            spec.kind = FamilyKind::Sell;
            break;
        case SystemKind::M11:
            spec.kind = FamilyKind::Smn;
            spec.m = 1;
            spec.n = 1;
            break;
        case SystemKind::M12:
            spec.kind = FamilyKind::Smn;
            spec.m = 1;
            spec.n = 2;
            break;
        case SystemKind::M21:
            spec.kind = FamilyKind::Smn;
            spec.m = 2;
            spec.n = 1;
            break;
    }
    return spec;
}

long long system_inverse_density(SystemKind kind) {
    return kInverseDensity[static_cast<int>(kind)];
}

SieveParams sieve_params_for(SystemKind kind, long long H, long long z,
                             double c1, double c2) {
    SieveParams params;
    for (long long h : family_box_half_sides(family_for_system(kind, H)))
        params.box.push_back((double)h);
    params.delta = (double)kInverseDensity[static_cast<int>(kind)];
    if (needs_cube_permutation(kind)) {
        params.primes.modulus = 3;
        params.primes.residues = {2};
        params.primes.density_c = 0.5;
        params.primes.min_p = 5;
    } else {
        params.primes.modulus = 2;
        params.primes.residues = {1};
        params.primes.density_c = 1.0;
        params.primes.min_p = 3;
    }
    params.z = z;
    params.c1 = c1;
    params.c2 = c2;
    return params;
}

std::optional<double> theoretical_bound_for(SystemKind kind, long long H,
                                            long long z, double c1,
                                            double c2) {
    if (z < 2) return std::nullopt;
    SieveParams params = sieve_params_for(kind, H, z, c1, c2);
    double hmin = *std::min_element(params.box.begin(), params.box.end());
    if ((double)z * (double)z > hmin) return std::nullopt;
    if (admitted_primes(params.primes, z).empty()) return std::nullopt;
    return turan_bound(params);
}

IntPoly sieve_certificate(SystemKind kind, const FamilyCurve& member) {
    switch (kind) {
        case SystemKind::Sys1:
        case SystemKind::M11:
            if (!member.A.is_zero())
                throw std::invalid_argument(
                    "sieve_certificate: this kind requires A = 0");
            return m_certificate(member.B, member.C, 2);
        case SystemKind::Sys2:
        case SystemKind::M12:
            if (member.A.degree() > 0)
                throw std::invalid_argument(
                    "sieve_certificate: this kind requires constant A");
            return four_ac_discriminant(member);
        case SystemKind::Sys3:
        case SystemKind::M21:
            if (member.A.degree() > 1)
                throw std::invalid_argument(
                    "sieve_certificate: this kind requires deg A <= 1");
            if (member.A.degree() != 1) return IntPoly();
            return m_certificate(four_ac_discriminant(member), member.A, 4);
    }
    throw std::logic_error("sieve_certificate: unknown kind");
}

bool irreducible_keeping_degree_mod(const IntPoly& cert, long long p) {
    int d = cert.degree();
    if (d < 1) return false;
    FpPoly r = reduce_mod_p(cert, (uint32_t)p);
    if (r.degree() != d) return false;
    return is_irreducible(r);
}

SieveReport empirical_sieve(SystemKind kind, long long H, long long z,
                            bool with_exact, long long max_box) {
    if (z < 0)
        throw std::invalid_argument("empirical_sieve: z must be nonnegative");
    FamilySpec fam = family_for_system(kind, H);
    long long box = family_box_size(fam);
    if (box > max_box)
        throw budget_error("sieve: box of " + std::to_string(box) +
                           " tuples exceeds the budget of " +
                           std::to_string(max_box));

    std::vector<long long> primes;
    for (long long p : primes_up_to(z))
        if (system_admissible_prime(kind, (uint32_t)p)) primes.push_back(p);

    struct Tally {
        long long empirical = 0;
        long long exact = 0;
    };
    int workers = default_workers();
    std::vector<Tally> parts((size_t)workers);
    parallel_ranges((size_t)box, workers, [&](size_t lo, size_t hi, int w) {
        Tally& t = parts[(size_t)w];
        for (size_t i = lo; i < hi; ++i) {
            FamilyCurve member = family_member(fam, (long long)i);
            IntPoly cert = sieve_certificate(kind, member);
            bool escapes = false;
            for (long long p : primes)
                if (irreducible_keeping_degree_mod(cert, p)) {
                    escapes = true;
                    break;
                }
            if (!escapes) ++t.empirical;
            if (with_exact) {
                // A degree-keeping irreducible reduction already certifies
                // irreducibility over Q, so only the sieved-in tuples need
                // the exact factor count.
                bool irreducible_q = escapes;
                if (!irreducible_q && cert.degree() >= 1) {
                    irreducible_q =
                        irreducible_over_q_fast(cert, 5) ==
                            IrrFast::Irreducible ||
                        omega_q(cert) == 1;
                }
                if (!irreducible_q) ++t.exact;
            }
        }
    });

    SieveReport rep;
    rep.kind = kind;
    rep.H = H;
    rep.z = z;
    rep.box_size = box;
    long long empirical = 0, exact = 0;
    for (const Tally& t : parts) {
        empirical += t.empirical;
        exact += t.exact;
    }
    rep.empirical_b_pz = empirical;
    if (with_exact) {
        if (exact > empirical)
            throw std::logic_error(
                "empirical_sieve: exact count exceeded the modular count");
        rep.exact_b = exact;
    }
    rep.theoretical_bound = theoretical_bound_for(kind, H, z);
    return rep;
}

void write_sieve_report_json(std::ostream& os, const SieveReport& report) {
    nlohmann::ordered_json j;
    j["kind"] = system_kind_name(report.kind);
    j["H"] = report.H;
    j["z"] = report.z;
    j["theoretical_bound"] = report.theoretical_bound
                                 ? nlohmann::ordered_json(*report.theoretical_bound)
                                 : nlohmann::ordered_json(nullptr);
    j["empirical_b_pz"] = report.empirical_b_pz
                              ? nlohmann::ordered_json(*report.empirical_b_pz)
                              : nlohmann::ordered_json(nullptr);
    j["exact_b"] = report.exact_b ? nlohmann::ordered_json(*report.exact_b)
                                  : nlohmann::ordered_json(nullptr);
    j["box_size"] = report.box_size;
    os << j.dump(2) << '\n';
}

}  // namespace qtrank

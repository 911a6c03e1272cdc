#include <qtrank/qfactor.hpp>

#include <qtrank/fpfactor.hpp>
#include <qtrank/fppoly.hpp>
#include <qtrank/util.hpp>

#include <algorithm>
#include <stdexcept>

namespace qtrank {

namespace {

IntPoly lift_canonical(const FpPoly& f) {
    std::vector<Int> c(f.c.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = f.c[i];
    return IntPoly(std::move(c));
}

// coefficient-wise canonical reduction into [0, m)
IntPoly mod_m(const IntPoly& f, const Int& m) {
    std::vector<Int> c(f.coeffs());
    for (auto& v : c) {
        v %= m;
        if (v < 0) v += m;
    }
    return IntPoly(std::move(c));
}

// extended Euclid over F_p: s*g + t*h = 1 for coprime g, h
std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& g, const FpPoly& h) {
    FpPoly r0 = g, r1 = h;
    FpPoly s0 = fp_const(g.p, 1), s1 = fp_zero(g.p);
    FpPoly t0 = fp_zero(g.p), t1 = fp_const(g.p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = fp_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw std::logic_error("fp_bezout: inputs not coprime");
    uint32_t inv = fp_inv(r0.leading(), g.p);
    return {fp_scalar_mul(s0, inv), fp_scalar_mul(t0, inv)};
}

// Linear Hensel step chain: given monic f and coprime monic g0*h0 = f mod p,
// produce monic G, H with f = G*H mod p^K, G = g0 mod p.
std::pair<IntPoly, IntPoly> lift_pair(const IntPoly& f, const FpPoly& g0,
                                      const FpPoly& h0, uint32_t p, int K) {
    auto [s, t] = fp_bezout(g0, h0);
    IntPoly G = lift_canonical(g0), H = lift_canonical(h0);
    Int m = p;
    for (int k = 1; k < K; ++k) {
        IntPoly E = sub(f, mul(G, H));
        std::vector<Int> dc(E.coeffs());
        for (auto& v : dc) {
            Int q = v / m;
            if (v % m != 0) throw std::logic_error("lift_pair: drift off modulus");
            v = q;
        }
        FpPoly dbar = reduce_mod_p(IntPoly(std::move(dc)), p);
        FpPoly u = fp_mod(fp_mul(t, dbar), g0);
        FpPoly v = fp_divexact(fp_sub(dbar, fp_mul(u, h0)), g0);
        G = add(G, scalar_mul(lift_canonical(u), m));
        H = add(H, scalar_mul(lift_canonical(v), m));
        m *= p;
    }
    return {G, H};
}

// Lifts the full modular factor list of monic f to p^K (f = prod mod p^K).
void hensel_list(const IntPoly& f, const std::vector<FpPoly>& facs, uint32_t p,
                 int K, std::vector<IntPoly>& out) {
    if (facs.size() == 1) {
        out.push_back(mod_m(f, [&] {
            Int m = 1;
            for (int i = 0; i < K; ++i) m *= p;
            return m;
        }()));
        return;
    }
    size_t half = facs.size() / 2;
    std::vector<FpPoly> left(facs.begin(), facs.begin() + static_cast<long>(half));
    std::vector<FpPoly> right(facs.begin() + static_cast<long>(half), facs.end());
    FpPoly g0 = fp_const(p, 1), h0 = fp_const(p, 1);
    for (const auto& x : left) g0 = fp_mul(g0, x);
    for (const auto& x : right) h0 = fp_mul(h0, x);
    auto [G, H] = lift_pair(f, g0, h0, p, K);
    hensel_list(G, left, p, K, out);
    hensel_list(H, right, p, K, out);
}

Int ceil_sqrt(const Int& n) {
    Int r = sqrt(n);
    if (r * r < n) ++r;
    return r;
}

Int binom(int n, int k) {
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Mignotte-style bound on coefficients of any monic factor of monic f.
Int factor_coeff_bound(const IntPoly& f) {
    Int s2 = 0;
    for (const auto& c : f.coeffs()) s2 += c * c;
    int n = f.degree();
    return binom(n, n / 2) * ceil_sqrt(s2);
}

IntPoly symmetric_lift(const IntPoly& f, const Int& m) {
    std::vector<Int> c(f.coeffs());
    Int half = m / 2;
    for (auto& v : c)
        if (v > half) v -= m;
    return IntPoly(std::move(c));
}

// Factor count and factors for a monic squarefree integer polynomial of
// degree >= 2, by lift-and-recombine.
std::vector<IntPoly> factor_monic_squarefree(const IntPoly& F) {
    int n = F.degree();
    uint32_t p = 3;
    FpPoly Fbar{0, {}};
    for (;;) {
        if (!is_prime_u64(p)) {
            ++p;
            continue;
        }
        Fbar = reduce_mod_p(F, p);
        if (Fbar.degree() == n && fp_gcd(Fbar, fp_derivative(Fbar)).degree() == 0) break;
        ++p;
    }
    FactorMultiset fm = factor(Fbar);
    std::vector<FpPoly> mod_facs;
    for (const auto& [g, mult] : fm.factors) mod_facs.push_back(g);  // mult == 1 always here
    if (mod_facs.size() == 1) return {F};

    Int bound = 2 * factor_coeff_bound(F) + 1;
    int K = 1;
    Int pk = p;
    while (pk < bound) {
        pk *= p;
        ++K;
    }
    std::vector<IntPoly> lifted;
    hensel_list(mod_m(F, pk), mod_facs, p, K, lifted);

    std::vector<IntPoly> found;
    IntPoly rest = F;
    size_t card = 1;
    while (2 * card <= lifted.size()) {
        // combinations of the current lifted list, size card
        std::vector<size_t> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = i;
        bool removed = false;
        for (;;) {
            IntPoly cand = IntPoly::constant(1);
            for (size_t i : idx) cand = mod_m(mul(cand, lifted[i]), pk);
            cand = symmetric_lift(cand, pk);
            if (divides(cand, rest)) {
                found.push_back(cand);
                rest = divexact(rest, cand);
                std::vector<IntPoly> keep;
                for (size_t i = 0; i < lifted.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        keep.push_back(lifted[i]);
                lifted = std::move(keep);
                removed = true;
                break;
            }
            // next combination
            size_t i = card;
            while (i-- > 0) {
                if (idx[i] != i + lifted.size() - card) {
                    ++idx[i];
                    for (size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) goto combos_done;
            }
        }
    combos_done:
        if (!removed) ++card;
    }
    if (rest.degree() > 0) found.push_back(rest);
    return found;
}

std::vector<IntPoly> factors_squarefree_impl(const IntPoly& s_in, bool allow_even);

// Number of irreducible factors of q(X^2) for q irreducible: 1 or 2; returns
// the factors themselves.
std::vector<IntPoly> refine_even_factor(const IntPoly& q) {
    return factors_squarefree_impl(inflate2(q), false);
}

std::vector<IntPoly> factors_squarefree_impl(const IntPoly& s_in, bool allow_even) {
    IntPoly s = primitive_part(s_in);
    if (s.is_zero()) throw std::invalid_argument("irreducible_factors_squarefree: zero input");
    if (s.leading() < 0) s = -s;
    int n = s.degree();
    if (n == 0) return {};
    if (n == 1) return {s};

    if (allow_even && is_even_poly(s)) {
        std::vector<IntPoly> out;
        for (const IntPoly& q : factors_squarefree_impl(deflate2(s), true)) {
            if (q.degree() == 0) continue;
            for (IntPoly& g : refine_even_factor(q)) out.push_back(std::move(g));
        }
        return out;
    }

    // scale monic: factors of F(X) = L^{n-1} s(X/L) map back via g(LX)
    Int L = s.leading();
    std::vector<IntPoly> raw;
    if (L == 1) {
        raw = factor_monic_squarefree(s);
    } else {
        // coeff_i of F is L^{n-1-i} * s_i, and F is monic
        std::vector<Int> fc(s.coeffs());
        Int pw = 1;
        for (int i = n - 1; i >= 0; --i) {
            fc[static_cast<size_t>(i)] *= pw;
            pw *= L;
        }
        fc[static_cast<size_t>(n)] = 1;
        raw = factor_monic_squarefree(IntPoly(std::move(fc)));
        for (IntPoly& g : raw) {
            std::vector<Int> gc(g.coeffs());
            Int q = 1;
            for (size_t i = 0; i < gc.size(); ++i) {
                gc[i] *= q;
                q *= L;
            }
            g = primitive_part(IntPoly(std::move(gc)));
            if (g.leading() < 0) g = -g;
        }
    }
    std::sort(raw.begin(), raw.end(), [](const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return raw;
}

}  // namespace

std::vector<IntPoly> irreducible_factors_squarefree(const IntPoly& s) {
    return factors_squarefree_impl(s, true);
}

int omega_q(const IntPoly& P) {
    if (P.is_zero()) throw std::invalid_argument("omega_q: zero polynomial");
    IntPoly f = primitive_part(P);
    if (f.leading() < 0) f = -f;
    if (f.degree() == 0) return 0;

    // Yun squarefree split: f = prod h_i^i with h_i squarefree, coprime
    int total = 0;
    IntPoly u = poly_gcd(f, derivative(f));
    IntPoly v = divexact(f, u);
    IntPoly w = divexact(derivative(f), u);
    int i = 1;
    while (v.degree() > 0) {
        IntPoly h = poly_gcd(v, sub(w, derivative(v)));
        if (h.degree() > 0)
            total += i * static_cast<int>(irreducible_factors_squarefree(h).size());
        IntPoly z = sub(w, derivative(v));
        v = divexact(v, h);
        w = divexact(z, h);
        ++i;
    }
    return total;
}

IrrFast irreducible_over_q_fast(const IntPoly& P, int prime_budget) {
    if (P.is_zero()) throw std::invalid_argument("irreducible_over_q_fast: zero polynomial");
    IntPoly s = primitive_part(P);
    int n = s.degree();
    if (n < 1) return IrrFast::Unknown;
    uint32_t p = 3;
    for (int tried = 0; tried < prime_budget; ++p) {
        if (!is_prime_u64(p)) continue;
        ++tried;
        if (s.leading() % p == 0) continue;
        FpPoly red = reduce_mod_p(s, p);
        if (red.degree() == n && is_irreducible(red)) return IrrFast::Irreducible;
    }
    return IrrFast::Unknown;
}

}  // namespace qtrank

#include <qtrank/fpfactor.hpp>
#include <qtrank/util.hpp>

#include <algorithm>
#include <stdexcept>

namespace qtrank {

namespace {

// f with f' == 0 is a polynomial in X^p and equals g(X)^p over F_p; this
// returns g (coefficients at indices divisible by p, unchanged since a^p = a).
FpPoly deflate_p(const FpPoly& f) {
    std::vector<uint32_t> c(f.c.size() / f.p + 1, 0);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        if (i % f.p != 0) throw std::logic_error("deflate_p: not a p-th power");
        c[i / f.p] = f.c[i];
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    return FpPoly{f.p, std::move(c)};
}

struct SplitRng {
    uint64_t state;
    explicit SplitRng(const FpPoly& f) {
        state = 0x8a5cd789635d2dffULL ^ f.p;
        for (uint32_t v : f.c) state = splitmix64(state ^ v);
    }
    uint64_t next() { return state = splitmix64(state); }
};

// Equal-degree split of a monic squarefree u whose irreducible factors all
// have degree d. Appends the factors to out.
void edf(const FpPoly& u, int d, std::vector<FpPoly>& out) {
    if (u.degree() == d) {
        out.push_back(u);
        return;
    }
    uint32_t p = u.p;
    unsigned __int128 e = 1;
    for (int i = 0; i < d; ++i) e *= p;
    e = (e - 1) / 2;
    SplitRng rng(u);
    FpPoly one = fp_const(p, 1);
    for (;;) {
        std::vector<uint32_t> rc(static_cast<size_t>(u.degree()), 0);
        for (auto& v : rc) v = static_cast<uint32_t>(rng.next() % p);
        FpPoly r = fp_poly(p, std::move(rc));
        if (r.is_zero()) continue;
        FpPoly s = fp_powmod(r, e, u);
        FpPoly g = fp_gcd(fp_sub(s, one), u);
        if (g.degree() > 0 && g.degree() < u.degree()) {
            edf(g, d, out);
            edf(fp_divexact(u, g), d, out);
            return;
        }
    }
}

// Distinct-degree split of a monic squarefree g; factors go to out.
void ddf(FpPoly g, std::vector<FpPoly>& out) {
    uint32_t p = g.p;
    FpPoly x = fp_x(p);
    FpPoly h = fp_mod(x, g);
    int d = 0;
    while (g.degree() >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(h, p, g);
        FpPoly u = fp_gcd(fp_sub(h, x), g);
        if (u.degree() > 0) {
            edf(u, d, out);
            g = fp_divexact(g, u);
            if (g.degree() == 0) return;
            h = fp_mod(h, g);
        }
    }
    if (g.degree() > 0) out.push_back(g);
}

// Splits monic f into (squarefree, multiplicity) parts; multiplicities carry
// the p-th power factor `mult` from recursion.
void squarefree_parts(const FpPoly& f, int mult,
                      std::vector<std::pair<FpPoly, int>>& parts) {
    if (f.degree() < 1) return;
    FpPoly fd = fp_derivative(f);
    if (fd.is_zero()) {
        squarefree_parts(deflate_p(f), mult * static_cast<int>(f.p), parts);
        return;
    }
    FpPoly c = fp_gcd(f, fd);
    FpPoly w = fp_divexact(f, c);
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = fp_gcd(w, c);
        FpPoly z = fp_divexact(w, y);
        if (z.degree() > 0) parts.emplace_back(std::move(z), mult * i);
        w = std::move(y);
        c = fp_divexact(c, w);
        ++i;
    }
    if (c.degree() > 0)
        squarefree_parts(deflate_p(c), mult * static_cast<int>(f.p), parts);
}

bool factor_order(const std::pair<FpPoly, int>& a, const std::pair<FpPoly, int>& b) {
    if (a.first.c.size() != b.first.c.size()) return a.first.c.size() < b.first.c.size();
    return a.first.c < b.first.c;
}

}  // namespace

bool is_irreducible(const FpPoly& f) {
    int n = f.degree();
    if (n < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
    if (n == 1) return true;
    uint32_t p = f.p;
    FpPoly x = fp_x(p);
    FpPoly h = fp_mod(x, f);
    for (int d = 1; 2 * d <= n; ++d) {
        if (d == 1 && p <= 128) {
            // degree-1 step by direct root scan, cheaper than a Frobenius power
            for (uint32_t v = 0; v < p; ++v)
                if (fp_eval(f, v) == 0) return false;
            h = fp_powmod(h, p, f);
            continue;
        }
        h = fp_powmod(h, p, f);
        if (fp_gcd(fp_sub(h, x), f).degree() != 0) return false;
    }
    return true;
}

FactorMultiset factor(const FpPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    FactorMultiset out;
    out.p = f.p;
    out.unit = f.leading();
    if (f.degree() == 0) return out;

    std::vector<std::pair<FpPoly, int>> parts;
    squarefree_parts(fp_monic(f), 1, parts);
    for (const auto& [part, mult] : parts) {
        std::vector<FpPoly> irr;
        ddf(part, irr);
        for (auto& g : irr) out.factors.emplace_back(std::move(g), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), factor_order);
    // equal factors can only arise from distinct squarefree parts, never do;
    // merge defensively so the multiset invariant is by-construction
    std::vector<std::pair<FpPoly, int>> merged;
    for (auto& fm : out.factors) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(std::move(fm));
    }
    out.factors = std::move(merged);
    return out;
}

int omega_p(const FpPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("omega_p: zero polynomial");
    if (f.degree() == 0) return 0;
    int total = 0;
    for (const auto& [g, m] : factor(f).factors) total += m;
    return total;
}

}  // namespace qtrank

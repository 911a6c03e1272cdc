#include "qtrank/intpoly.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace qtrank {

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly::IntPoly(std::initializer_list<long long> cs) {
    c_.reserve(cs.size());
    for (long long v : cs) c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::constant(Int v) {
    IntPoly r;
    if (v != 0) r.c_.push_back(std::move(v));
    return r;
}

IntPoly IntPoly::x_power(int k) {
    IntPoly r;
    r.c_.assign(static_cast<size_t>(k) + 1, Int(0));
    r.c_.back() = 1;
    return r;
}

const Int& IntPoly::coeff(size_t i) const {
    static const Int zero(0);
    return i < c_.size() ? c_[i] : zero;
}

const Int& IntPoly::leading() const {
    if (c_.empty()) throw std::invalid_argument("leading(): zero polynomial");
    return c_.back();
}

IntPoly IntPoly::operator-() const {
    IntPoly r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& v = c_[static_cast<size_t>(i)];
        if (v == 0) continue;
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        Int a = abs(v);
        if (a != 1 || i == 0) os << a.str();
        if (i > 0) {
            os << "X";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.coeffs().size(), b.coeffs().size()), Int(0));
    for (size_t i = 0; i < a.coeffs().size(); ++i) c[i] = a.coeffs()[i];
    for (size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
    return IntPoly(std::move(c));
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.coeffs().size(), b.coeffs().size()), Int(0));
    for (size_t i = 0; i < a.coeffs().size(); ++i) c[i] = a.coeffs()[i];
    for (size_t i = 0; i < b.coeffs().size(); ++i) c[i] -= b.coeffs()[i];
    return IntPoly(std::move(c));
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.coeffs().size() + b.coeffs().size() - 1, Int(0));
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
    return IntPoly(std::move(c));
}

IntPoly scalar_mul(const IntPoly& a, const Int& k) {
    if (k == 0) return IntPoly();
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) v *= k;
    return IntPoly(std::move(c));
}

Int eval(const IntPoly& a, const Int& x) {
    Int r = 0;
    for (size_t i = a.coeffs().size(); i-- > 0;) r = r * x + a.coeffs()[i];
    return r;
}

Int height(const IntPoly& a) {
    Int h = 0;
    for (const auto& v : a.coeffs()) {
        Int w = abs(v);
        if (w > h) h = w;
    }
    return h;
}

IntPoly derivative(const IntPoly& a) {
    if (a.coeffs().size() <= 1) return IntPoly();
    std::vector<Int> c(a.coeffs().size() - 1);
    for (size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = a.coeffs()[i] * Int(i);
    return IntPoly(std::move(c));
}

Int content(const IntPoly& a) {
    Int g = 0;
    for (const auto& v : a.coeffs()) {
        g = gcd(g, v);
        if (g == 1) break;
    }
    return abs(g);
}

IntPoly primitive_part(const IntPoly& a) {
    if (a.is_zero()) return a;
    Int ct = content(a);
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) v /= ct;
    return IntPoly(std::move(c));
}

IntPoly divexact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("divexact: division by zero polynomial");
    if (a.is_zero()) return IntPoly();
    int da = a.degree(), db = b.degree();
    if (da < db) throw std::invalid_argument("divexact: not divisible (degree)");
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> q(static_cast<size_t>(da - db) + 1, Int(0));
    for (int k = da - db; k >= 0; --k) {
        Int& lead = rem[static_cast<size_t>(k + db)];
        if (lead % b.leading() != 0)
            throw std::invalid_argument("divexact: not divisible (coefficient)");
        Int qk = lead / b.leading();
        if (qk != 0) {
            for (int j = 0; j <= db; ++j)
                rem[static_cast<size_t>(k + j)] -= qk * b.coeffs()[static_cast<size_t>(j)];
        }
        q[static_cast<size_t>(k)] = std::move(qk);
    }
    for (const auto& v : rem)
        if (v != 0) throw std::invalid_argument("divexact: nonzero remainder");
    return IntPoly(std::move(q));
}

bool divides(const IntPoly& b, const IntPoly& a) {
    if (b.is_zero()) return false;
    if (a.is_zero()) return true;
    if (a.degree() < b.degree()) return false;
    // plain long division over Q would need rationals; run the integer
    // division greedily and bail out on any non-integral step
    std::vector<Int> rem(a.coeffs());
    int da = a.degree(), db = b.degree();
    for (int k = da - db; k >= 0; --k) {
        const Int& lead = rem[static_cast<size_t>(k + db)];
        if (lead == 0) continue;
        if (lead % b.leading() != 0) return false;
        Int qk = lead / b.leading();
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(k + j)] -= qk * b.coeffs()[static_cast<size_t>(j)];
    }
    for (const auto& v : rem)
        if (v != 0) return false;
    return true;
}

namespace {

// Pseudo-remainder: lc(b)^(da-db+1) * a reduced by b; exact in Z[X].
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    int da = a.degree(), db = b.degree();
    if (da < db) return a;
    std::vector<Int> rem(a.coeffs());
    const Int& lb = b.leading();
    for (int k = da - db; k >= 0; --k) {
        // scale the whole remainder once per step so leading cancels exactly
        for (int j = 0; j < k + db; ++j) rem[static_cast<size_t>(j)] *= lb;
        Int top = rem[static_cast<size_t>(k + db)];
        rem[static_cast<size_t>(k + db)] = 0;
        for (int j = 0; j < db; ++j)
            rem[static_cast<size_t>(k + j)] -= top * b.coeffs()[static_cast<size_t>(j)];
    }
    rem.resize(static_cast<size_t>(db));
    return IntPoly(std::move(rem));
}

}  // namespace

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return IntPoly();
    if (a.is_zero()) return b.leading() < 0 ? -b : b;
    if (b.is_zero()) return a.leading() < 0 ? -a : a;
    Int cg = gcd(content(a), content(b));
    IntPoly u = primitive_part(a), v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPoly r = primitive_part(pseudo_rem(u, v));
        u = std::move(v);
        v = std::move(r);
    }
    if (u.leading() < 0) u = -u;
    return scalar_mul(u, cg);
}

IntPoly inflate2(const IntPoly& a) {
    if (a.is_zero()) return a;
    std::vector<Int> c(2 * a.coeffs().size() - 1, Int(0));
    for (size_t i = 0; i < a.coeffs().size(); ++i) c[2 * i] = a.coeffs()[i];
    return IntPoly(std::move(c));
}

bool is_even_poly(const IntPoly& a) {
    for (size_t i = 1; i < a.coeffs().size(); i += 2)
        if (a.coeffs()[i] != 0) return false;
    return true;
}

IntPoly deflate2(const IntPoly& a) {
    if (!is_even_poly(a)) throw std::invalid_argument("deflate2: polynomial is not even");
    std::vector<Int> c((a.coeffs().size() + 1) / 2);
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(2 * i);
    return IntPoly(std::move(c));
}

}  // namespace qtrank

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace qtrank {

using Int = boost::multiprecision::cpp_int;

// Dense univariate polynomial over Z. coeffs()[i] is the coefficient of X^i.
// The zero polynomial is the empty sequence; it has no degree (degree()
// returns the sentinel -1 and is_zero() is the real test). Nonzero
// polynomials are kept trimmed, so leading() is never 0.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> cs) : c_(std::move(cs)) { trim(); }
    IntPoly(std::initializer_list<long long> cs);

    static IntPoly constant(Int v);
    static IntPoly x_power(int k);  // X^k

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    // Coefficient of X^i; 0 beyond the stored range.
    const Int& coeff(size_t i) const;
    const Int& leading() const;  // requires nonzero

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    IntPoly operator-() const;

    std::string str() const;  // human-readable, for diagnostics

private:
    std::vector<Int> c_;
    void trim();
};

IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly scalar_mul(const IntPoly& a, const Int& k);
Int eval(const IntPoly& a, const Int& x);

inline IntPoly operator+(const IntPoly& a, const IntPoly& b) { return add(a, b); }
inline IntPoly operator-(const IntPoly& a, const IntPoly& b) { return sub(a, b); }
inline IntPoly operator*(const IntPoly& a, const IntPoly& b) { return mul(a, b); }

// Sup norm of the coefficient vector: max |c_i|, 0 for the zero polynomial.
Int height(const IntPoly& a);

IntPoly derivative(const IntPoly& a);

// gcd of the coefficients, always >= 0; content of the zero polynomial is 0.
Int content(const IntPoly& a);
// a / content(a); keeps the sign of the leading coefficient. Zero stays zero.
IntPoly primitive_part(const IntPoly& a);

// Exact division: requires b != 0 and b | a in Z[X] (asserts otherwise).
IntPoly divexact(const IntPoly& a, const IntPoly& b);
// True iff b divides a exactly over Z (b != 0).
bool divides(const IntPoly& b, const IntPoly& a);

// Polynomial gcd over Z via the primitive pseudo-remainder sequence.
// Result has positive leading coefficient and includes the content gcd.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// P(X^2): even inflation.
IntPoly inflate2(const IntPoly& a);
// True iff every odd-index coefficient vanishes (zero poly counts as even).
bool is_even_poly(const IntPoly& a);
// Q with Q(X^2) = P; requires is_even_poly(P).
IntPoly deflate2(const IntPoly& a);

}  // namespace qtrank

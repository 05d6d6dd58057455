#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "betagibbs/rational.hpp"

namespace betagibbs {

// Exact arithmetic in Q(beta), beta the real root > 1 of x^3 - 2x^2 + x - 1.
// Elements are a + b*beta + c*beta^2 with rational coefficients; the
// representation is unique because the cubic is irreducible over Q.

struct FieldElement;
inline int sign(const FieldElement& x);

// Isolating interval for beta: p(lo) < 0 < p(hi), p(x) = x^3 - 2x^2 + x - 1.
struct RootEnclosure {
    Rational lo, hi;

    static Rational poly(const Rational& t) { return ((t - 2) * t + 1) * t - 1; }

    static RootEnclosure initial() { return {Rational(7, 4), Rational(9, 5)}; }

    void refine() {
        const Rational mid = (lo + hi) / 2;
        if (poly(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }

    Rational width() const { return hi - lo; }
};

struct FieldElement {
    Rational a, b, c;  // a + b*beta + c*beta^2

    FieldElement() = default;
    FieldElement(Rational a_, Rational b_ = 0, Rational c_ = 0)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}
    FieldElement(long v) : a(v) {}
    FieldElement(int v) : a(v) {}

    static FieldElement beta() { return FieldElement(0, 1, 0); }

    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
    bool is_rational() const { return b == 0 && c == 0; }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }

    FieldElement operator-() const { return {-a, -b, -c}; }
    FieldElement operator+(const FieldElement& o) const { return {a + o.a, b + o.b, c + o.c}; }
    FieldElement operator-(const FieldElement& o) const { return {a - o.a, b - o.b, c - o.c}; }

    // Reduce via beta^3 = (1,-1,2), beta^4 = (2,-1,3) in the {1,beta,beta^2} basis.
    FieldElement operator*(const FieldElement& o) const {
        const Rational c0 = a * o.a;
        const Rational c1 = a * o.b + b * o.a;
        const Rational c2 = a * o.c + b * o.b + c * o.a;
        const Rational c3 = b * o.c + c * o.b;
        const Rational c4 = c * o.c;
        return {c0 + c3 + 2 * c4, c1 - c3 - c4, c2 + 2 * c3 + 3 * c4};
    }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    friend bool operator<(const FieldElement& x, const FieldElement& y) { return sign(x - y) < 0; }
    friend bool operator<=(const FieldElement& x, const FieldElement& y) { return sign(x - y) <= 0; }
    friend bool operator>(const FieldElement& x, const FieldElement& y) { return sign(x - y) > 0; }
    friend bool operator>=(const FieldElement& x, const FieldElement& y) { return sign(x - y) >= 0; }

    std::string str() const {
        return "(" + to_string(a) + "," + to_string(b) + "," + to_string(c) + ")";
    }
};

inline FieldElement inverse(const FieldElement& x) {
    if (x.is_zero()) throw std::domain_error("inverse of zero field element");
    if (x.is_rational()) return FieldElement(Rational(1) / x.a);
    // Multiplication-by-x map in the power basis; solve M*y = e0.
    Rational M[3][4] = {
        {x.a, x.c, x.b + 2 * x.c, 1},
        {x.b, x.a - x.c, -x.b - x.c, 0},
        {x.c, x.b + 2 * x.c, x.a + 2 * x.b + 3 * x.c, 0},
    };
    for (int col = 0; col < 3; ++col) {
        int piv = -1;
        for (int r = col; r < 3; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("singular multiplication map for nonzero element");
        if (piv != col)
            for (int j = 0; j < 4; ++j) std::swap(M[piv][j], M[col][j]);
        const Rational inv = Rational(1) / M[col][col];
        for (int j = col; j < 4; ++j) M[col][j] *= inv;
        for (int r = 0; r < 3; ++r) {
            if (r == col || M[r][col] == 0) continue;
            const Rational f = M[r][col];
            for (int j = col; j < 4; ++j) M[r][j] -= f * M[col][j];
        }
    }
    return {M[0][3], M[1][3], M[2][3]};
}

inline FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return x * inverse(y);
}

namespace detail {

// Shared enclosure of beta; only ever shrinks, so concurrent readers with
// thread-local copies stay correct.
inline RootEnclosure& beta_enclosure() {
    thread_local RootEnclosure enc = RootEnclosure::initial();
    return enc;
}

struct RatInterval {
    Rational lo, hi;
};

// Interval evaluation of a + b*t + c*t^2 over t in [enc.lo, enc.hi], 0 < lo.
inline RatInterval evaluate(const FieldElement& x, const RootEnclosure& enc) {
    RatInterval out{x.a, x.a};
    auto add_scaled = [&](const Rational& coef, const Rational& tlo, const Rational& thi) {
        if (coef == 0) return;
        if (coef > 0) {
            out.lo += coef * tlo;
            out.hi += coef * thi;
        } else {
            out.lo += coef * thi;
            out.hi += coef * tlo;
        }
    };
    add_scaled(x.b, enc.lo, enc.hi);
    add_scaled(x.c, enc.lo * enc.lo, enc.hi * enc.hi);
    return out;
}

}  // namespace detail

// Exact sign of the real value of x under the embedding with beta > 1.
// Terminates for every x: a nonzero element has nonzero value because the
// minimal polynomial is irreducible.
inline int sign(const FieldElement& x) {
    if (x.is_zero()) return 0;
    if (x.is_rational()) return x.a > 0 ? 1 : -1;
    RootEnclosure& enc = detail::beta_enclosure();
    for (;;) {
        const auto iv = detail::evaluate(x, enc);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
        enc.refine();
        enc.refine();
    }
}

// Rational q with |x - q| < eps, certified by the enclosure.
inline Rational approximate(const FieldElement& x, const Rational& eps) {
    if (eps <= 0) throw std::domain_error("approximate: eps must be positive");
    if (x.is_rational()) return x.a;
    RootEnclosure& enc = detail::beta_enclosure();
    for (;;) {
        const auto iv = detail::evaluate(x, enc);
        if (iv.hi - iv.lo < eps) return (iv.lo + iv.hi) / 2;
        enc.refine();
    }
}

inline double to_double(const FieldElement& x) {
    return to_double(approximate(x, Rational(1, Int(1) << 60)));
}

// Greatest integer m with x - m >= 0; float seed confirmed by exact signs.
inline Int floor(const FieldElement& x) {
    if (x.is_rational()) {
        Int num = boost::multiprecision::numerator(x.a);
        Int den = boost::multiprecision::denominator(x.a);
        Int q = num / den;
        if (num < 0 && q * den != num) --q;
        return q;
    }
    const Rational approx = approximate(x, Rational(1, 4));
    Int num = boost::multiprecision::numerator(approx);
    Int den = boost::multiprecision::denominator(approx);
    Int m = num / den;
    if (num < 0 && m * den != num) --m;
    while (sign(x - FieldElement(Rational(m))) < 0) --m;
    while (sign(x - FieldElement(Rational(m + 1))) >= 0) ++m;
    return m;
}

// beta^k for any integer k; beta^-1 = beta^2 - 2*beta + 1.
inline FieldElement beta_pow(long k) {
    static const FieldElement inv_beta{1, -2, 1};
    FieldElement base = k >= 0 ? FieldElement::beta() : inv_beta;
    unsigned long n = static_cast<unsigned long>(k >= 0 ? k : -k);
    FieldElement out{1};
    while (n > 0) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

}  // namespace betagibbs

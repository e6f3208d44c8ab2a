#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace prym {

using i64 = std::int64_t;

inline i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }
inline i64 gcd_i64(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }
inline i64 gcd_i64(i64 a, i64 b, i64 c, i64 d) { return std::gcd(std::gcd(a, b), std::gcd(c, d)); }

// x mod m reduced into [0, m), m > 0.
inline i64 mod_floor(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

// g = gcd(a,b) together with x, y such that a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Row-major 2x2 integer matrix.
struct IntMat2 {
    i64 m[2][2];

    IntMat2() : m{{0, 0}, {0, 0}} {}
    IntMat2(i64 a, i64 b, i64 c, i64 d) : m{{a, b}, {c, d}} {}
    static IntMat2 identity() { return {1, 0, 0, 1}; }

    i64 det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    IntMat2 operator*(const IntMat2& o) const {
        return {m[0][0] * o.m[0][0] + m[0][1] * o.m[1][0], m[0][0] * o.m[0][1] + m[0][1] * o.m[1][1],
                m[1][0] * o.m[0][0] + m[1][1] * o.m[1][0], m[1][0] * o.m[0][1] + m[1][1] * o.m[1][1]};
    }
    bool operator==(const IntMat2& o) const {
        return m[0][0] == o.m[0][0] && m[0][1] == o.m[0][1] && m[1][0] == o.m[1][0] && m[1][1] == o.m[1][1];
    }

    std::string str() const {
        return "[[" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) + "],[" +
               std::to_string(m[1][0]) + "," + std::to_string(m[1][1]) + "]]";
    }
};

struct ColHnf {
    IntMat2 hnf;  // [[a, b], [0, g]], a > 0, g = gcd of the input bottom row, g > 0
    IntMat2 u;    // det(u) = +1
    bool top_row_negated;  // hnf = (possibly top-row-negated)(m * u)
};

// Column Hermite form of a nonsingular 2x2 integer matrix: m*u = [[a,b],[0,g]]
// with u in SL2(Z) and g = gcd of the bottom row of m taken positive.  When
// det(m) < 0 the top row is negated afterwards so that a > 0; the off-diagonal
// entry b is left unreduced (callers reduce it modulo their own twist rule).
inline ColHnf col_hnf(const IntMat2& mat) {
    if (mat.det() == 0) throw std::domain_error("col_hnf: degenerate lattice");
    i64 p = mat.m[1][0], q = mat.m[1][1];
    i64 g = gcd_i64(p, q);  // > 0 since det != 0 forbids a zero bottom row
    p /= g;
    q /= g;
    // (p,q) * u = (0,1) with det(u) = +1: u = [[q, x],[-p, y]], p*x + q*y = 1
    i64 x, y;
    ext_gcd(p, q, x, y);
    IntMat2 u(q, x, -p, y);
    IntMat2 h = mat * u;
    bool neg = false;
    if (h.m[0][0] < 0) {
        h.m[0][0] = -h.m[0][0];
        h.m[0][1] = -h.m[0][1];
        neg = true;
    }
    return {h, u, neg};
}

}  // namespace prym

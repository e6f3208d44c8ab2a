#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace prym {

// Element a + b*sqrt(disc) of the real quadratic field Q(sqrt(disc)).
//
// disc is a per-value context constant: mixing two discriminants in one
// operation is a logic error.  When disc is a perfect square the value is
// stored with b == 0 (b*sqrt(disc) folded into a), so square-tiled cases
// degenerate to plain rationals.  All comparisons use the real embedding
// with sqrt(disc) >= 0 and are exact: no floating point anywhere.
class QuadNum {
public:
    QuadNum() : a_(0), b_(0), disc_(0) {}
    QuadNum(mpq_class a, mpq_class b, std::int64_t disc) : a_(std::move(a)), b_(std::move(b)), disc_(disc) {
        if (disc_ < 0) throw std::invalid_argument("QuadNum: negative discriminant");
        fold_square();
    }
    static QuadNum rational(mpq_class a, std::int64_t disc) { return QuadNum(std::move(a), 0, disc); }
    static QuadNum integer(std::int64_t a, std::int64_t disc) { return QuadNum(mpq_class(static_cast<long>(a)), 0, disc); }
    // sqrt(disc) itself; folds to an integer when disc is a square.
    static QuadNum root(std::int64_t disc) { return QuadNum(0, 1, disc); }

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& root_part() const { return b_; }
    std::int64_t disc() const { return disc_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QuadNum operator-() const { return QuadNum(-a_, -b_, disc_); }

    QuadNum operator+(const QuadNum& o) const {
        return QuadNum(a_ + o.a_, b_ + o.b_, common_disc(o));
    }
    QuadNum operator-(const QuadNum& o) const {
        return QuadNum(a_ - o.a_, b_ - o.b_, common_disc(o));
    }
    QuadNum operator*(const QuadNum& o) const {
        std::int64_t d = common_disc(o);
        return QuadNum(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
    }
    QuadNum operator/(const QuadNum& o) const {
        std::int64_t d = common_disc(o);
        // 1/(a+b*r) = (a-b*r)/(a^2-b^2*d)
        mpq_class n = o.a_ * o.a_ - o.b_ * o.b_ * d;
        if (n == 0) throw std::domain_error("QuadNum: division by zero");
        return *this * QuadNum(o.a_ / n, -o.b_ / n, d);
    }
    QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
    QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
    QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }
    QuadNum& operator/=(const QuadNum& o) { return *this = *this / o; }

    QuadNum operator*(const mpq_class& c) const { return QuadNum(a_ * c, b_ * c, disc_); }
    QuadNum operator/(const mpq_class& c) const {
        if (c == 0) throw std::domain_error("QuadNum: division by zero");
        return QuadNum(a_ / c, b_ / c, disc_);
    }

    // Galois conjugate a - b*sqrt(disc).
    QuadNum conjugate() const { return QuadNum(a_, -b_, disc_); }

    // Sign under the real embedding, by exact case analysis on the signs of
    // a, b and comparison of a^2 with b^2*disc.
    int sign() const {
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: |a| vs |b|*sqrt(d) decided by a^2 vs b^2*d
        mpq_class lhs = a_ * a_, rhs = b_ * b_ * disc_;
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    int compare(const QuadNum& o) const { return (*this - o).sign(); }
    bool operator==(const QuadNum& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadNum& o) const { return !(*this == o); }
    bool operator<(const QuadNum& o) const { return compare(o) < 0; }
    bool operator<=(const QuadNum& o) const { return compare(o) <= 0; }
    bool operator>(const QuadNum& o) const { return compare(o) > 0; }
    bool operator>=(const QuadNum& o) const { return compare(o) >= 0; }

    // True iff the value is a rational integer.
    bool is_integer() const { return b_ == 0 && a_.get_den() == 1; }
    // The value as an int64, assuming is_integer().
    std::int64_t to_integer() const {
        if (!is_integer()) throw std::domain_error("QuadNum: not an integer: " + str());
        if (!a_.get_num().fits_slong_p()) throw std::overflow_error("QuadNum: integer overflow");
        return a_.get_num().get_si();
    }

    std::string str() const {
        if (b_ == 0) return a_.get_str();
        std::string s = a_ == 0 ? "" : a_.get_str();
        std::string bs = b_.get_str();
        if (b_ > 0 && !s.empty()) s += "+";
        s += bs + "*sqrt(" + std::to_string(disc_) + ")";
        return s;
    }

private:
    static int sgn(const mpq_class& q) { return mpq_sgn(q.get_mpq_t()); }

    std::int64_t common_disc(const QuadNum& o) const {
        if (disc_ == o.disc_) return disc_;
        if (b_ == 0) return o.disc_;
        if (o.b_ == 0) return disc_;
        throw std::invalid_argument("QuadNum: mixed discriminants");
    }

    void fold_square() {
        if (b_ == 0) return;
        std::int64_t r = isqrt_floor(disc_);
        if (r * r == disc_) {
            a_ += b_ * static_cast<long>(r);
            b_ = 0;
        }
    }

    static std::int64_t isqrt_floor(std::int64_t n) {
        std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
        while (r > 0 && r * r > n) --r;
        while ((r + 1) * (r + 1) <= n) ++r;
        return r;
    }

    mpq_class a_, b_;
    std::int64_t disc_;
};

inline int qsign(const QuadNum& x) { return x.sign(); }

// floor of the real value, exact (double estimate corrected by exact tests)
inline std::int64_t qfloor(const QuadNum& x) {
    double est = x.rational_part().get_d();
    if (x.root_part() != 0) est += x.root_part().get_d() * std::sqrt(static_cast<double>(x.disc()));
    auto n = static_cast<std::int64_t>(std::floor(est));
    while ((x - QuadNum::integer(n, x.disc())).sign() < 0) --n;
    while ((x - QuadNum::integer(n + 1, x.disc())).sign() >= 0) ++n;
    return n;
}

// lambda = (e + sqrt(D)) / 2, the positive root of X^2 = e*X + 2*w*h when
// D = e^2 + 8*w*h (and of X^2 = e*X + w*h when D = e^2 + 4*w*h).
inline QuadNum half_trace_root(std::int64_t e, std::int64_t disc) {
    return QuadNum(mpq_class(static_cast<long>(e), 2), mpq_class(1, 2), disc);
}

// 2D vector with QuadNum coordinates.
struct QVec {
    QuadNum x, y;

    QVec() = default;
    QVec(QuadNum xx, QuadNum yy) : x(std::move(xx)), y(std::move(yy)) {}

    QVec operator+(const QVec& o) const { return {x + o.x, y + o.y}; }
    QVec operator-(const QVec& o) const { return {x - o.x, y - o.y}; }
    QVec operator-() const { return {-x, -y}; }
    QVec operator*(const QuadNum& c) const { return {x * c, y * c}; }
    QVec operator*(const mpq_class& c) const { return {x * c, y * c}; }
    bool operator==(const QVec& o) const { return x == o.x && y == o.y; }
    bool operator!=(const QVec& o) const { return !(*this == o); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

inline QuadNum cross(const QVec& u, const QVec& v) { return u.x * v.y - u.y * v.x; }
inline QuadNum dot(const QVec& u, const QVec& v) { return u.x * v.x + u.y * v.y; }

}  // namespace prym

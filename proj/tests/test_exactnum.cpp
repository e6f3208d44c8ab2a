#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prym/intmat.hpp"
#include "prym/quadnum.hpp"

using namespace prym;

TEST_CASE("qsign by exact case analysis") {
    CHECK(QuadNum(0, 0, 17).sign() == 0);
    CHECK(QuadNum(-2, 1, 5).sign() == +1);   // sqrt(5) > 2
    CHECK(QuadNum(3, -1, 8).sign() == +1);   // 9 > 8
    CHECK(QuadNum(-3, 1, 8).sign() == -1);
    CHECK(QuadNum(2, -1, 4).sign() == 0);    // 2 - sqrt(4)
    CHECK(QuadNum(mpq_class(1, 2), mpq_class(-1, 4), 5).sign() == -1);  // 1/2 < sqrt(5)/4
}

TEST_CASE("total order consistent with arithmetic") {
    const i64 D = 13;
    std::vector<QuadNum> vals;
    for (int a = -3; a <= 3; ++a)
        for (int b = -2; b <= 2; ++b) vals.push_back(QuadNum(a, mpq_class(b, 2), D));
    for (const auto& x : vals)
        for (const auto& y : vals) {
            int c = x.compare(y);
            CHECK(c == -y.compare(x));
            // translation invariance
            QuadNum z(1, mpq_class(1, 3), D);
            CHECK((x + z).compare(y + z) == c);
            // multiplication by a positive preserves order
            QuadNum pos(0, 1, D);
            REQUIRE(pos.sign() > 0);
            CHECK((x * pos).compare(y * pos) == c);
        }
}

TEST_CASE("field arithmetic") {
    QuadNum x(mpq_class(1, 2), mpq_class(3, 4), 17);
    QuadNum y(-2, mpq_class(1, 3), 17);
    CHECK((x - x).is_zero());
    CHECK(((x / y) * y) == x);
    CHECK((x * y).disc() == 17);
    CHECK(QuadNum::root(17) * QuadNum::root(17) == QuadNum::integer(17, 17));
    CHECK_THROWS_AS(x / QuadNum::integer(0, 17), std::domain_error);
}

TEST_CASE("perfect square discriminants fold to rationals") {
    QuadNum x(0, 1, 49);
    CHECK(x.is_rational());
    CHECK(x == QuadNum::integer(7, 49));
    QuadNum lam = half_trace_root(-2, 100);  // (-2+10)/2 = 4
    CHECK(lam == QuadNum::integer(4, 100));
    CHECK(half_trace_root(3, 25) == QuadNum::integer(4, 25));
}

TEST_CASE("lambda is the positive root of its quadratic") {
    for (i64 d : {17, 41, 68, 148}) {
        for (i64 e = -5; e <= 5; ++e) {
            if ((d - e * e) % 8 != 0 || d <= e * e) continue;
            QuadNum lam = half_trace_root(e, d);
            i64 wh2 = (d - e * e) / 4;  // 2wh
            CHECK(lam * lam == lam * mpq_class(static_cast<long>(e)) + QuadNum::integer(wh2, d));
            CHECK(lam.sign() > 0);
        }
    }
}

TEST_CASE("qfloor") {
    CHECK(qfloor(QuadNum(0, 1, 2)) == 1);     // sqrt(2)
    CHECK(qfloor(QuadNum(0, -1, 2)) == -2);   // -sqrt(2)
    CHECK(qfloor(QuadNum(mpq_class(7, 2), 0, 5)) == 3);
    CHECK(qfloor(QuadNum(-3, 0, 5)) == -3);
    CHECK(qfloor(half_trace_root(-5, 41)) == 0);  // (sqrt(41)-5)/2 ~ 0.7
}

TEST_CASE("col_hnf worked examples") {
    auto r1 = col_hnf(IntMat2(1, -6, -2, 36));
    CHECK(r1.hnf == IntMat2(12, -1, 0, 2));
    CHECK(r1.u.det() == 1);
    CHECK(!r1.top_row_negated);
    CHECK(IntMat2(1, -6, -2, 36) * r1.u == r1.hnf);

    auto r2 = col_hnf(IntMat2::identity());
    CHECK(r2.hnf == IntMat2::identity());

    auto r3 = col_hnf(IntMat2(2, 1, -2, 3));
    CHECK(r3.hnf == IntMat2(8, 3, 0, 1));

    CHECK_THROWS_AS(col_hnf(IntMat2(2, 4, 1, 2)), std::domain_error);
}

TEST_CASE("col_hnf properties over a grid") {
    for (i64 a = -4; a <= 4; ++a)
        for (i64 b = -4; b <= 4; ++b)
            for (i64 c = -4; c <= 4; ++c)
                for (i64 d = -4; d <= 4; ++d) {
                    IntMat2 m(a, b, c, d);
                    if (m.det() == 0) continue;
                    auto r = col_hnf(m);
                    CHECK(r.u.det() == 1);
                    CHECK(r.hnf.m[1][0] == 0);
                    CHECK(r.hnf.m[1][1] == gcd_i64(c, d));
                    CHECK(r.hnf.m[0][0] > 0);
                    i64 dd = r.hnf.m[0][0] * r.hnf.m[1][1];
                    CHECK(dd == (m.det() > 0 ? m.det() : -m.det()));
                    IntMat2 mu = m * r.u;
                    if (r.top_row_negated) {
                        mu.m[0][0] = -mu.m[0][0];
                        mu.m[0][1] = -mu.m[0][1];
                    }
                    CHECK(mu == r.hnf);
                }
}

TEST_CASE("ext_gcd") {
    i64 x, y;
    CHECK(ext_gcd(240, 46, x, y) == 2);
    CHECK(240 * x + 46 * y == 2);
    CHECK(ext_gcd(-7, 0, x, y) == 7);
    CHECK(-7 * x == 7);
}

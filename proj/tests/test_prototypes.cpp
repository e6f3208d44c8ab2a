#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "prym/prototypes.hpp"

using namespace prym;

namespace {

std::set<std::vector<i64>> tuple_set(const std::vector<Prototype>& v) {
    std::set<std::vector<i64>> out;
    for (const auto& p : v) out.insert({p.w, p.h, p.t, p.e});
    return out;
}

bool admissible_disc(i64 d) { return mod_floor(d, 4) == 0 || mod_floor(d, 4) == 1; }

}  // namespace

TEST_CASE("unique small solutions") {
    CHECK(tuple_set(enumerate_prototypes(12, 3, Model::A)) ==
          std::set<std::vector<i64>>{{1, 1, 0, -2}});
    CHECK(enumerate_prototypes(12, 3, Model::B).empty());
    CHECK(tuple_set(enumerate_prototypes(8, 3, Model::B)) == std::set<std::vector<i64>>{{1, 1, 0, 0}});
    CHECK(enumerate_prototypes(8, 3, Model::A).empty());
    for (i64 d : {9, 16}) {
        CHECK(enumerate_prototypes(d, 3, Model::A).empty());
        CHECK(enumerate_prototypes(d, 3, Model::B).empty());
    }
}

TEST_CASE("model-B set for D = 48") {
    CHECK(tuple_set(enumerate_prototypes(48, 3, Model::B)) ==
          std::set<std::vector<i64>>{{3, 2, 0, 0}, {4, 1, 0, 4}, {2, 3, 0, 0}, {1, 4, 0, -4}});
}

TEST_CASE("prototype set for D = 68") {
    CHECK(tuple_set(enumerate_prototypes(68, 3, Model::A)) ==
          std::set<std::vector<i64>>{
              {2, 2, 1, -6}, {8, 1, 0, -2}, {4, 1, 0, -6}, {8, 1, 0, 2}, {4, 2, 1, -2}});
}

TEST_CASE("counts for D = 17 in both genera") {
    CHECK(enumerate_prototypes(17, 3, Model::A).size() == 2);
    CHECK(enumerate_prototypes(17, 3, Model::B).size() == 2);
    CHECK(enumerate_prototypes(17, 4, Model::A).size() == 2);
    CHECK(enumerate_prototypes(17, 4, Model::B).size() == 4);
}

TEST_CASE("enumeration order is lexicographic in (e,w,h,t)") {
    auto v = enumerate_prototypes(233, 3, Model::A);
    for (size_t i = 0; i + 1 < v.size(); ++i) CHECK(v[i] < v[i + 1]);
}

TEST_CASE("reduced classes") {
    auto r41 = enumerate_reduced(41, 3);
    std::vector<i64> es;
    for (const auto& r : r41) es.push_back(r.e);
    CHECK(es == std::vector<i64>{-5, -3, -1, 1});
    CHECK(enumerate_reduced(5, 3).empty());
    auto r12 = enumerate_reduced(12, 3);
    REQUIRE(r12.size() == 1);
    CHECK(r12[0].e == -2);
}

TEST_CASE("reduced to prototype") {
    Prototype p = reduced_to_prototype({-6, 148, 3});
    CHECK(p == Prototype{14, 1, 0, -6, 148, 3, Model::A});
    CHECK(reduced_to_prototype({2, 292, 3}) == Prototype{36, 1, 0, 2, 292, 3, Model::A});
    CHECK_THROWS_AS(reduced_to_prototype({0, 8, 3}), std::domain_error);
}

TEST_CASE("square cusp prototypes") {
    auto s5 = enumerate_square_cusp(5);
    REQUIRE(s5.size() == 1);
    CHECK(s5[0].p == 2);
    CHECK(s5[0].q == 1);
    CHECK(enumerate_square_cusp(7).size() == 3);
    CHECK(enumerate_square_cusp(3).empty());
}

TEST_CASE("square cusp set matches the quadruple description") {
    // independent oracle: count (e,p,q,s) with e = d-4p, s = e+2p > 0,
    // 0 < q < p, gcd(e,p,q,s) = 1
    for (i64 d = 1; d <= 25; ++d) {
        i64 quadruples = 0;
        for (i64 p = 1; p <= d; ++p)
            for (i64 q = 1; q < p; ++q) {
                i64 e = d - 4 * p, s = d - 2 * p;
                if (s <= 0) continue;
                if (gcd_i64(e, p, q, s) != 1) continue;
                ++quadruples;
            }
        CHECK(quadruples == static_cast<i64>(enumerate_square_cusp(d).size()));
    }
}

TEST_CASE("genus-2 prototypes") {
    CHECK(enumerate_genus2(8).size() == 2);
    CHECK(enumerate_genus2(17).size() == 6);
    auto g5 = enumerate_genus2(5);
    REQUIRE(g5.size() == 1);
    CHECK(g5[0].a == 0);
    CHECK(g5[0].b == 1);
    CHECK(g5[0].c == 1);
    CHECK(g5[0].e == -1);
}

TEST_CASE("every enumerated tuple re-validates") {
    for (i64 d = 5; d <= 300; ++d) {
        if (!admissible_disc(d)) continue;
        for (int genus : {3, 4})
            for (Model m : {Model::A, Model::B})
                for (const auto& p : enumerate_prototypes(d, genus, m)) {
                    CHECK(is_valid_prototype(p));
                    CHECK(p.disc == d);
                }
        for (const auto& r : enumerate_reduced(d, 3)) CHECK(is_valid_reduced(r));
        for (const auto& g : enumerate_genus2(d)) CHECK(is_valid_genus2(g));
    }
}

TEST_CASE("complete prototypes double the incomplete ones") {
    for (i64 d : {17, 41, 48, 68, 100, 233}) {
        CHECK(enumerate_complete(d, 3).size() == 2 * enumerate_prototypes(d, 3, Model::A).size());
    }
}

TEST_CASE("empty sets for D = 5 mod 8") {
    for (i64 d = 5; d <= 500; d += 8) {
        CHECK(enumerate_prototypes(d, 3, Model::A).empty());
        CHECK(enumerate_prototypes(d, 3, Model::B).empty());
    }
}

TEST_CASE("residue seed tuples for admissible D >= 17") {
    for (i64 d = 17; d <= 400; ++d) {
        i64 m = mod_floor(d, 8);
        if (m != 0 && m != 1 && m != 4) continue;
        Prototype seed{(d - m) / 8, 1, 0, m == 0 ? 0 : m == 1 ? -1 : -2, d, 3, Model::A};
        auto all = enumerate_prototypes(d, 3, Model::A);
        CHECK(std::find(all.begin(), all.end(), seed) != all.end());
    }
}

TEST_CASE("model-A integer form agrees with the exact lambda inequality") {
    for (i64 d = 5; d <= 200; ++d) {
        if (!admissible_disc(d)) continue;
        i64 emax = isqrt(d);
        for (i64 e = -emax; e <= emax; ++e) {
            if ((d - e * e) % 8 != 0 || d == e * e) continue;
            i64 m = (d - e * e) / 8;
            for (i64 w = 1; w <= m; ++w) {
                if (m % w) continue;
                Prototype p{w, m / w, 0, e, d, 3, Model::A};
                QuadNum lam = proto_lambda(p);
                bool exact = lam.sign() > 0 && (QuadNum::integer(w, d) - lam).sign() > 0;
                CHECK(exact == (p.e + 2 * p.h < p.w));
            }
        }
    }
}

TEST_CASE("json emission") {
    auto v = enumerate_prototypes(68, 3, Model::A);
    std::string js = prototypes_to_json(68, 3, "P", as_tuples(v));
    CHECK(js ==
          "{\"disc\":68,\"genus\":3,\"set\":\"P\",\"items\":"
          "[[2,2,1,-6],[4,1,0,-6],[8,1,0,-2],[4,2,1,-2],[8,1,0,2]]}");
}

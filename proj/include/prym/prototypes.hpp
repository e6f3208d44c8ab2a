#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prym/intmat.hpp"
#include "prym/quadnum.hpp"

namespace prym {

enum class Model { A, B };

// Integer tuple (w,h,t,e) parametrizing a normalized cylinder decomposition
// of an eigenform with discriminant disc.  genus 3 uses disc = e^2 + 8wh,
// genus 4 uses disc = e^2 + 4wh.  Model A carries the simple-cylinder
// decompositions, model B the ones without simple cylinders.
struct Prototype {
    i64 w = 0, h = 0, t = 0, e = 0;
    i64 disc = 0;
    int genus = 3;
    Model model = Model::A;

    bool operator==(const Prototype& o) const {
        return w == o.w && h == o.h && t == o.t && e == o.e && disc == o.disc && genus == o.genus &&
               model == o.model;
    }
    bool operator<(const Prototype& o) const {
        if (e != o.e) return e < o.e;
        if (w != o.w) return w < o.w;
        if (h != o.h) return h < o.h;
        return t < o.t;
    }
    std::string str() const;
};

// Prototype plus the sign distinguishing the two three-cylinder models A+/A-.
struct CompletePrototype {
    Prototype proto;
    int eps = +1;  // +1 or -1

    bool operator==(const CompletePrototype& o) const { return proto == o.proto && eps == o.eps; }
    bool operator<(const CompletePrototype& o) const {
        if (!(proto == o.proto)) return proto < o.proto;
        return eps < o.eps;
    }
    std::string str() const;
};

// Reduced prototype (w,1,0,e), identified with its e-value.
struct ReducedClass {
    i64 e = 0;
    i64 disc = 0;
    int genus = 3;

    bool operator==(const ReducedClass& o) const { return e == o.e && disc == o.disc && genus == o.genus; }
    bool operator<(const ReducedClass& o) const { return e < o.e; }
};

// Pair (p,q) parametrizing one- and two-cylinder cusps for square disc = d^2.
struct SquareCuspPrototype {
    i64 p = 0, q = 0, d = 0;

    bool operator<(const SquareCuspPrototype& o) const {
        if (p != o.p) return p < o.p;
        return q < o.q;
    }
    bool operator==(const SquareCuspPrototype& o) const { return p == o.p && q == o.q && d == o.d; }
};

// Genus-2 cusp prototype (a,b,c,e) with disc = e^2 + 4bc.  Used only for the
// genus-2 cusp column; kept separate from Prototype on purpose.
struct Genus2Prototype {
    i64 a = 0, b = 0, c = 0, e = 0;
    i64 disc = 0;

    bool operator<(const Genus2Prototype& o) const {
        if (e != o.e) return e < o.e;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return a < o.a;
    }
};

// lambda(p) = (e + sqrt(D)) / 2 as an exact field element.
QuadNum proto_lambda(const Prototype& p);

// Validation predicates.  The model-B inequalities are evaluated with exact
// sign tests on (e + sqrt(D))/4, (e + sqrt(D))/2, never rearranged by hand.
bool is_valid_prototype(const Prototype& p);
bool is_valid_reduced(const ReducedClass& r);
bool is_valid_genus2(const Genus2Prototype& g);
bool is_valid_square_cusp(const SquareCuspPrototype& s);

std::vector<Prototype> enumerate_prototypes(i64 disc, int genus, Model model);
std::vector<CompletePrototype> enumerate_complete(i64 disc, int genus);
std::vector<ReducedClass> enumerate_reduced(i64 disc, int genus);
std::vector<SquareCuspPrototype> enumerate_square_cusp(i64 d);
std::vector<Genus2Prototype> enumerate_genus2(i64 disc);

// (w,1,0,e) for e in S_D; throws std::domain_error when the result violates
// the prototype conditions (possible only for e outside S_D).
Prototype reduced_to_prototype(const ReducedClass& r);

// JSON of the form {"disc":..,"genus":..,"set":"P","items":[[w,h,t,e],..]}.
std::string prototypes_to_json(i64 disc, int genus, const std::string& set_name,
                               const std::vector<std::vector<i64>>& items);

inline std::vector<std::vector<i64>> as_tuples(const std::vector<Prototype>& v) {
    std::vector<std::vector<i64>> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back({p.w, p.h, p.t, p.e});
    return out;
}

bool is_perfect_square(i64 n);
i64 isqrt(i64 n);

}  // namespace prym

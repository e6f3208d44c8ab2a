#include "prym/prototypes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prym {

i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt: negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

std::string Prototype::str() const {
    std::ostringstream os;
    os << "(" << w << "," << h << "," << t << "," << e << ")";
    return os.str();
}

std::string CompletePrototype::str() const {
    std::ostringstream os;
    os << "(" << proto.w << "," << proto.h << "," << proto.t << "," << proto.e << ","
       << (eps > 0 ? "+" : "-") << ")";
    return os.str();
}

QuadNum proto_lambda(const Prototype& p) { return half_trace_root(p.e, p.disc); }

namespace {

i64 wh_factor(int genus) { return genus == 3 ? 8 : 4; }

// common part of (P), (P'), (P~), (P~'): positivity, twist range, primitivity
// and the discriminant relation
bool basic_conditions(const Prototype& p) {
    if (p.genus != 3 && p.genus != 4) return false;
    if (p.w <= 0 || p.h <= 0) return false;
    i64 g = gcd_i64(p.w, p.h);
    if (p.t < 0 || p.t >= g) return false;
    if (gcd_i64(p.w, p.h, p.t, p.e) != 1) return false;
    return p.disc == p.e * p.e + wh_factor(p.genus) * p.w * p.h;
}

}  // namespace

bool is_valid_prototype(const Prototype& p) {
    if (!basic_conditions(p)) return false;
    QuadNum lam = proto_lambda(p);
    QuadNum w = QuadNum::integer(p.w, p.disc);
    if (p.genus == 3) {
        if (p.model == Model::A) {
            // 0 < lambda < w, integer form e + 2h < w
            return p.e + 2 * p.h < p.w;
        }
        // 0 < (e+sqrt(D))/4 < w < (e+sqrt(D))/2
        QuadNum quarter = lam / mpq_class(2);
        return quarter.sign() > 0 && (w - quarter).sign() > 0 && (lam - w).sign() > 0;
    }
    if (p.model == Model::A) {
        // 0 < lambda < w/2, integer form w > 2(e + 2h)
        return p.w > 2 * (p.e + 2 * p.h);
    }
    // w/2 < lambda < w
    QuadNum half_w = w / mpq_class(2);
    return (lam - half_w).sign() > 0 && (w - lam).sign() > 0;
}

bool is_valid_reduced(const ReducedClass& r) {
    if (r.genus == 3) {
        if (mod_floor(r.e * r.e - r.disc, 8) != 0) return false;
    } else if (r.genus == 4) {
        if (mod_floor(r.e - r.disc, 2) != 0) return false;
    } else {
        return false;
    }
    return r.e * r.e < r.disc && (r.e + 4) * (r.e + 4) < r.disc;
}

bool is_valid_genus2(const Genus2Prototype& g) {
    if (g.b <= 0 || g.c <= 0) return false;
    if (g.c + g.e >= g.b) return false;
    i64 d = gcd_i64(g.b, g.c);
    if (g.a < 0 || g.a >= d) return false;
    if (gcd_i64(g.a, g.b, g.c, g.e) != 1) return false;
    return g.disc == g.e * g.e + 4 * g.b * g.c;
}

bool is_valid_square_cusp(const SquareCuspPrototype& s) {
    if (!(0 < s.q && s.q < s.p && 2 * s.p < s.d)) return false;
    return gcd_i64(s.p, s.q, s.d) == 1;
}

std::vector<Prototype> enumerate_prototypes(i64 disc, int genus, Model model) {
    std::vector<Prototype> out;
    if (disc < 0) return out;
    i64 k = wh_factor(genus);
    i64 emax = isqrt(disc);
    for (i64 e = -emax; e <= emax; ++e) {
        i64 rem = disc - e * e;
        if (rem <= 0 || rem % k != 0) continue;
        i64 m = rem / k;  // = w*h
        for (i64 w = 1; w <= m; ++w) {
            if (m % w != 0) continue;
            i64 h = m / w;
            i64 g = gcd_i64(w, h);
            for (i64 t = 0; t < g; ++t) {
                Prototype p{w, h, t, e, disc, genus, model};
                if (is_valid_prototype(p)) out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CompletePrototype> enumerate_complete(i64 disc, int genus) {
    std::vector<CompletePrototype> out;
    for (const auto& p : enumerate_prototypes(disc, genus, Model::A)) {
        out.push_back({p, +1});
        out.push_back({p, -1});
    }
    return out;
}

std::vector<ReducedClass> enumerate_reduced(i64 disc, int genus) {
    std::vector<ReducedClass> out;
    if (disc <= 0) return out;
    i64 emax = isqrt(disc);
    for (i64 e = -emax - 4; e <= emax; ++e) {
        ReducedClass r{e, disc, genus};
        if (is_valid_reduced(r)) out.push_back(r);
    }
    return out;
}

Prototype reduced_to_prototype(const ReducedClass& r) {
    i64 k = wh_factor(r.genus);
    i64 rem = r.disc - r.e * r.e;
    if (rem <= 0 || rem % k != 0)
        throw std::domain_error("reduced_to_prototype: e^2 not congruent to disc");
    Prototype p{rem / k, 1, 0, r.e, r.disc, r.genus, Model::A};
    if (!is_valid_prototype(p))
        throw std::domain_error("reduced_to_prototype: " + p.str() + " violates the prototype conditions");
    return p;
}

std::vector<SquareCuspPrototype> enumerate_square_cusp(i64 d) {
    std::vector<SquareCuspPrototype> out;
    for (i64 p = 1; 2 * p < d; ++p)
        for (i64 q = 1; q < p; ++q) {
            SquareCuspPrototype s{p, q, d};
            if (is_valid_square_cusp(s)) out.push_back(s);
        }
    return out;
}

std::vector<Genus2Prototype> enumerate_genus2(i64 disc) {
    std::vector<Genus2Prototype> out;
    if (disc <= 0 || (mod_floor(disc, 4) != 0 && mod_floor(disc, 4) != 1)) return out;
    i64 emax = isqrt(disc);
    for (i64 e = -emax; e <= emax; ++e) {
        i64 rem = disc - e * e;
        if (rem <= 0 || rem % 4 != 0) continue;
        i64 m = rem / 4;  // = b*c
        for (i64 b = 1; b <= m; ++b) {
            if (m % b != 0) continue;
            i64 c = m / b;
            for (i64 a = 0; a < gcd_i64(b, c); ++a) {
                Genus2Prototype g{a, b, c, e, disc};
                if (is_valid_genus2(g)) out.push_back(g);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string prototypes_to_json(i64 disc, int genus, const std::string& set_name,
                               const std::vector<std::vector<i64>>& items) {
    std::ostringstream os;
    os << "{\"disc\":" << disc << ",\"genus\":" << genus << ",\"set\":\"" << set_name << "\",\"items\":[";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) os << ",";
        os << "[";
        for (size_t j = 0; j < items[i].size(); ++j) {
            if (j) os << ",";
            os << items[i][j];
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

}  // namespace prym

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "prym/geometry.hpp"

namespace prym {

namespace {

const BoundaryArc* arc_with_other(const std::vector<BoundaryArc>& arcs, int other) {
    const BoundaryArc* found = nullptr;
    for (const auto& a : arcs)
        if (a.other == other) {
            if (found) return nullptr;  // ambiguous
            found = &a;
        }
    return found;
}

[[noreturn]] void not_eigenform(const std::string& why) {
    throw std::domain_error("not an eigenform decomposition: " + why);
}

}  // namespace

IdentifiedPrototype identify_prototype(const CylinderDecomposition& dec) {
    if (dec.model == DecompModel::C || dec.model == DecompModel::D)
        throw std::invalid_argument("identify_prototype: only 3-cylinder models carry prototypes");
    i64 D = dec.disc;
    int fixed = dec.fixed_cyl;
    int sw1 = -1, sw2 = -1;
    for (int c = 0; c < static_cast<int>(dec.cyls.size()); ++c) {
        if (c == fixed) continue;
        (sw1 < 0 ? sw1 : sw2) = c;
    }
    const Cylinder& cf = dec.cyls[fixed];
    const Cylinder& c1 = dec.cyls[sw1];
    const Cylinder& c2 = dec.cyls[sw2];
    if (!(c1.width == c2.width) || !(c1.height == c2.height))
        throw std::logic_error("identify_prototype: swapped pair is not isometric");

    // lambda from the core and height ratios; the twist never enters here
    bool aplus = dec.model == DecompModel::Aplus;
    QuadNum r = aplus ? c1.width / cf.width : cf.width / c1.width;
    QuadNum rh = aplus ? c1.height / cf.height : cf.height / c1.height;
    QuadNum denom = QuadNum::integer(1, D) + (aplus ? r * rh * mpq_class(2) : r * rh / mpq_class(2));
    if (denom.sign() <= 0) not_eigenform("degenerate ratio");
    QuadNum lam = QuadNum::root(D) / denom;
    QuadNum w_q = aplus ? r * lam : r * lam / mpq_class(2);
    QuadNum h_q = aplus ? rh * lam : rh * lam / mpq_class(2);
    QuadNum e_q = lam * mpq_class(2) - QuadNum::root(D);  // e = 2*lambda - sqrt(D)
    if (!w_q.is_integer() || !h_q.is_integer() || !e_q.is_integer())
        not_eigenform("cylinder ratios do not lie in a quadratic order");
    i64 w = w_q.to_integer(), h = h_q.to_integer(), e = e_q.to_integer();
    if (w <= 0 || h <= 0) not_eigenform("nonpositive moduli");
    if (e * e + 8 * w * h != D) not_eigenform("discriminant relation fails");

    // twist: align the canonical boundary markings.  In each layout the
    // reference saddle connections are recognizable from what lies across
    // them, and exactly one of the two swapped cylinders yields an integer.
    auto try_twist = [&](int swapped) -> std::optional<i64> {
        QuadNum start_upper, start_lower, chart_width;
        i64 scale_target;
        if (aplus) {
            // in a swapped cylinder: the self-glued arc on both boundaries
            const Cylinder& cs = dec.cyls[swapped];
            const BoundaryArc* up = arc_with_other(cs.upper, swapped);
            const BoundaryArc* lo = arc_with_other(cs.lower, swapped);
            if (!up || !lo) return std::nullopt;
            start_upper = up->start;
            start_lower = lo->start;
            chart_width = cs.width;
            scale_target = w;
        } else {
            // in the fixed cylinder: the arcs facing the chosen swapped one
            const BoundaryArc* up = arc_with_other(cf.upper, swapped);
            const BoundaryArc* lo = arc_with_other(cf.lower, dec.model == DecompModel::B ? swapped : fixed);
            if (!up || !lo) return std::nullopt;
            start_upper = up->start;
            start_lower = lo->start;
            chart_width = cf.width;
            scale_target = w;
        }
        QuadNum delta = start_upper - start_lower;
        QuadNum t_q = delta * QuadNum::integer(scale_target, D) / chart_width;
        // reduce modulo w (the chart wraps), then check integrality
        i64 k = qfloor(t_q / QuadNum::integer(w, D));
        t_q -= QuadNum::integer(k * w, D);
        if (!t_q.is_integer()) return std::nullopt;
        return t_q.to_integer();
    };
    std::optional<i64> t1 = try_twist(sw1), t2 = try_twist(sw2);
    i64 t_raw;
    if (aplus) {
        // both swapped charts must agree
        if (!t1 || !t2) not_eigenform("missing self-glued boundary arc");
        i64 g = gcd_i64(w, h);
        if (mod_floor(*t1, g) != mod_floor(*t2, g))
            throw std::logic_error("identify_prototype: swapped charts disagree on the twist");
        t_raw = *t1;
    } else {
        if (t1 && t2) {
            // the spurious choice is offset by lambda/2-multiples and is
            // non-integral except when it collides mod gcd
            i64 g = gcd_i64(w, h);
            if (mod_floor(*t1, g) != mod_floor(*t2, g))
                throw std::logic_error("identify_prototype: ambiguous twist alignment");
            t_raw = *t1;
        } else if (t1 || t2) {
            t_raw = t1 ? *t1 : *t2;
        } else {
            not_eigenform("no integral twist alignment");
        }
    }
    i64 t = mod_floor(t_raw, gcd_i64(w, h));

    IdentifiedPrototype out;
    out.proto = Prototype{w, h, t, e, D, 3, dec.model == DecompModel::B ? Model::B : Model::A};
    if (dec.model != DecompModel::B) out.eps = aplus ? +1 : -1;
    if (!is_valid_prototype(out.proto))
        not_eigenform("recovered tuple " + out.proto.str() + " violates the prototype conditions");
    return out;
}

// ---------------------------------------------------------------------------
// saddle connection enumeration by sector-narrowing unfolding

namespace {

struct DirCmp {
    bool operator()(const QVec& a, const QVec& b) const {
        int c = a.x.compare(b.x);
        if (c != 0) return c < 0;
        return a.y.compare(b.y) < 0;
    }
};

struct Unfolder {
    const TranslationSurface* s;
    QuadNum bound;
    std::set<QVec, DirCmp> found;
    long steps = 0;

    // does the segment [z1, z2] meet the square |x|,|y| <= bound?
    bool segment_hits_box(QVec z1, QVec z2) const {
        auto clip = [&](QVec& a, QVec& b, const QuadNum& nx, const QuadNum& ny,
                        const QuadNum& c) -> bool {
            // keep nx*x + ny*y <= c
            QuadNum fa = a.x * nx + a.y * ny - c;
            QuadNum fb = b.x * nx + b.y * ny - c;
            int sa = fa.sign(), sb = fb.sign();
            if (sa > 0 && sb > 0) return false;
            if (sa <= 0 && sb <= 0) return true;
            QuadNum u = fa / (fa - fb);
            QVec mid{a.x + (b.x - a.x) * u, a.y + (b.y - a.y) * u};
            if (sa > 0) a = mid;
            else b = mid;
            return true;
        };
        QuadNum one = QuadNum::integer(1, bound.disc());
        QuadNum zero = QuadNum::integer(0, bound.disc());
        return clip(z1, z2, one, zero, bound) && clip(z1, z2, -one, zero, bound) &&
               clip(z1, z2, zero, one, bound) && clip(z1, z2, zero, -one, bound);
    }

    bool in_box(const QVec& d) const {
        QuadNum ax = d.x.sign() < 0 ? -d.x : d.x;
        QuadNum ay = d.y.sign() < 0 ? -d.y : d.y;
        return !(bound < ax) && !(bound < ay);
    }

    void explore(int poly, const QVec& tau, QVec wlo, QVec whi, int depth) {
        if (++steps > 2000000) throw std::runtime_error("saddle connection search budget exhausted");
        const SurfacePolygon& pg = s->polys[poly];
        int n = pg.size();
        for (int i = 0; i < n; ++i) {
            QVec d = pg.verts[i] + tau;
            if (d.is_zero()) continue;
            if (cross(wlo, d).sign() >= 0 && cross(d, whi).sign() >= 0 && in_box(d)) found.insert(d);
        }
        for (int k = 0; k < n; ++k) {
            QVec a = pg.verts[k] + tau;
            QVec b = pg.verts[(k + 1) % n] + tau;
            if (cross(a, b).sign() <= 0) continue;  // edge seen edge-on or from behind
            // narrow the window to the cone subtended by this edge
            QVec lo = cross(wlo, a).sign() > 0 ? a : wlo;
            QVec hi = cross(b, whi).sign() > 0 ? b : whi;
            if (cross(lo, hi).sign() <= 0) continue;
            // visible part of the edge between rays lo and hi
            auto ray_hit = [&](const QVec& r) {
                QuadNum u = cross(r, a) / cross(r, a - b);
                return QVec{a.x + (b.x - a.x) * u, a.y + (b.y - a.y) * u};
            };
            QVec zlo = ray_hit(lo), zhi = ray_hit(hi);
            if (!segment_hits_box(zlo, zhi)) continue;
            EdgeRef q = s->partner[poly][k];
            explore(q.poly, tau + s->gluing_shift(poly, k), lo, hi, depth + 1);
        }
    }
};

}  // namespace

std::vector<QVec> saddle_connections(const TranslationSurface& s, const QuadNum& bound) {
    Unfolder u;
    u.s = &s;
    u.bound = QuadNum(bound.rational_part(), bound.root_part(), s.disc);
    for (int p = 0; p < static_cast<int>(s.polys.size()); ++p) {
        int n = s.polys[p].size();
        for (int i = 0; i < n; ++i) {
            QVec base = s.polys[p].verts[i];
            QVec out = s.polys[p].edge_vec(i);
            QVec inrev = s.polys[p].verts[(i + n - 1) % n] - s.polys[p].verts[i];
            u.explore(p, QVec{QuadNum::integer(0, s.disc), QuadNum::integer(0, s.disc)} - base, out,
                      inrev, 0);
        }
    }
    return {u.found.begin(), u.found.end()};
}

std::vector<SimpleCylinder> find_simple_cylinders(const TranslationSurface& s, const QuadNum& bound) {
    std::vector<QVec> sc = saddle_connections(s, bound);
    // one representative per unoriented direction
    std::vector<QVec> dirs;
    for (const auto& d : sc) {
        bool seen = false;
        for (const auto& e : dirs)
            if (cross(d, e).sign() == 0) seen = true;
        if (!seen) dirs.push_back(d);
    }
    std::vector<SimpleCylinder> out;
    for (const auto& d : dirs) {
        CylinderDecomposition dec = decompose(s, d);
        QuadNum n = dot(d, d);
        for (const auto& cyl : dec.cyls) {
            if (cyl.lower.size() != 1 || cyl.upper.size() != 1) continue;
            QuadNum scale = cyl.width / n;
            QVec core{d.x * scale, d.y * scale};
            QuadNum ax = core.x.sign() < 0 ? -core.x : core.x;
            QuadNum ay = core.y.sign() < 0 ? -core.y : core.y;
            if (bound < ax || bound < ay) continue;
            out.push_back({d, core, cyl.width});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// direction expressions over {w, h, t, L}

namespace {

struct DirParser {
    const std::string& src;
    size_t pos = 0;
    const Prototype& proto;

    explicit DirParser(const std::string& s, const Prototype& p) : src(s), proto(p) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip_ws();
        return pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]));
    }

    i64 parse_int() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("direction: expected number in '" + src + "'");
        return std::stoll(src.substr(start, pos - start));
    }

    std::optional<QuadNum> parse_symbol() {
        skip_ws();
        if (pos >= src.size()) return std::nullopt;
        char c = src[pos];
        i64 D = proto.disc;
        switch (c) {
            case 'w': ++pos; return QuadNum::integer(proto.w, D);
            case 'h': ++pos; return QuadNum::integer(proto.h, D);
            case 't': ++pos; return QuadNum::integer(proto.t, D);
            case 'L': ++pos; return proto_lambda(proto);
            default: return std::nullopt;
        }
    }

    // term := RAT ['*' SYM] ['/' INT] | SYM ['/' INT] | RAT SYM (juxtaposed)
    QuadNum parse_term() {
        skip_ws();
        mpq_class coef = 1;
        bool have_coef = false;
        if (peek_digit()) {
            i64 num = parse_int();
            coef = static_cast<long>(num);
            if (eat('/')) {
                if (peek_digit()) {
                    coef /= static_cast<long>(parse_int());
                } else {
                    throw std::invalid_argument("direction: expected denominator in '" + src + "'");
                }
            }
            have_coef = true;
            eat('*');
        }
        auto sym = parse_symbol();
        if (!sym) {
            if (!have_coef) throw std::invalid_argument("direction: expected term in '" + src + "'");
            return QuadNum::rational(coef, proto.disc);
        }
        QuadNum val = *sym * coef;
        if (eat('/')) val = val / mpq_class(static_cast<long>(parse_int()));
        return val;
    }

    QuadNum parse_expr() {
        skip_ws();
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        QuadNum acc = parse_term();
        if (sign < 0) acc = -acc;
        for (;;) {
            skip_ws();
            if (eat('+')) acc += parse_term();
            else if (eat('-')) acc -= parse_term();
            else break;
        }
        skip_ws();
        if (pos != src.size()) throw std::invalid_argument("direction: trailing input in '" + src + "'");
        return acc;
    }
};

}  // namespace

QuadNum parse_direction_component(const std::string& expr, const Prototype& p) {
    DirParser dp(expr, p);
    return dp.parse_expr();
}

QVec parse_direction(const std::string& expr, const Prototype& p) {
    size_t colon = expr.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("direction: expected 'EXPR:EXPR', got '" + expr + "'");
    return {parse_direction_component(expr.substr(0, colon), p),
            parse_direction_component(expr.substr(colon + 1), p)};
}

}  // namespace prym

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "prym/geometry.hpp"

namespace prym {

QuadNum SurfacePolygon::area2() const {
    QuadNum s = QuadNum::integer(0, verts.empty() ? 0 : verts[0].x.disc());
    for (int i = 0; i < size(); ++i) s += cross(verts[i], verts[(i + 1) % size()]);
    return s;
}

bool SurfacePolygon::contains(const QVec& p) const {
    for (int i = 0; i < size(); ++i)
        if (cross(edge_vec(i), p - verts[i]).sign() < 0) return false;
    return true;
}

bool SurfacePolygon::contains_interior(const QVec& p) const {
    for (int i = 0; i < size(); ++i)
        if (cross(edge_vec(i), p - verts[i]).sign() <= 0) return false;
    return true;
}

QVec TranslationSurface::gluing_shift(int p, int k) const {
    // the end of (p,k) maps to the start of the partner
    EdgeRef q = partner[p][k];
    return polys[q.poly].verts[q.edge] - polys[p].verts[(k + 1) % polys[p].size()];
}

QuadNum TranslationSurface::area() const {
    QuadNum s = QuadNum::integer(0, disc);
    for (const auto& pg : polys) s += pg.area2();
    return s / mpq_class(2);
}

namespace {

struct CornerUF {
    std::vector<int> parent;
    explicit CornerUF(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void TranslationSurface::validate(const QuadNum& expected_area) const {
    int np = static_cast<int>(polys.size());
    std::vector<int> offset(np + 1, 0);
    for (int p = 0; p < np; ++p) offset[p + 1] = offset[p] + polys[p].size();
    int ncorners = offset[np];

    // convexity and positive orientation
    for (const auto& pg : polys) {
        if (pg.area2().sign() <= 0) throw std::logic_error("surface: polygon not positively oriented");
        int n = pg.size();
        for (int i = 0; i < n; ++i)
            if (cross(pg.edge_vec(i), pg.edge_vec((i + 1) % n)).sign() < 0)
                throw std::logic_error("surface: polygon not convex");
    }

    // gluing involution + translation consistency
    int nedges = 0;
    for (int p = 0; p < np; ++p) {
        if (static_cast<int>(partner[p].size()) != polys[p].size())
            throw std::logic_error("surface: partner table size mismatch");
        for (int k = 0; k < polys[p].size(); ++k) {
            EdgeRef q = partner[p][k];
            if (!q.valid()) throw std::logic_error("surface: unglued edge");
            EdgeRef back = partner[q.poly][q.edge];
            if (!(back == EdgeRef{p, k})) throw std::logic_error("surface: gluing not involutive");
            QVec ev = polys[p].edge_vec(k);
            QVec pv = polys[q.poly].edge_vec(q.edge);
            if (!(ev + pv).is_zero()) throw std::logic_error("surface: glued edges not opposite");
            ++nedges;
        }
    }
    nedges /= 2;

    // corner identifications: start of edge k glues to the end of its partner
    CornerUF uf(ncorners);
    for (int p = 0; p < np; ++p)
        for (int k = 0; k < polys[p].size(); ++k) {
            EdgeRef q = partner[p][k];
            int corner = offset[p] + k;  // start of edge k
            int img = offset[q.poly] + (q.edge + 1) % polys[q.poly].size();
            uf.unite(corner, img);
        }
    std::set<int> classes;
    for (int i = 0; i < ncorners; ++i) classes.insert(uf.find(i));
    if (classes.size() != 1) throw std::logic_error("surface: expected a single cone point");
    int chi = 1 - nedges + np;
    if (chi != -4) throw std::logic_error("surface: Euler characteristic is not -4");

    // involution structure
    for (int p = 0; p < np; ++p) {
        int ip = involution_image[p];
        if (involution_image[ip] != p) throw std::logic_error("surface: involution not involutive");
        // rho maps the vertex set of p onto the vertex set of the image
        for (const auto& v : polys[p].verts) {
            QVec w = rho_point(v);
            bool hit = false;
            for (const auto& u : polys[ip].verts) hit = hit || u == w;
            if (!hit) throw std::logic_error("surface: involution does not match polygons");
        }
    }
    // rho must send gluings to gluings; count self-paired edge classes
    int fixed_points = 1;  // the cone point
    for (int p = 0; p < np; ++p)
        if (involution_image[p] == p &&
            polys[p].contains_interior(involution_center * mpq_class(1, 2)))
            ++fixed_points;
    for (int p = 0; p < np; ++p)
        for (int k = 0; k < polys[p].size(); ++k) {
            // image edge of (p,k): endpoints rho(b) -> rho(a) in image polygon
            QVec ra = rho_point(polys[p].verts[k]);
            QVec rb = rho_point(polys[p].verts[(k + 1) % polys[p].size()]);
            int ip = involution_image[p];
            int found = -1;
            for (int j = 0; j < polys[ip].size(); ++j)
                if (polys[ip].verts[j] == rb && polys[ip].verts[(j + 1) % polys[ip].size()] == ra) found = j;
            if (found < 0) throw std::logic_error("surface: involution does not preserve edges");
            EdgeRef img{ip, found};
            EdgeRef pk_partner = partner[p][k];
            EdgeRef img_partner = partner[img.poly][img.edge];
            // rho(partner(e)) == partner(rho(e)) is implied by checking this
            // for every edge; here verify rho(e)'s partner equals rho-image of
            // e's partner
            QVec pa = rho_point(polys[pk_partner.poly].verts[pk_partner.edge]);
            const auto& q = polys[img_partner.poly];
            if (!(q.verts[(img_partner.edge + 1) % q.size()] == pa))
                throw std::logic_error("surface: involution incompatible with gluings");
            // self-paired surface edge (rho maps the edge pair to itself):
            // contributes one interior fixed point (its midpoint)
            if (img_partner == EdgeRef{p, k} && (p < pk_partner.poly || (p == pk_partner.poly && k < pk_partner.edge)))
                ++fixed_points;
        }
    if (fixed_points != 4) {
        std::ostringstream os;
        os << "surface: involution has " << fixed_points << " fixed points, expected 4";
        throw std::logic_error(os.str());
    }

    if (!(area() == expected_area)) throw std::logic_error("surface: area mismatch");
}

std::string TranslationSurface::to_json() const {
    std::ostringstream os;
    os << "{\"disc\":" << disc << ",\"polygons\":[";
    for (size_t p = 0; p < polys.size(); ++p) {
        if (p) os << ",";
        os << "[";
        for (int i = 0; i < polys[p].size(); ++i) {
            if (i) os << ",";
            os << "[\"" << polys[p].verts[i].x.str() << "\",\"" << polys[p].verts[i].y.str() << "\"]";
        }
        os << "]";
    }
    os << "],\"gluings\":[";
    bool first = true;
    for (size_t p = 0; p < polys.size(); ++p)
        for (int k = 0; k < polys[p].size(); ++k) {
            EdgeRef q = partner[p][k];
            if (q.poly < static_cast<int>(p) || (q.poly == static_cast<int>(p) && q.edge < k)) continue;
            if (!first) os << ",";
            first = false;
            os << "[[" << p << "," << k << "],[" << q.poly << "," << q.edge << "]]";
        }
    os << "]}";
    return os.str();
}

namespace {

// helper: build a polygon from integer/QuadNum coordinate pairs
SurfacePolygon poly_of(std::vector<QVec> vs) { return SurfacePolygon{std::move(vs)}; }

void glue(TranslationSurface& s, int p, int k, int q, int j) {
    s.partner[p][k] = {q, j};
    s.partner[q][j] = {p, k};
}

}  // namespace

TranslationSurface build_surface(const Prototype& p, Model model, int eps) {
    if (p.genus != 3) throw std::invalid_argument("build_surface: genus-3 prototypes only");
    Prototype pm = p;
    pm.model = model;
    if (!is_valid_prototype(pm))
        throw std::invalid_argument("build_surface: " + p.str() + " is not valid for this model");

    i64 D = p.disc;
    auto Q = [D](i64 n) { return QuadNum::integer(n, D); };
    QuadNum lam = proto_lambda(p);
    QuadNum w = Q(p.w), h = Q(p.h), t = Q(p.t), zero = Q(0);

    TranslationSurface s;
    s.disc = D;

    if (model == Model::A && eps > 0) {
        // Fixed simple cylinder: the lam x lam square.  The two swapped w x h
        // cylinders sit above and below, each partially self-glued.
        QVec o(zero, zero);
        SurfacePolygon c0 = poly_of({o, QVec(lam, zero), QVec(lam, lam), QVec(zero, lam)});
        SurfacePolygon c1 = poly_of({QVec(lam - w, lam), QVec(zero, lam), QVec(lam, lam),
                                     QVec(lam + t, lam + h), QVec(t, lam + h), QVec(lam - w + t, lam + h)});
        SurfacePolygon c2 = poly_of({QVec(-t, -h), QVec(lam - t, -h), QVec(w - t, -h), QVec(w, zero),
                                     QVec(lam, zero), o});
        s.polys = {c0, c1, c2};
        s.partner.assign(3, {});
        s.partner[0].assign(4, {});
        s.partner[1].assign(6, {});
        s.partner[2].assign(6, {});
        glue(s, 0, 0, 2, 4);  // square bottom = top piece of lower cylinder
        glue(s, 0, 2, 1, 1);  // square top = bottom piece of upper cylinder
        glue(s, 0, 3, 0, 1);  // square left/right
        glue(s, 1, 5, 1, 2);  // upper cylinder left/right
        glue(s, 2, 5, 2, 2);  // lower cylinder left/right
        glue(s, 1, 4, 1, 0);  // upper top-left onto its own bottom overhang
        glue(s, 1, 3, 2, 0);  // upper top-right onto lower bottom-left
        glue(s, 2, 3, 2, 1);  // lower top overhang onto its own bottom-right
        s.involution_center = QVec(lam, lam);
        s.involution_image = {0, 2, 1};
        s.validate(lam * lam + w * h * mpq_class(2));
        return s;
    }

    // Models A- and B share the frame: the w x h fixed cylinder with twist t,
    // a square of side lam/2 attached on top at [t, t+s] and one below at
    // [w-s, w].  What distinguishes them is how the square tops and bottoms
    // close up: 2s < w leaves a self-glued stretch of the fixed cylinder
    // (model A-, both squares simple), s < w < 2s forces the squares to spill
    // into each other (model B, nothing simple).
    QuadNum sq = lam / mpq_class(2);
    QVec o(zero, zero);
    if (model == Model::A) {
        SurfacePolygon c0 = poly_of({o, QVec(w - sq - sq, zero), QVec(w - sq, zero), QVec(w, zero),
                                     QVec(w + t, h), QVec(t + sq + sq, h), QVec(t + sq, h), QVec(t, h)});
        SurfacePolygon s1 = poly_of({QVec(t, h), QVec(t + sq, h), QVec(t + sq, h + sq), QVec(t, h + sq)});
        SurfacePolygon s2 =
            poly_of({QVec(w - sq, -sq), QVec(w, -sq), QVec(w, zero), QVec(w - sq, zero)});
        s.polys = {c0, s1, s2};
        s.partner.assign(3, {});
        s.partner[0].assign(8, {});
        s.partner[1].assign(4, {});
        s.partner[2].assign(4, {});
        glue(s, 0, 2, 2, 2);  // bottom right piece = top of the lower square
        glue(s, 0, 6, 1, 0);  // top left piece = bottom of the upper square
        glue(s, 0, 7, 0, 3);  // fixed cylinder left/right
        glue(s, 1, 3, 1, 1);  // upper square left/right
        glue(s, 2, 3, 2, 1);  // lower square left/right
        glue(s, 1, 2, 0, 1);  // upper square top onto the bottom boundary
        glue(s, 2, 0, 0, 5);  // lower square bottom onto the top boundary
        glue(s, 0, 4, 0, 0);  // self-glued stretch
        s.involution_center = QVec(w + t, h);
        s.involution_image = {0, 2, 1};
        s.validate(w * h + sq * sq * mpq_class(2));
        return s;
    }

    // model B
    SurfacePolygon c0 =
        poly_of({o, QVec(w - sq, zero), QVec(w, zero), QVec(w + t, h), QVec(t + sq, h), QVec(t, h)});
    SurfacePolygon s1 = poly_of({QVec(t, h), QVec(t + sq, h), QVec(t + sq, h + sq),
                                 QVec(t + w - sq, h + sq), QVec(t, h + sq)});
    SurfacePolygon s2 = poly_of({QVec(w - sq, -sq), QVec(sq, -sq), QVec(w, -sq), QVec(w, zero),
                                 QVec(w - sq, zero)});
    s.polys = {c0, s1, s2};
    s.partner.assign(3, {});
    s.partner[0].assign(6, {});
    s.partner[1].assign(5, {});
    s.partner[2].assign(5, {});
    glue(s, 0, 4, 1, 0);  // top piece = bottom of the upper square
    glue(s, 0, 1, 2, 3);  // bottom right piece = top of the lower square
    glue(s, 0, 5, 0, 2);  // fixed cylinder left/right
    glue(s, 1, 4, 1, 1);  // upper square left/right
    glue(s, 2, 4, 2, 2);  // lower square left/right
    glue(s, 1, 3, 0, 0);  // upper-square top, left part, onto the bottom boundary
    glue(s, 1, 2, 2, 0);  // upper-square top, right part, onto the lower square bottom
    glue(s, 0, 3, 2, 1);  // top boundary free piece onto the lower square bottom
    s.involution_center = QVec(w + t, h);
    s.involution_image = {0, 2, 1};
    s.validate(w * h + sq * sq * mpq_class(2));
    return s;
}

std::string IdentifiedPrototype::str() const {
    std::string s = proto.str();
    if (eps) s = s.substr(0, s.size() - 1) + (eps.value() > 0 ? ",+)" : ",-)");
    return s;
}

std::string decomp_model_name(DecompModel m) {
    switch (m) {
        case DecompModel::Aplus: return "A+";
        case DecompModel::Aminus: return "A-";
        case DecompModel::B: return "B";
        case DecompModel::C: return "C";
        default: return "D";
    }
}

}  // namespace prym

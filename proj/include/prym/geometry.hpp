#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prym/prototypes.hpp"
#include "prym/quadnum.hpp"

namespace prym {

struct EdgeRef {
    int poly = -1, edge = -1;
    bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
    bool valid() const { return poly >= 0; }
};

// Convex polygon, vertices counterclockwise; edge k runs verts[k] ->
// verts[(k+1) % n].  Collinear vertices are allowed (edge subdivision points).
struct SurfacePolygon {
    std::vector<QVec> verts;

    int size() const { return static_cast<int>(verts.size()); }
    QVec edge_vec(int k) const { return verts[(k + 1) % size()] - verts[k]; }
    QuadNum area2() const;  // twice the signed area
    bool contains(const QVec& p) const;           // closed test
    bool contains_interior(const QVec& p) const;  // open test
};

// Flat surface given by polygons and translation gluings, together with the
// Prym involution z -> center - z (every builder's layout is centrally
// symmetric, so one center serves all polygons).
struct TranslationSurface {
    i64 disc = 0;
    std::vector<SurfacePolygon> polys;
    std::vector<std::vector<EdgeRef>> partner;  // partner[p][k] = glued edge
    QVec involution_center;
    std::vector<int> involution_image;  // polygon index of rho(polys[p])

    // translation carrying edge (p,k) onto its partner (reversed)
    QVec gluing_shift(int p, int k) const;
    // rho as a point map: (p, z) -> (involution_image[p], center - z)
    QVec rho_point(const QVec& z) const { return involution_center - z; }

    QuadNum area() const;

    // Structural checks: gluings are consistent translations, all corners glue
    // into a single cone point, Euler characteristic -4 (one zero of order 4,
    // genus 3), the involution preserves the gluing and has exactly 4 fixed
    // points, and the total area matches `expected_area`.
    void validate(const QuadNum& expected_area) const;

    std::string to_json() const;
};

// Canonical polygon realization of a genus-3 prototype.  Model A with eps=+1
// is the layout with the fixed simple cylinder; eps=-1 the one with the two
// swapped simple cylinders; Model B ignores eps.
TranslationSurface build_surface(const Prototype& p, Model model, int eps = +1);
inline TranslationSurface build_surface(const CompletePrototype& cp) {
    return build_surface(cp.proto, Model::A, cp.eps);
}

enum class DecompModel { Aplus, Aminus, B, C, D };
std::string decomp_model_name(DecompModel m);

// One saddle connection on a cylinder boundary: developed interval
// [start, start+length) in direction units, and the cylinder on the far side.
struct BoundaryArc {
    QuadNum start, length;
    int other = -1;  // cylinder index across this arc
};

struct Cylinder {
    QuadNum width;     // circumference, in units of the direction vector
    QuadNum height;    // in units of the perpendicular vector
    QuadNum base_off;  // developed offset of the lower boundary
    std::vector<BoundaryArc> lower, upper;  // cyclic, by increasing start
    int rho_image = -1;                     // involution image cylinder
};

struct CylinderDecomposition {
    i64 disc = 0;
    QVec direction;
    std::vector<Cylinder> cyls;
    DecompModel model = DecompModel::D;
    int fixed_cyl = -1;  // for 3-cylinder models
};

// One strip of a polygon between consecutive cut levels, in the
// direction-adapted frame (par, off), with its developing translation.
struct DevelopedPiece {
    int poly = -1;
    int stratum = -1;
    SurfacePolygon shape;
    int cyl = -1;
    QVec dev;
};

struct DecompositionDetail {
    CylinderDecomposition dec;
    std::vector<DevelopedPiece> pieces;
};

DecompositionDetail decompose_detail(const TranslationSurface& s, const QVec& dir,
                                     long budget = 1000000);

// Exact cylinder decomposition in a periodic direction.  Traces the five
// separatrices until each closes up into a saddle connection, cuts along
// them, and assembles the cylinders.  Throws std::runtime_error when the
// crossing budget is exhausted (non-periodic direction or a bug upstream).
CylinderDecomposition decompose(const TranslationSurface& s, const QVec& dir,
                                long budget = 1000000);

struct IdentifiedPrototype {
    Prototype proto;
    std::optional<int> eps;  // +1 for A+, -1 for A-, empty for model B
    std::string str() const;
};

// Normalizes an A+/A-/B decomposition back to its integer prototype.  Throws
// std::domain_error("not an eigenform decomposition") when the cylinder data
// does not fit any quadratic order, std::invalid_argument for C/D models.
IdentifiedPrototype identify_prototype(const CylinderDecomposition& dec);

struct SimpleCylinder {
    QVec direction;  // primitive direction used for the decomposition
    QVec core;       // core-curve holonomy
    QuadNum width;   // circumference in direction units
};

// All simple cylinders whose core holonomy has |x| <= bound and |y| <= bound,
// found by enumerating saddle connections up to the bound and decomposing in
// each direction.
std::vector<SimpleCylinder> find_simple_cylinders(const TranslationSurface& s, const QuadNum& bound);

// Saddle-connection holonomies with both coordinates within the bound
// (distinct vectors; the same vector may arise from several connections).
std::vector<QVec> saddle_connections(const TranslationSurface& s, const QuadNum& bound);

// Direction expressions over {w, h, t, L} with rational coefficients, e.g.
// "L/2 : h + L/2" or "3*w : -h - L".  L stands for lambda = (e + sqrt(D))/2.
QVec parse_direction(const std::string& expr, const Prototype& p);
QuadNum parse_direction_component(const std::string& expr, const Prototype& p);

}  // namespace prym

#include "prym/origami.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace prym {

bool Origami::transitive() const {
    int n = size();
    if (n == 0) return false;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int cnt = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : {right[u], up[u]})
            if (!seen[v]) {
                seen[v] = true;
                ++cnt;
                stack.push_back(v);
            }
    }
    return cnt == n;
}

std::vector<int> Origami::commutator_cycles() const {
    int n = size();
    std::vector<int> rinv(n), uinv(n);
    for (int i = 0; i < n; ++i) rinv[right[i]] = i, uinv[up[i]] = i;
    auto comm = [&](int i) { return uinv[rinv[up[right[i]]]]; };
    std::vector<bool> seen(n, false);
    std::vector<int> cycles;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        do {
            seen[j] = true;
            ++len;
            j = comm(j);
        } while (j != i);
        cycles.push_back(len);
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

void Origami::validate() const {
    int n = size();
    if (static_cast<int>(up.size()) != n) throw std::logic_error("origami: permutation size mismatch");
    std::vector<bool> a(n, false), b(n, false);
    for (int i = 0; i < n; ++i) {
        if (right[i] < 0 || right[i] >= n || a[right[i]]) throw std::logic_error("origami: right not a permutation");
        if (up[i] < 0 || up[i] >= n || b[up[i]]) throw std::logic_error("origami: up not a permutation");
        a[right[i]] = b[up[i]] = true;
    }
    if (!transitive()) throw std::logic_error("origami: not connected");
}

std::string Origami::str() const {
    std::ostringstream os;
    os << "r:";
    for (int i = 0; i < size(); ++i) os << " " << right[i];
    os << "\nu:";
    for (int i = 0; i < size(); ++i) os << " " << up[i];
    return os.str();
}

std::string Origami::canonical_key() const {
    // canonical relabeling: BFS numbering from each base square, take the
    // lexicographically smallest transition table
    int n = size();
    std::string best;
    for (int base = 0; base < n; ++base) {
        std::vector<int> label(n, -1);
        std::vector<int> order;
        label[base] = 0;
        order.push_back(base);
        for (size_t head = 0; head < order.size(); ++head) {
            int u = order[head];
            for (int v : {right[u], up[u]})
                if (label[v] < 0) {
                    label[v] = static_cast<int>(order.size());
                    order.push_back(v);
                }
        }
        std::ostringstream os;
        for (int u : order) os << label[right[u]] << "," << label[up[u]] << ";";
        std::string key = os.str();
        if (best.empty() || key < best) best = key;
    }
    return best;
}

bool is_isomorphic(const Origami& a, const Origami& b) {
    if (a.size() != b.size()) return false;
    return a.canonical_key() == b.canonical_key();
}

Origami act_L(const Origami& o) {
    // [[1,1],[0,1]]: rows shear right; the square above becomes the one above
    // and one step left
    int n = o.size();
    std::vector<int> rinv(n);
    for (int i = 0; i < n; ++i) rinv[o.right[i]] = i;
    Origami out;
    out.right = o.right;
    out.up.resize(n);
    for (int i = 0; i < n; ++i) out.up[i] = rinv[o.up[i]];
    out.validate();
    return out;
}

Origami act_R(const Origami& o) {
    // [[1,0],[1,1]]: columns shear up
    int n = o.size();
    std::vector<int> uinv(n);
    for (int i = 0; i < n; ++i) uinv[o.up[i]] = i;
    Origami out;
    out.up = o.up;
    out.right.resize(n);
    for (int i = 0; i < n; ++i) out.right[i] = uinv[o.right[i]];
    out.validate();
    return out;
}

std::vector<Origami> lr_orbit(const Origami& o, size_t max_size) {
    std::map<std::string, Origami> seen;
    std::vector<Origami> queue{o};
    seen.emplace(o.canonical_key(), o);
    while (!queue.empty()) {
        Origami cur = queue.back();
        queue.pop_back();
        for (const Origami& nxt : {act_L(cur), act_R(cur)}) {
            std::string key = nxt.canonical_key();
            if (seen.count(key)) continue;
            if (seen.size() >= max_size) throw std::runtime_error("origami orbit exceeds limit");
            seen.emplace(key, nxt);
            queue.push_back(nxt);
        }
    }
    std::vector<Origami> out;
    for (auto& [k, v] : seen) out.push_back(std::move(v));
    return out;
}

namespace {

// basis [[a, b], [0, c]] of the rank-2 lattice generated by rational vectors
struct Basis2 {
    mpq_class a, b, c;
};

Basis2 lattice_basis(const std::vector<std::pair<mpq_class, mpq_class>>& gens) {
    mpz_class den = 1;
    for (const auto& g : gens) {
        den = lcm(den, g.first.get_den());
        den = lcm(den, g.second.get_den());
    }
    mpz_class A = 0, B = 0, C = 0;
    for (const auto& g : gens) {
        mpq_class xq = g.first * den, yq = g.second * den;
        mpz_class x = xq.get_num(), y = yq.get_num();
        while (y != 0) {
            if (C == 0) {
                std::swap(C, y);
                std::swap(B, x);
                continue;
            }
            mpz_class q = y / C;
            y -= q * C;
            x -= q * B;
            if (y != 0) {
                std::swap(y, C);
                std::swap(x, B);
            }
        }
        A = gcd(A, x);
    }
    if (A == 0 || C == 0) throw std::domain_error("origami: degenerate period lattice");
    if (A < 0) A = -A;
    if (C < 0) C = -C;
    Basis2 out;
    out.a = mpq_class(A) / den;
    out.b = mpq_class(B) / den;
    out.c = mpq_class(C) / den;
    out.a.canonicalize();
    out.b.canonicalize();
    out.c.canonicalize();
    return out;
}

mpq_class rat(const QuadNum& q) {
    if (!q.is_rational()) throw std::domain_error("origami: irrational period on a square-tiled surface");
    return q.rational_part();
}

}  // namespace

Origami to_origami_surface(const TranslationSurface& s) {
    DecompositionDetail det =
        decompose_detail(s, {QuadNum::integer(1, s.disc), QuadNum::integer(0, s.disc)});
    const auto& cyls = det.dec.cyls;
    int ncyl = static_cast<int>(cyls.size());

    // the grid anchors at a singular point of each cylinder's lower boundary;
    // all singular positions agree modulo Z^2 because relative periods of a
    // one-zero square-tiled surface are absolute periods
    std::vector<i64> W(ncyl), H(ncyl), base(ncyl + 1, 0);
    std::vector<QuadNum> X0(ncyl), B0(ncyl);
    for (int c = 0; c < ncyl; ++c) {
        if (!cyls[c].width.is_integer() || !cyls[c].height.is_integer())
            throw std::domain_error("origami: non-integral cylinder on a square-tiled surface");
        W[c] = cyls[c].width.to_integer();
        H[c] = cyls[c].height.to_integer();
        X0[c] = cyls[c].lower[0].start;
        B0[c] = cyls[c].base_off;
        base[c + 1] = base[c] + W[c] * H[c];
    }
    int n = static_cast<int>(base[ncyl]);
    auto sq_id = [&](int c, i64 r, i64 k) {
        return static_cast<int>(base[c] + r * W[c] + mod_floor(k, W[c]));
    };

    i64 D = s.disc;
    auto qn = [D](i64 v) { return QuadNum::integer(v, D); };
    auto qn2 = [D](i64 num, i64 den) { return QuadNum::rational(mpq_class(static_cast<long>(num), static_cast<long>(den)), D); };

    // locate the piece of cylinder c containing a developed point (allowing
    // horizontal monodromy by multiples of W)
    auto locate_in_cyl = [&](int c, const QVec& dev_pt) -> std::pair<const DevelopedPiece*, QVec> {
        for (const auto& pc : det.pieces) {
            if (pc.cyl != c) continue;
            QVec local = dev_pt - pc.dev;
            // shift by multiples of the circumference until x fits the shape
            QuadNum minx = pc.shape.verts[0].x, maxx = minx;
            for (const auto& v : pc.shape.verts) {
                if (v.x < minx) minx = v.x;
                if (maxx < v.x) maxx = v.x;
            }
            i64 m0 = qfloor((minx - local.x) / cyls[c].width);
            for (i64 m = m0; m <= m0 + 2; ++m) {
                QVec cand{local.x + cyls[c].width * mpq_class(static_cast<long>(m)), local.y};
                if (pc.shape.contains(cand)) return {&pc, cand};
            }
        }
        throw std::logic_error("origami: developed point not found in its cylinder");
    };

    // straight vertical flow, crossing glued edges; never passes a vertex
    // because all x-coordinates used here are half-integral
    auto flow_up = [&](int poly, QVec pt, QuadNum dist) -> std::pair<int, QVec> {
        for (;;) {
            const SurfacePolygon& fp = s.polys[poly];
            int exit_edge = -1;
            QuadNum exit_t;
            for (int e = 0; e < fp.size(); ++e) {
                QVec a = fp.verts[e], b = fp.verts[(e + 1) % fp.size()];
                int sa = (a.x - pt.x).sign(), sb = (b.x - pt.x).sign();
                if (sa == 0 || sb == 0) {
                    if (sa == 0 && sb == 0) continue;
                    throw std::logic_error("origami: vertical flow through a vertex");
                }
                if (sa == sb) continue;
                QuadNum ycross = a.y + (b.y - a.y) * ((pt.x - a.x) / (b.x - a.x));
                QuadNum tc = ycross - pt.y;
                if (tc.sign() <= 0) continue;
                if (exit_edge < 0 || tc < exit_t) {
                    exit_edge = e;
                    exit_t = tc;
                }
            }
            if (exit_edge < 0 || !(exit_t < dist)) return {poly, {pt.x, pt.y + dist}};
            pt = QVec{pt.x, pt.y + exit_t} + s.gluing_shift(poly, exit_edge);
            dist -= exit_t;
            poly = s.partner[poly][exit_edge].poly;
        }
    };

    Origami o;
    o.right.assign(n, -1);
    o.up.assign(n, -1);
    for (int c = 0; c < ncyl; ++c) {
        for (i64 r = 0; r < H[c]; ++r)
            for (i64 k = 0; k < W[c]; ++k) {
                int id = sq_id(c, r, k);
                o.right[id] = sq_id(c, r, k + 1);
                if (r + 1 < H[c]) {
                    o.up[id] = sq_id(c, r + 1, k);
                    continue;
                }
                // cross the upper boundary at the top-edge midpoint
                QVec m_dev{X0[c] + qn(k) + qn2(1, 2), B0[c] + qn(H[c])};
                auto [pc, local] = locate_in_cyl(c, m_dev);
                int poly = pc->poly;
                // on a glued horizontal edge: step across before flowing up
                const SurfacePolygon& fp = s.polys[poly];
                for (int e = 0; e < fp.size(); ++e) {
                    QVec a = fp.verts[e], b = fp.verts[(e + 1) % fp.size()];
                    if (!(a.y == local.y) || !(b.y == local.y)) continue;
                    QuadNum lo = a.x < b.x ? a.x : b.x, hi = a.x < b.x ? b.x : a.x;
                    if (lo < local.x && local.x < hi && b.x < a.x) {
                        // upper side of the polygon (CCW runs right to left)
                        local = local + s.gluing_shift(poly, e);
                        poly = s.partner[poly][e].poly;
                        break;
                    }
                }
                auto [up_poly, up_pt] = flow_up(poly, local, qn2(1, 2));
                int target = -1;
                for (const auto& qc : det.pieces) {
                    if (qc.poly != up_poly || !qc.shape.contains(up_pt)) continue;
                    QVec dev = up_pt + qc.dev;
                    int c2 = qc.cyl;
                    i64 r2 = qfloor(dev.y - cyls[c2].base_off);
                    i64 k2 = qfloor(dev.x - cyls[c2].lower[0].start);
                    target = sq_id(c2, r2, k2);
                    break;
                }
                if (target < 0) throw std::logic_error("origami: up neighbor not located");
                o.up[id] = target;
            }
    }
    o.validate();
    if (QuadNum::integer(n, D) != s.area()) throw std::logic_error("origami: square count != area");
    return o;
}

Origami to_origami(const CompletePrototype& cp) {
    if (!is_perfect_square(cp.proto.disc))
        throw std::domain_error("to_origami: discriminant is not a perfect square");
    TranslationSurface s = build_surface(cp);

    // period lattice = span of all edge vectors (single cone point, so every
    // edge is a closed loop)
    std::vector<std::pair<mpq_class, mpq_class>> gens;
    for (int p = 0; p < static_cast<int>(s.polys.size()); ++p)
        for (int k = 0; k < s.polys[p].size(); ++k) {
            QVec e = s.polys[p].edge_vec(k);
            gens.emplace_back(rat(e.x), rat(e.y));
        }
    Basis2 bs = lattice_basis(gens);
    // inverse of [[a, b], [0, c]]
    mpq_class ia = 1 / bs.a, ic = 1 / bs.c, ib = -bs.b / (bs.a * bs.c);

    TranslationSurface ns = s;
    auto transform = [&](const QVec& v) {
        mpq_class x = rat(v.x), y = rat(v.y);
        return QVec{QuadNum::rational(ia * x + ib * y, s.disc), QuadNum::rational(ic * y, s.disc)};
    };
    for (auto& pg : ns.polys)
        for (auto& v : pg.verts) v = transform(v);
    ns.involution_center = transform(s.involution_center);
    return to_origami_surface(ns);
}

}  // namespace prym

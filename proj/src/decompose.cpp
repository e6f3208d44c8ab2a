#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "prym/geometry.hpp"

namespace prym {

namespace {

// All work happens in direction-adapted coordinates: par(x) = dot(v,x),
// off(x) = cross(v,x).  The flow becomes horizontal, its leaves have constant
// off, and every comparison stays exact in Q(sqrt(D)).

struct Chord {
    QuadNum off;
    QuadNum p1, p2;  // par interval, p1 < p2
};

struct Piece {
    int poly = -1;
    int stratum = -1;
    SurfacePolygon shape;  // frame coordinates
    int cyl = -1;
    QVec dev;
    bool developed = false;
};

struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct Interval {
    QuadNum a, b;
};

std::vector<Interval> merged(std::vector<Interval> xs) {
    std::sort(xs.begin(), xs.end(), [](const Interval& u, const Interval& w) { return u.a < w.a; });
    std::vector<Interval> out;
    for (auto& x : xs) {
        if (!out.empty() && !(out.back().b < x.a)) {
            if (out.back().b < x.b) out.back().b = x.b;
        } else {
            out.push_back(x);
        }
    }
    return out;
}

// parts of [a,b] not covered by `cover` (positive length only)
std::vector<Interval> uncovered(const QuadNum& a, const QuadNum& b, std::vector<Interval> cover) {
    cover = merged(std::move(cover));
    std::vector<Interval> out;
    QuadNum cur = a;
    for (const auto& c : cover) {
        QuadNum lo = c.a < a ? a : c.a;
        if (cur < lo && cur < b) out.push_back({cur, lo < b ? lo : b});
        if (cur < c.b) cur = c.b;
    }
    if (cur < b) out.push_back({cur, b});
    return out;
}

SurfacePolygon clip_slab(const SurfacePolygon& poly, const QuadNum& lo, const QuadNum& hi) {
    auto clip = [](const std::vector<QVec>& in, const QuadNum& level, int keep_sign) {
        std::vector<QVec> out;
        int n = static_cast<int>(in.size());
        for (int i = 0; i < n; ++i) {
            const QVec& a = in[i];
            const QVec& b = in[(i + 1) % n];
            int sa = (a.y - level).sign() * keep_sign;
            int sb = (b.y - level).sign() * keep_sign;
            if (sa >= 0) out.push_back(a);
            if ((sa > 0 && sb < 0) || (sa < 0 && sb > 0)) {
                QuadNum u = (level - a.y) / (b.y - a.y);
                out.push_back({a.x + (b.x - a.x) * u, level});
            }
        }
        return out;
    };
    std::vector<QVec> vs = clip(poly.verts, lo, +1);
    vs = clip(vs, hi, -1);
    std::vector<QVec> cleaned;
    for (const auto& p : vs)
        if (cleaned.empty() || !(cleaned.back() == p)) cleaned.push_back(p);
    if (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
    return SurfacePolygon{cleaned};
}

struct Work {
    const TranslationSurface* surf = nullptr;
    i64 D = 0;
    std::vector<SurfacePolygon> fpolys;
    std::vector<std::vector<QVec>> fshift;
    std::vector<std::vector<bool>> par_edge;
    std::vector<std::vector<Chord>> chords;
    std::vector<std::vector<QuadNum>> offsets;
    std::vector<Piece> pieces;
    std::vector<std::vector<int>> piece_at;

    QuadNum qzero() const { return QuadNum::integer(0, D); }

    int stratum_containing(int poly, const QuadNum& level) const {
        const auto& offs = offsets[poly];
        for (size_t i = 0; i + 1 < offs.size(); ++i)
            if (!(level < offs[i]) && level < offs[i + 1]) return static_cast<int>(i);
        throw std::logic_error("decompose: level outside polygon");
    }
    int stratum_with_top(int poly, const QuadNum& level) const {
        const auto& offs = offsets[poly];
        for (size_t i = 0; i + 1 < offs.size(); ++i)
            if (offs[i + 1] == level) return static_cast<int>(i);
        throw std::logic_error("decompose: no stratum with given top");
    }
    int stratum_with_bottom(int poly, const QuadNum& level) const {
        const auto& offs = offsets[poly];
        for (size_t i = 0; i + 1 < offs.size(); ++i)
            if (offs[i] == level) return static_cast<int>(i);
        throw std::logic_error("decompose: no stratum with given bottom");
    }

    // cross-section [xL,xR] of a polygon at a level
    Interval cross_section(int poly, const QuadNum& y) const {
        const SurfacePolygon& pg = fpolys[poly];
        bool found = false;
        QuadNum lo, hi;
        int n = pg.size();
        for (int k = 0; k < n; ++k) {
            const QVec& a = pg.verts[k];
            const QVec& b = pg.verts[(k + 1) % n];
            int sa = (a.y - y).sign(), sb = (b.y - y).sign();
            auto add = [&](const QuadNum& x) {
                if (!found) {
                    lo = hi = x;
                    found = true;
                } else {
                    if (x < lo) lo = x;
                    if (hi < x) hi = x;
                }
            };
            if (sa == 0) add(a.x);
            if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0))
                add(a.x + (b.x - a.x) * ((y - a.y) / (b.y - a.y)));
        }
        if (!found) throw std::logic_error("decompose: empty cross-section");
        return {lo, hi};
    }

    std::vector<Interval> chord_cover(int poly, const QuadNum& level) const {
        std::vector<Interval> cover;
        for (const auto& c : chords[poly])
            if (c.off == level) cover.push_back({c.p1, c.p2});
        return cover;
    }

    bool is_orig_vertex(int poly, const QVec& pt) const {
        for (const auto& v : fpolys[poly].verts)
            if (v == pt) return true;
        return false;
    }
};

void trace_separatrices(Work& w, long budget) {
    struct Start {
        int poly, corner;
    };
    std::vector<Start> starts;
    int slots = 0;
    for (int p = 0; p < static_cast<int>(w.fpolys.size()); ++p) {
        int n = w.fpolys[p].size();
        for (int i = 0; i < n; ++i) {
            QVec out = w.fpolys[p].edge_vec(i);
            QVec inrev = w.fpolys[p].verts[(i + n - 1) % n] - w.fpolys[p].verts[i];
            bool along_out = out.y.sign() == 0 && out.x.sign() > 0;
            bool strict = cross(out, inrev).sign() == 0 ? out.y.sign() < 0
                                                        : out.y.sign() < 0 && inrev.y.sign() > 0;
            if (along_out) ++slots;
            if (strict) {
                ++slots;
                starts.push_back({p, i});
            }
        }
    }
    if (slots != 5)
        throw std::logic_error("decompose: expected 5 separatrices, found " + std::to_string(slots));

    for (const Start& st : starts) {
        int p = st.poly;
        QVec cur = w.fpolys[p].verts[st.corner];
        for (;;) {
            if (--budget < 0) throw std::runtime_error("direction not recognized as periodic within budget");
            const SurfacePolygon& poly = w.fpolys[p];
            int n = poly.size();
            int best_edge = -1;
            QuadNum best_x;
            bool best_corner = false;
            for (int k = 0; k < n; ++k) {
                const QVec& a = poly.verts[k];
                const QVec& b = poly.verts[(k + 1) % n];
                int sa = (a.y - cur.y).sign(), sb = (b.y - cur.y).sign();
                if (sa == sb) continue;  // includes flow-parallel edges
                QuadNum x;
                bool corner = false;
                if (sa == 0) {
                    x = a.x;
                    corner = true;
                } else if (sb == 0) {
                    x = b.x;
                    corner = true;
                } else {
                    x = a.x + (b.x - a.x) * ((cur.y - a.y) / (b.y - a.y));
                }
                if (!(cur.x < x)) continue;
                if (best_edge < 0 || x < best_x || (x == best_x && corner)) {
                    best_edge = k;
                    best_x = x;
                    best_corner = corner;
                }
            }
            if (best_edge < 0) throw std::logic_error("decompose: ray found no exit");
            w.chords[p].push_back({cur.y, cur.x, best_x});
            if (best_corner) break;
            QVec exit{best_x, cur.y};
            cur = exit + w.fshift[p][best_edge];
            p = w.surf->partner[p][best_edge].poly;
        }
    }
}

void cut_pieces(Work& w) {
    int np = static_cast<int>(w.fpolys.size());
    w.offsets.resize(np);
    w.piece_at.resize(np);
    for (int p = 0; p < np; ++p) {
        std::vector<QuadNum> levels;
        for (const auto& v : w.fpolys[p].verts) levels.push_back(v.y);
        for (const auto& c : w.chords[p]) levels.push_back(c.off);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end(),
                                 [](const QuadNum& a, const QuadNum& b) { return a == b; }),
                     levels.end());
        w.offsets[p] = levels;
        w.piece_at[p].assign(levels.size() - 1, -1);
        for (size_t i = 0; i + 1 < levels.size(); ++i) {
            Piece pc;
            pc.poly = p;
            pc.stratum = static_cast<int>(i);
            pc.shape = clip_slab(w.fpolys[p], levels[i], levels[i + 1]);
            if (pc.shape.size() < 3) throw std::logic_error("decompose: degenerate piece");
            w.piece_at[p][i] = static_cast<int>(w.pieces.size());
            w.pieces.push_back(std::move(pc));
        }
    }
}

}  // namespace

CylinderDecomposition decompose(const TranslationSurface& s, const QVec& dir, long budget) {
    return decompose_detail(s, dir, budget).dec;
}

DecompositionDetail decompose_detail(const TranslationSurface& s, const QVec& dir, long budget) {
    if (dir.is_zero()) throw std::invalid_argument("decompose: zero direction");
    Work w;
    w.surf = &s;
    w.D = s.disc;
    int np = static_cast<int>(s.polys.size());
    w.fpolys.resize(np);
    w.fshift.resize(np);
    w.par_edge.resize(np);
    w.chords.resize(np);
    for (int p = 0; p < np; ++p) {
        for (const auto& v : s.polys[p].verts) w.fpolys[p].verts.push_back({dot(dir, v), cross(dir, v)});
        for (int k = 0; k < s.polys[p].size(); ++k) {
            QVec sh = s.gluing_shift(p, k);
            w.fshift[p].push_back({dot(dir, sh), cross(dir, sh)});
        }
        for (int k = 0; k < s.polys[p].size(); ++k)
            w.par_edge[p].push_back(w.fpolys[p].edge_vec(k).y.sign() == 0);
    }

    trace_separatrices(w, budget);
    cut_pieces(w);

    // piece adjacency: across uncovered stretches of cut lines, and across
    // glued non-parallel edges
    std::vector<std::vector<std::pair<int, QVec>>> adj(w.pieces.size());
    QVec zero{w.qzero(), w.qzero()};
    for (int p = 0; p < np; ++p) {
        const auto& offs = w.offsets[p];
        for (size_t i = 0; i + 2 < offs.size(); ++i) {
            const QuadNum& level = offs[i + 1];
            Interval xs = w.cross_section(p, level);
            if (!(xs.a < xs.b)) continue;
            if (!uncovered(xs.a, xs.b, w.chord_cover(p, level)).empty()) {
                adj[w.piece_at[p][i]].push_back({w.piece_at[p][i + 1], zero});
                adj[w.piece_at[p][i + 1]].push_back({w.piece_at[p][i], zero});
            }
        }
        for (int k = 0; k < s.polys[p].size(); ++k) {
            if (w.par_edge[p][k]) continue;
            EdgeRef q = s.partner[p][k];
            QVec a = w.fpolys[p].verts[k];
            QVec b = w.fpolys[p].verts[(k + 1) % w.fpolys[p].size()];
            QuadNum lo = a.y < b.y ? a.y : b.y;
            QuadNum hi = a.y < b.y ? b.y : a.y;
            for (size_t i = 0; i + 1 < offs.size(); ++i) {
                QuadNum slo = offs[i] < lo ? lo : offs[i];
                QuadNum shi = hi < offs[i + 1] ? hi : offs[i + 1];
                if (!(slo < shi)) continue;
                QuadNum mid = (slo + shi) / mpq_class(2);
                int other = w.piece_at[q.poly][w.stratum_containing(q.poly, mid + w.fshift[p][k].y)];
                adj[w.piece_at[p][i]].push_back({other, w.fshift[p][k]});
            }
        }
    }

    UF uf(static_cast<int>(w.pieces.size()));
    for (size_t i = 0; i < w.pieces.size(); ++i)
        for (const auto& [j, sh] : adj[i]) uf.unite(static_cast<int>(i), j);

    std::map<int, int> canon;
    int ncyl = 0;
    for (size_t i = 0; i < w.pieces.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        auto it = canon.find(r);
        if (it == canon.end()) it = canon.emplace(r, ncyl++).first;
        w.pieces[i].cyl = it->second;
    }

    // develop pieces cylinder by cylinder
    for (size_t root = 0; root < w.pieces.size(); ++root) {
        if (w.pieces[root].developed) continue;
        w.pieces[root].dev = zero;
        w.pieces[root].developed = true;
        std::vector<int> stack{static_cast<int>(root)};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [vtx, shift] : adj[u]) {
                if (w.pieces[vtx].developed) continue;
                // a point z in u's chart is z + shift in vtx's chart
                w.pieces[vtx].dev = w.pieces[u].dev - shift;
                w.pieces[vtx].developed = true;
                stack.push_back(vtx);
            }
        }
    }

    CylinderDecomposition dec;
    dec.disc = s.disc;
    dec.direction = dir;
    dec.cyls.resize(ncyl);

    std::vector<QuadNum> area2(ncyl, w.qzero());
    std::vector<QuadNum> omin(ncyl), omax(ncyl);
    std::vector<bool> oset(ncyl, false);
    for (const auto& pc : w.pieces) {
        area2[pc.cyl] += pc.shape.area2();
        for (const auto& v : pc.shape.verts) {
            QuadNum o = v.y + pc.dev.y;
            if (!oset[pc.cyl]) {
                omin[pc.cyl] = omax[pc.cyl] = o;
                oset[pc.cyl] = true;
            } else {
                if (o < omin[pc.cyl]) omin[pc.cyl] = o;
                if (omax[pc.cyl] < o) omax[pc.cyl] = o;
            }
        }
    }

    struct RawSeg {
        QuadNum a, b;
        int other;
        bool sing_a, sing_b;
    };
    std::vector<std::vector<RawSeg>> lower_segs(ncyl), upper_segs(ncyl);

    for (const auto& pc : w.pieces) {
        int n = pc.shape.size();
        for (int k = 0; k < n; ++k) {
            QVec a = pc.shape.verts[k];
            QVec b = pc.shape.verts[(k + 1) % n];
            if (!(a.y == b.y) || a.x == b.x) continue;
            bool is_lower = a.x < b.x;  // CCW: the lower side runs left to right
            QuadNum dev_o = a.y + pc.dev.y;
            if (is_lower ? !(dev_o == omin[pc.cyl]) : !(dev_o == omax[pc.cyl])) continue;
            const QuadNum& level = a.y;
            QuadNum xl = is_lower ? a.x : b.x;
            QuadNum xr = is_lower ? b.x : a.x;

            // split [xl, xr] along the flow-parallel edges of the polygon;
            // whatever remains lies on chords
            std::vector<Interval> edge_parts;
            auto emit = [&](const QuadNum& u1, const QuadNum& u2, int other) {
                RawSeg seg;
                seg.a = u1 + pc.dev.x;
                seg.b = u2 + pc.dev.x;
                seg.other = other;
                seg.sing_a = w.is_orig_vertex(pc.poly, {u1, level});
                seg.sing_b = w.is_orig_vertex(pc.poly, {u2, level});
                (is_lower ? lower_segs[pc.cyl] : upper_segs[pc.cyl]).push_back(seg);
            };
            const SurfacePolygon& fp = w.fpolys[pc.poly];
            for (int e = 0; e < fp.size(); ++e) {
                if (!w.par_edge[pc.poly][e]) continue;
                QVec ea = fp.verts[e], eb = fp.verts[(e + 1) % fp.size()];
                if (!(ea.y == level)) continue;
                QuadNum el = ea.x < eb.x ? ea.x : eb.x;
                QuadNum er = ea.x < eb.x ? eb.x : ea.x;
                QuadNum u1 = el < xl ? xl : el;
                QuadNum u2 = xr < er ? xr : er;
                if (!(u1 < u2)) continue;
                EdgeRef q = s.partner[pc.poly][e];
                QuadNum target = level + w.fshift[pc.poly][e].y;
                int st = is_lower ? w.stratum_with_top(q.poly, target)
                                  : w.stratum_with_bottom(q.poly, target);
                emit(u1, u2, w.pieces[w.piece_at[q.poly][st]].cyl);
                edge_parts.push_back({u1, u2});
            }
            for (const auto& rest : uncovered(xl, xr, edge_parts)) {
                // must be chord-covered; the far side is the neighbor stratum
                QuadNum mid = (rest.a + rest.b) / mpq_class(2);
                bool covered = false;
                for (const auto& c : w.chords[pc.poly])
                    if (c.off == level && !(mid < c.p1) && mid < c.p2) covered = true;
                if (!covered) throw std::logic_error("decompose: boundary stretch neither edge nor chord");
                int st = pc.stratum + (is_lower ? -1 : +1);
                if (st < 0 || st >= static_cast<int>(w.piece_at[pc.poly].size()))
                    throw std::logic_error("decompose: chord boundary at polygon rim");
                emit(rest.a, rest.b, w.pieces[w.piece_at[pc.poly][st]].cyl);
            }
        }
    }

    auto stitch = [&](std::vector<RawSeg> segs, const QuadNum& width) {
        if (segs.empty()) throw std::logic_error("decompose: empty boundary");
        // the developed coordinates are only well defined modulo the
        // circumference; reduce into [0, width), splitting wrapped segments
        {
            std::vector<RawSeg> reduced;
            for (auto sg : segs) {
                i64 k = qfloor(sg.a / width);
                QuadNum shift = width * mpq_class(static_cast<long>(k));
                sg.a -= shift;
                sg.b -= shift;
                if (width < sg.b) {
                    RawSeg head = sg, tail = sg;
                    head.b = width;
                    head.sing_b = false;
                    tail.a = QuadNum::integer(0, width.disc());
                    tail.b = sg.b - width;
                    tail.sing_a = false;
                    reduced.push_back(head);
                    reduced.push_back(tail);
                } else {
                    reduced.push_back(sg);
                }
            }
            segs = std::move(reduced);
        }
        std::sort(segs.begin(), segs.end(), [](const RawSeg& x, const RawSeg& y) { return x.a < y.a; });
        size_t n = segs.size();
        for (size_t i = 0; i + 1 < n; ++i)
            if (!(segs[i].b == segs[i + 1].a)) throw std::logic_error("decompose: boundary has gaps");
        if (!(segs.back().b - segs.front().a == width))
            throw std::logic_error("decompose: boundary does not tile the circle");
        size_t start = n;
        for (size_t i = 0; i < n; ++i) {
            bool sing = segs[i].sing_a || segs[(i + n - 1) % n].sing_b;
            if (sing) {
                start = i;
                break;
            }
        }
        if (start == n) throw std::logic_error("decompose: boundary without singular point");
        std::vector<BoundaryArc> arcs;
        QuadNum arc_start = segs[start].a;
        QuadNum arc_len = QuadNum::integer(0, width.disc());
        int arc_other = segs[start].other;
        for (size_t step = 0; step < n; ++step) {
            const RawSeg& sg = segs[(start + step) % n];
            bool sing = sg.sing_a || segs[(start + step + n - 1) % n].sing_b;
            if (step > 0 && sing) {
                arcs.push_back({arc_start, arc_len, arc_other});
                arc_start = arc_start + arc_len;
                arc_len = QuadNum::integer(0, width.disc());
                arc_other = sg.other;
            }
            if (sg.other != arc_other) throw std::logic_error("decompose: inconsistent arc far side");
            arc_len += sg.b - sg.a;
        }
        arcs.push_back({arc_start, arc_len, arc_other});
        QuadNum total = QuadNum::integer(0, width.disc());
        for (const auto& a : arcs) total += a.length;
        if (!(total == width)) throw std::logic_error("decompose: boundary does not close up");
        return arcs;
    };

    for (int c = 0; c < ncyl; ++c) {
        Cylinder& cyl = dec.cyls[c];
        cyl.height = omax[c] - omin[c];
        cyl.base_off = omin[c];
        QuadNum area = area2[c] / mpq_class(2);
        cyl.width = area / cyl.height;
        cyl.lower = stitch(lower_segs[c], cyl.width);
        cyl.upper = stitch(upper_segs[c], cyl.width);
    }

    // cylinder involution from a sample interior point
    QVec c_f{dot(dir, s.involution_center), cross(dir, s.involution_center)};
    for (int c = 0; c < ncyl; ++c) {
        const Piece* pick = nullptr;
        for (const auto& pc : w.pieces)
            if (pc.cyl == c) {
                pick = &pc;
                break;
            }
        QVec sum = zero;
        for (const auto& v : pick->shape.verts) sum = sum + v;
        QVec sample = sum * mpq_class(1, static_cast<long>(pick->shape.size()));
        QVec img = c_f - sample;
        int ip = s.involution_image[pick->poly];
        dec.cyls[c].rho_image = w.pieces[w.piece_at[ip][w.stratum_containing(ip, img.y)]].cyl;
    }
    for (int c = 0; c < ncyl; ++c)
        if (dec.cyls[dec.cyls[c].rho_image].rho_image != c)
            throw std::logic_error("decompose: cylinder involution inconsistent");

    int nfixed = 0;
    for (int c = 0; c < ncyl; ++c)
        if (dec.cyls[c].rho_image == c) {
            ++nfixed;
            dec.fixed_cyl = c;
        }
    if (ncyl == 1 && nfixed == 1) {
        dec.model = DecompModel::D;
    } else if (ncyl == 2 && nfixed == 0) {
        dec.model = DecompModel::C;
        dec.fixed_cyl = -1;
    } else if (ncyl == 3 && nfixed == 1) {
        size_t k = dec.cyls[dec.fixed_cyl].lower.size();
        if (dec.cyls[dec.fixed_cyl].upper.size() != k)
            throw std::logic_error("decompose: fixed cylinder boundary mismatch");
        dec.model = k == 1 ? DecompModel::Aplus : k == 2 ? DecompModel::B : DecompModel::Aminus;
    } else {
        throw std::logic_error("decompose: unexpected cylinder structure");
    }

    DecompositionDetail detail;
    detail.dec = std::move(dec);
    detail.pieces.reserve(w.pieces.size());
    for (auto& pc : w.pieces)
        detail.pieces.push_back({pc.poly, pc.stratum, std::move(pc.shape), pc.cyl, pc.dev});
    return detail;
}

}  // namespace prym

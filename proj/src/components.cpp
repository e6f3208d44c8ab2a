#include "prym/components.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace prym {

std::string ButterflyGraph::node_label(int i) const {
    if (set == 'P') return protos[i].str();
    if (set == 'Q') return completes[i].str();
    return std::to_string(reduced[i].e);
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

template <typename T>
std::map<T, int> index_of(const std::vector<T>& v) {
    std::map<T, int> m;
    for (size_t i = 0; i < v.size(); ++i) m.emplace(v[i], static_cast<int>(i));
    return m;
}

}  // namespace

ButterflyGraph build_graph(i64 disc, int genus, char set) {
    if (mod_floor(disc, 4) != 0 && mod_floor(disc, 4) != 1)
        throw std::invalid_argument("build_graph: disc must be 0 or 1 mod 4");
    ButterflyGraph g;
    g.disc = disc;
    g.genus = genus;
    g.set = set;
    if (set == 'P' || set == 'Q') {
        g.protos = enumerate_prototypes(disc, genus, Model::A);
        auto idx = index_of(g.protos);
        std::vector<GraphEdge> edges;
        for (int i = 0; i < static_cast<int>(g.protos.size()); ++i) {
            const Prototype& p = g.protos[i];
            std::vector<MoveLabel> moves;
            for (i64 q = 1; q <= max_admissible_q(p); ++q) moves.push_back(MoveLabel::finite(q));
            moves.push_back(MoveLabel::inf());
            for (const MoveLabel& mv : moves) {
                Prototype img = apply_move(p, mv);
                auto it = idx.find(img);
                if (it == idx.end())
                    throw std::logic_error("build_graph: move image not in enumeration: " + img.str());
                edges.push_back({i, it->second, mv});
            }
        }
        if (set == 'P') {
            g.edges = std::move(edges);
        } else {
            // sign double cover: node 2i is (p_i,+), node 2i+1 is (p_i,-);
            // every move flips the sign
            g.completes.reserve(2 * g.protos.size());
            for (const auto& p : g.protos) {
                g.completes.push_back({p, +1});
                g.completes.push_back({p, -1});
            }
            for (const auto& e : edges) {
                g.edges.push_back({2 * e.from, 2 * e.to + 1, e.label});
                g.edges.push_back({2 * e.from + 1, 2 * e.to, e.label});
            }
            g.protos.clear();
        }
    } else if (set == 'S') {
        g.reduced = enumerate_reduced(disc, genus);
        auto idx = index_of(g.reduced);
        // the image -e-4q lies in S_D only if (e+4q)^2 < D, and q = 1 always
        // satisfies this for e in S_D
        for (int i = 0; i < static_cast<int>(g.reduced.size()); ++i) {
            const ReducedClass& r = g.reduced[i];
            for (i64 q = 1; (r.e + 4 * q) * (r.e + 4 * q) < disc; ++q) {
                auto img = reduced_move(r, q);
                if (img) g.edges.push_back({i, idx.at(*img), MoveLabel::finite(q)});
            }
        }
    } else {
        throw std::invalid_argument("build_graph: unknown set");
    }
    return g;
}

std::vector<int> component_ids(const ButterflyGraph& g) {
    int n = g.node_count();
    UnionFind uf(n);
    for (const auto& e : g.edges) uf.unite(e.from, e.to);
    std::vector<int> ids(n, -1);
    int next = 0;
    std::map<int, int> canon;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        auto it = canon.find(r);
        if (it == canon.end()) it = canon.emplace(r, next++).first;
        ids[i] = it->second;
    }
    return ids;
}

int component_count(const ButterflyGraph& g) {
    auto ids = component_ids(g);
    return ids.empty() ? 0 : 1 + *std::max_element(ids.begin(), ids.end());
}

int component_count(i64 disc, int genus, char set) {
    return component_count(build_graph(disc, genus, set));
}

int q_components_via_parity(i64 disc, int genus) {
    ButterflyGraph g = build_graph(disc, genus, 'P');
    auto ids = component_ids(g);
    int ncomp = ids.empty() ? 0 : 1 + *std::max_element(ids.begin(), ids.end());
    int n = g.node_count();
    // 2-color each component; an edge joining equal colors is an odd walk
    std::vector<int> color(n, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.from].push_back({e.to, 0});
        adj[e.to].push_back({e.from, 0});
    }
    std::vector<bool> odd(ncomp, false);
    for (int s = 0; s < n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, _] : adj[u]) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    odd[ids[u]] = true;
                }
            }
        }
    }
    int total = 0;
    for (int c = 0; c < ncomp; ++c) total += odd[c] ? 1 : 2;
    return total;
}

std::string to_dot(const ButterflyGraph& g) {
    std::ostringstream os;
    os << "digraph butterfly {\n";
    for (int i = 0; i < g.node_count(); ++i) {
        std::string label = g.node_label(i);
        if (g.set == 'P' && !label.empty()) label = label.substr(1, label.size() - 2);
        os << "  n" << i << " [label=\"" << label << "\"];\n";
    }
    for (const auto& e : g.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.label.str() << "\"];\n";
    os << "}\n";
    return os.str();
}

namespace tables {

const std::vector<std::pair<i64, int>>& genus3_s_exceptions() {
    static const std::vector<std::pair<i64, int>> v = {
        {20, 1},  {36, 1},  {41, 2},  {73, 2},  {97, 2},
        {112, 2}, {148, 3}, {196, 3}, {244, 3}, {292, 3},
        {304, 2}, {436, 3}, {484, 3}, {676, 3}, {1684, 3}};
    return v;
}

const std::vector<i64>& genus4_s_exceptions() {
    static const std::vector<i64> v = {
        12,  16,  17,  20,  25,  28,  36,  73,  88,  97,  105, 112, 121, 124,
        136, 145, 148, 169, 172, 184, 193, 196, 201, 217, 220, 241, 244, 265,
        268, 292, 304, 316, 364, 385, 436, 484, 556, 604, 676, 796, 844, 1684};
    return v;
}

const std::vector<i64>& genus4_p_exceptions() {
    static const std::vector<i64> v = {36, 41, 52, 68, 84, 100};
    return v;
}

std::optional<int> predict_s_components(i64 disc, int genus) {
    if (genus == 3) {
        if (disc <= 16 || (mod_floor(disc, 8) != 0 && mod_floor(disc, 8) != 1 && mod_floor(disc, 8) != 4))
            return std::nullopt;
        for (auto [d, c] : genus3_s_exceptions())
            if (d == disc) return c;
        return mod_floor(disc, 16) == 4 ? 2 : 1;
    }
    if (disc < 12 || (mod_floor(disc, 4) != 0 && mod_floor(disc, 4) != 1)) return std::nullopt;
    const auto& ex = genus4_s_exceptions();
    if (std::find(ex.begin(), ex.end(), disc) != ex.end()) return std::nullopt;  // no generic claim
    switch (mod_floor(disc, 8)) {
        case 4: return 3;
        case 1: return 2;
        case 0: return 2;
        default: return 1;  // D = 5 mod 8
    }
}

std::optional<int> predict_p_components(i64 disc, int genus) {
    if (genus == 3) {
        if (disc <= 16 || (mod_floor(disc, 8) != 0 && mod_floor(disc, 8) != 1 && mod_floor(disc, 8) != 4))
            return std::nullopt;
        return (disc == 41 || disc == 68 || disc == 100) ? 2 : 1;
    }
    if (disc < 12 || (mod_floor(disc, 4) != 0 && mod_floor(disc, 4) != 1)) return std::nullopt;
    const auto& ex = genus4_p_exceptions();
    if (std::find(ex.begin(), ex.end(), disc) != ex.end()) return 3;
    if (disc == 12 || disc == 16) return 1;
    return disc % 2 == 0 ? 2 : 1;
}

std::optional<int> predict_q_components(i64 disc) {
    if (disc <= 16) return std::nullopt;
    switch (mod_floor(disc, 8)) {
        case 0:
        case 4:
            if (disc == 48 || disc == 68 || disc == 100) return 2;
            return 1;
        case 1:
            return disc == 41 ? 4 : 2;
        default:
            return std::nullopt;
    }
}

}  // namespace tables

namespace {

// residues of e mod m over one component
std::set<i64> component_residues(const ButterflyGraph& s_graph, const std::vector<int>& ids, int comp,
                                 i64 m) {
    std::set<i64> res;
    for (size_t i = 0; i < s_graph.reduced.size(); ++i)
        if (ids[i] == comp) res.insert(mod_floor(s_graph.reduced[i].e, m));
    return res;
}

bool check_s_congruence(i64 disc, int genus, const ButterflyGraph& s_graph, const std::vector<int>& ids,
                        int ncomp, std::vector<std::string>& notes) {
    // the residue partitions named by the classification theorems
    std::vector<std::set<i64>> expected;
    if (genus == 3) {
        if (mod_floor(disc, 16) != 4) return true;
        expected = {{2}, {6}};  // e = 2 mod 8 and e = -2 mod 8
    } else {
        switch (mod_floor(disc, 8)) {
            case 4: expected = {{0, 4}, {2}, {6}}; break;
            case 1: expected = {{1, 3}, {5, 7}}; break;
            case 0: expected = {{0, 4}, {2, 6}}; break;
            default: return true;
        }
    }
    if (ncomp != static_cast<int>(expected.size())) return false;
    i64 m = 8;
    std::vector<std::set<i64>> got;
    for (int c = 0; c < ncomp; ++c) got.push_back(component_residues(s_graph, ids, c, m));
    // each component's residues must exactly fill one expected class
    std::vector<bool> used(expected.size(), false);
    for (const auto& r : got) {
        bool matched = false;
        for (size_t k = 0; k < expected.size(); ++k) {
            if (used[k]) continue;
            // the component may omit a residue that S_D simply does not contain
            std::set<i64> present;
            for (const auto& rc : s_graph.reduced) {
                i64 v = mod_floor(rc.e, m);
                if (expected[k].count(v)) present.insert(v);
            }
            if (r == present && std::includes(expected[k].begin(), expected[k].end(), r.begin(), r.end())) {
                used[k] = true;
                matched = true;
                break;
            }
        }
        if (!matched) {
            std::ostringstream os;
            os << "S congruence-class mismatch: component residues {";
            for (i64 v : r) os << v << ",";
            os << "} mod 8";
            notes.push_back(os.str());
            return false;
        }
    }
    return true;
}

}  // namespace

ClassificationReport verify_classification(i64 disc, int genus) {
    ClassificationReport rep;
    rep.disc = disc;
    rep.genus = genus;

    auto p = enumerate_prototypes(disc, genus, Model::A);
    auto pp = enumerate_prototypes(disc, genus, Model::B);
    rep.p_count = static_cast<int>(p.size());
    rep.pp_count = static_cast<int>(pp.size());
    rep.q_count = 2 * rep.p_count;

    ButterflyGraph pg = build_graph(disc, genus, 'P');
    auto pids = component_ids(pg);
    rep.p_components = pids.empty() ? 0 : 1 + *std::max_element(pids.begin(), pids.end());
    for (int c = 0; c < rep.p_components; ++c)
        for (size_t i = 0; i < pids.size(); ++i)
            if (pids[i] == c) {
                rep.component_reps.push_back(pg.protos[i].str());
                break;
            }

    ButterflyGraph sg = build_graph(disc, genus, 'S');
    auto sids = component_ids(sg);
    rep.s_count = static_cast<int>(sg.reduced.size());
    rep.s_components = sids.empty() ? 0 : 1 + *std::max_element(sids.begin(), sids.end());

    rep.predicted_p = tables::predict_p_components(disc, genus);
    rep.predicted_s = tables::predict_s_components(disc, genus);
    if (genus == 3) {
        rep.q_components = component_count(disc, genus, 'Q');
        rep.predicted_q = tables::predict_q_components(disc);
        rep.parity_cross_check_ok = q_components_via_parity(disc, genus) == rep.q_components;
        if (!rep.parity_cross_check_ok) rep.notes.push_back("bipartite double-cover cross-check failed");
    }

    rep.s_congruence_ok =
        (rep.predicted_s && *rep.predicted_s == rep.s_components)
            ? check_s_congruence(disc, genus, sg, sids, rep.s_components, rep.notes)
            : true;

    auto check = [&](const char* name, std::optional<int> want, int got) {
        if (want && *want != got) {
            std::ostringstream os;
            os << name << " components: predicted " << *want << ", computed " << got;
            rep.notes.push_back(os.str());
            rep.agree = false;
        }
    };
    check("P", rep.predicted_p, rep.p_components);
    check("S", rep.predicted_s, rep.s_components);
    if (genus == 3) check("Q", rep.predicted_q, rep.q_components);
    if (genus == 3 && disc > 16 && rep.predicted_s && rep.s_count == 0) {
        rep.notes.push_back("S_D unexpectedly empty");
        rep.agree = false;
    }
    if (genus == 3 && mod_floor(disc, 8) == 5 && (rep.p_count != 0 || rep.pp_count != 0)) {
        rep.notes.push_back("nonempty prototype set for D = 5 mod 8");
        rep.agree = false;
    }
    if (!rep.s_congruence_ok || !rep.parity_cross_check_ok) rep.agree = false;
    return rep;
}

std::vector<ClassificationReport> sweep(i64 lo, i64 hi, int genus, int jobs) {
    std::vector<i64> ds;
    for (i64 d = std::max<i64>(lo, 5); d <= hi; ++d)
        if (mod_floor(d, 4) == 0 || mod_floor(d, 4) == 1) ds.push_back(d);
    std::vector<ClassificationReport> out(ds.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < ds.size(); ++i) out[i] = verify_classification(ds[i], genus);
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ds.size()) break;
            out[i] = verify_classification(ds[i], genus);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

std::string ClassificationReport::to_json() const {
    std::ostringstream os;
    os << "{\"disc\":" << disc << ",\"genus\":" << genus << ",\"counts\":{\"P\":" << p_count
       << ",\"Pp\":" << pp_count << ",\"Q\":" << q_count << ",\"S\":" << s_count << "}"
       << ",\"components\":{\"P\":" << p_components;
    if (genus == 3) os << ",\"Q\":" << q_components;
    os << ",\"S\":" << s_components << "}";
    auto opt = [&](const char* k, const std::optional<int>& v) {
        os << ",\"" << k << "\":";
        if (v) os << *v;
        else os << "null";
    };
    opt("predicted_P", predicted_p);
    if (genus == 3) opt("predicted_Q", predicted_q);
    opt("predicted_S", predicted_s);
    os << ",\"agree\":" << (agree ? "true" : "false");
    if (!notes.empty()) {
        os << ",\"notes\":[";
        for (size_t i = 0; i < notes.size(); ++i) {
            if (i) os << ",";
            os << "\"" << notes[i] << "\"";
        }
        os << "]";
    }
    os << "}";
    return os.str();
}

std::string ClassificationReport::csv_header() {
    return "disc,genus,P,Pp,Q,S,P_components,Q_components,S_components,predicted_P,predicted_Q,predicted_S,agree";
}

std::string ClassificationReport::to_csv_row() const {
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    std::ostringstream os;
    os << disc << "," << genus << "," << p_count << "," << pp_count << "," << q_count << "," << s_count
       << "," << p_components << "," << (genus == 3 ? std::to_string(q_components) : std::string()) << ","
       << s_components << "," << opt(predicted_p) << "," << (genus == 3 ? opt(predicted_q) : std::string())
       << "," << opt(predicted_s) << "," << (agree ? "yes" : "NO");
    return os.str();
}

}  // namespace prym

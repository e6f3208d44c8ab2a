#include "prym/butterfly.hpp"

#include <stdexcept>

namespace prym {

GeneratorMatrix GeneratorMatrix::of(const CompletePrototype& cp) {
    const Prototype& p = cp.proto;
    GeneratorMatrix g;
    g.eps = cp.eps;
    g.disc = p.disc;
    if (cp.eps > 0) {
        g.m = {{{p.e, 0, 2 * p.w, 2 * p.t},
                {0, p.e, 0, 2 * p.h},
                {p.h, -p.t, 0, 0},
                {0, p.w, 0, 0}}};
    } else {
        g.m = {{{p.e, 0, p.w, p.t},
                {0, p.e, 0, p.h},
                {2 * p.h, -2 * p.t, 0, 0},
                {0, 2 * p.w, 0, 0}}};
    }
    return g;
}

std::array<std::array<i64, 4>, 4> GeneratorMatrix::form() const {
    i64 u = eps > 0 ? 1 : 2;  // pairing of the first basis pair
    i64 v = eps > 0 ? 2 : 1;
    return {{{0, u, 0, 0}, {-u, 0, 0, 0}, {0, 0, 0, v}, {0, 0, -v, 0}}};
}

bool GeneratorMatrix::satisfies_order_equation(i64 e, i64 wh2) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            i64 sq = 0;
            for (int k = 0; k < 4; ++k) sq += m[i][k] * m[k][j];
            i64 rhs = e * m[i][j] + (i == j ? wh2 : 0);
            if (sq != rhs) return false;
        }
    return true;
}

bool is_admissible(const Prototype& p, const MoveLabel& q) {
    if (q.infinite) return true;
    if (q.q < 1) return false;
    if (q.q == 1) return true;
    i64 s = p.e + 4 * q.q * p.h;
    return s < 0 || s * s < p.disc;
}

i64 max_admissible_q(const Prototype& p) {
    i64 q = 1;
    while (is_admissible(p, MoveLabel::finite(q + 1))) ++q;
    return q;
}

IntMat2 move_block(const Prototype& p, const MoveLabel& q) {
    // Upper-right block of the conjugated generator matrix, carrying the new
    // second basis pair.  Genus 4 doubles the e-terms (the generator there has
    // no factor 2 between the blocks, which shifts the conjugation by one
    // power of 2).
    i64 f = p.genus == 3 ? 1 : 2;
    if (q.infinite) return IntMat2(0, -f * p.e + p.w - 2 * f * p.h, -p.h, p.t);
    return IntMat2(p.h, -f * p.e - p.t - 2 * f * q.q * p.h, -q.q * p.h, p.w + q.q * p.t);
}

Prototype apply_move(const Prototype& p, const MoveLabel& q) {
    if (!is_admissible(p, q)) throw std::domain_error("inadmissible");
    i64 e2, h2;
    if (q.infinite) {
        e2 = -p.e - 4 * p.h;
        h2 = gcd_i64(p.t, p.h);
    } else {
        e2 = -p.e - 4 * q.q * p.h;
        h2 = gcd_i64(q.q * p.h, p.w + q.q * p.t);
    }
    i64 k = p.genus == 3 ? 8 : 4;
    i64 rem = p.disc - e2 * e2;
    if (rem <= 0 || rem % (k * h2) != 0)
        throw std::logic_error("apply_move: discriminant relation broken");
    i64 w2 = rem / (k * h2);

    IntMat2 block = move_block(p, q);
    ColHnf hn = col_hnf(block);
    if (hn.top_row_negated || hn.hnf.m[0][0] != w2 || hn.hnf.m[1][1] != h2)
        throw std::logic_error("apply_move: block determinant mismatch with w'h'");
    i64 g = gcd_i64(w2, h2);
    i64 t2 = mod_floor(hn.hnf.m[0][1], g);

    Prototype out{w2, h2, t2, e2, p.disc, p.genus, Model::A};
    if (!is_valid_prototype(out))
        throw std::logic_error("apply_move: image " + out.str() + " is not a prototype");
    return out;
}

CompletePrototype apply_move(const CompletePrototype& cp, const MoveLabel& q) {
    return {apply_move(cp.proto, q), -cp.eps};
}

std::optional<ReducedClass> reduced_move(const ReducedClass& r, i64 q) {
    if (q < 1) return std::nullopt;
    i64 k = r.genus == 3 ? 8 : 4;
    i64 w = (r.disc - r.e * r.e) / k;
    if (gcd_i64(w, q) != 1) return std::nullopt;
    ReducedClass out{-r.e - 4 * q, r.disc, r.genus};
    if (!is_valid_reduced(out)) return std::nullopt;
    return out;
}

std::optional<ReducedClass> f_move(const ReducedClass& r, i64 signed_q) {
    i64 q = signed_q < 0 ? -signed_q : signed_q;
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("f_move: |q| must be an odd prime");
    for (i64 d = 3; d * d <= q; d += 2)
        if (q % d == 0) throw std::invalid_argument("f_move: |q| must be an odd prime");

    i64 base = signed_q > 0 ? r.e : r.e + 4;
    if (mod_floor(r.disc - base * base, q) == 0) return std::nullopt;
    ReducedClass out{signed_q > 0 ? r.e + 4 * (q - 1) : r.e - 4 * (q - 1), r.disc, r.genus};
    if (!is_valid_reduced(out)) return std::nullopt;
    return out;
}

namespace {

// reduced row echelon over F_2 for a list of 4-bit rows
int f2_rank(std::array<i64, 4>* rows, int n) {
    int rank = 0;
    for (int col = 0; col < 4 && rank < n; ++col) {
        int pivot = -1;
        for (int i = rank; i < n; ++i)
            if (rows[i][col] & 1) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int i = 0; i < n; ++i)
            if (i != rank && (rows[i][col] & 1))
                for (int j = 0; j < 4; ++j) rows[i][j] = (rows[i][j] + rows[rank][j]) & 1;
        ++rank;
    }
    return rank;
}

}  // namespace

Mod2Class mod2_invariant(const CompletePrototype& cp) {
    if (mod_floor(cp.proto.disc, 2) == 0)
        throw std::domain_error("invariant defined only for odd discriminants");
    GeneratorMatrix g = GeneratorMatrix::of(cp);
    // image of T mod 2: column span over F_2
    std::array<std::array<i64, 4>, 4> cols{};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) cols[j][i] = mod_floor(g.m[i][j], 2);
    int rank = f2_rank(cols.data(), 4);
    auto form = g.form();
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
            i64 pair = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) pair += cols[i][a] * form[a][b] * cols[j][b];
            if (mod_floor(pair, 2) != 0) return Mod2Class::nonzero;
        }
    return Mod2Class::zero;
}

}  // namespace prym

#include "prym/cusps.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace prym {
namespace tables {

const std::vector<CuspRow>& cusp_reference_rows() {
    // D | g2: |P|, extra | g3: |P|, |P'|, extra | g4: |P|, |P'|, extra
    static const std::vector<CuspRow> rows = {
        {5, 1, 0, 0, 0, 0, 0, 1, 0},   {8, 2, 0, 0, 1, 0, 1, 1, 0},   {9, 1, 1, 0, 0, 0, 0, 0, 0},
        {12, 3, 0, 1, 0, 0, 1, 2, 0},  {13, 3, 0, 0, 0, 0, 2, 1, 0},  {16, 2, 1, 0, 0, 0, 1, 0, 1},
        {17, 6, 0, 2, 2, 0, 2, 4, 0},  {20, 5, 0, 1, 2, 0, 3, 2, 0},  {21, 4, 0, 0, 0, 0, 2, 2, 0},
        {24, 6, 0, 2, 0, 0, 4, 2, 0},  {25, 6, 2, 2, 0, 2, 2, 1, 3},  {28, 7, 0, 1, 2, 0, 3, 4, 0},
        {29, 5, 0, 0, 0, 0, 4, 1, 0},  {32, 7, 0, 3, 2, 0, 4, 3, 0},  {33, 12, 0, 4, 6, 0, 6, 6, 0},
        {36, 5, 3, 1, 0, 2, 3, 0, 5},  {37, 9, 0, 0, 0, 0, 4, 5, 0},  {40, 12, 0, 2, 2, 0, 6, 6, 0},
        {41, 14, 0, 7, 2, 0, 8, 6, 0}, {44, 9, 0, 3, 0, 0, 7, 2, 0},  {45, 8, 0, 0, 0, 0, 4, 4, 0},
        {48, 11, 0, 3, 4, 0, 7, 4, 0}, {49, 13, 5, 4, 2, 6, 6, 3, 9}, {52, 15, 0, 5, 2, 0, 7, 8, 0}};
    return rows;
}

std::optional<int> reference_square_extra(i64 disc, int genus) {
    if (!is_perfect_square(disc)) return std::nullopt;
    for (const auto& r : cusp_reference_rows())
        if (r.disc == disc) return genus == 2 ? r.g2_extra : r.g4_extra;
    return std::nullopt;
}

}  // namespace tables

CuspReport cusp_count(i64 disc, int genus) {
    if (mod_floor(disc, 4) != 0 && mod_floor(disc, 4) != 1)
        throw std::invalid_argument("cusp_count: disc must be 0 or 1 mod 4");
    CuspReport rep;
    rep.disc = disc;
    rep.genus = genus;
    bool square = is_perfect_square(disc);
    if (genus == 2) {
        rep.model_count = static_cast<int>(enumerate_genus2(disc).size());
        if (square) {
            rep.square_extra = tables::reference_square_extra(disc, 2);
            rep.extra_is_reference = true;
        }
    } else if (genus == 3) {
        auto p = enumerate_prototypes(disc, 3, Model::A);
        auto pp = enumerate_prototypes(disc, 3, Model::B);
        rep.model_count = 2 * static_cast<int>(p.size()) + static_cast<int>(pp.size());
        if (square) rep.square_extra = 2 * static_cast<int>(enumerate_square_cusp(isqrt(disc)).size());
    } else if (genus == 4) {
        auto p = enumerate_prototypes(disc, 4, Model::A);
        auto pp = enumerate_prototypes(disc, 4, Model::B);
        rep.model_count = static_cast<int>(p.size()) + static_cast<int>(pp.size());
        if (square) {
            rep.square_extra = tables::reference_square_extra(disc, 4);
            rep.extra_is_reference = true;
        }
    } else {
        throw std::invalid_argument("cusp_count: genus must be 2, 3 or 4");
    }
    if (!square) {
        rep.total = rep.model_count;
    } else if (rep.square_extra) {
        rep.total = rep.model_count + *rep.square_extra;
    }
    return rep;
}

std::string emit_cusp_table(i64 lo, i64 hi, TableFormat fmt) {
    std::vector<std::array<std::string, 8>> rows;
    for (i64 d = lo; d <= hi; ++d) {
        if (mod_floor(d, 4) != 0 && mod_floor(d, 4) != 1) continue;
        CuspReport g2 = cusp_count(d, 2), g3 = cusp_count(d, 3), g4 = cusp_count(d, 4);
        auto cell = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
        rows.push_back({std::to_string(d), std::to_string(g2.model_count), cell(g2.square_extra),
                        std::to_string(g3.model_count), cell(g3.square_extra),
                        std::to_string(g4.model_count), cell(g4.square_extra), cell(g3.total)});
    }
    std::ostringstream os;
    if (fmt == TableFormat::csv) {
        os << "# g2_extra and g4_extra are reference-only values; all other columns are computed\n";
        os << "D,g2_model,g2_extra,g3_model,g3_extra,g4_model,g4_extra,g3_total\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
    } else if (fmt == TableFormat::markdown) {
        os << "| D | genus 2 | genus 3 | genus 4 |\n|---|---|---|---|\n";
        for (const auto& r : rows) {
            auto sum = [](const std::string& m, const std::string& x) {
                return x.empty() || x == "0" ? m : "**" + m + "+" + x + "**";
            };
            os << "| " << r[0] << " | " << sum(r[1], r[2]) << " | " << sum(r[3], r[4]) << " | "
               << sum(r[5], r[6]) << " |\n";
        }
    } else {
        os << "[";
        for (size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            if (i) os << ",";
            os << "{\"D\":" << r[0] << ",\"g2_model\":" << r[1] << ",\"g2_extra\":"
               << (r[2].empty() ? "null" : r[2]) << ",\"g3_model\":" << r[3]
               << ",\"g3_extra\":" << (r[4].empty() ? "null" : r[4]) << ",\"g4_model\":" << r[5]
               << ",\"g4_extra\":" << (r[6].empty() ? "null" : r[6])
               << ",\"g3_total\":" << (r[7].empty() ? "null" : r[7]) << "}";
        }
        os << "]";
    }
    return os.str();
}

namespace {

// covolume of the rank-2 lattice spanned by rational vectors, as a rational
mpq_class lattice2_covolume(const std::vector<std::array<mpq_class, 2>>& gens) {
    // clear denominators, reduce the integer generator list by column gcd steps
    mpz_class den = 1;
    for (const auto& g : gens) {
        den = lcm(den, g[0].get_den());
        den = lcm(den, g[1].get_den());
    }
    std::vector<std::array<mpz_class, 2>> v;
    for (const auto& g : gens) {
        mpq_class x = g[0] * den, y = g[1] * den;
        v.push_back({x.get_num(), y.get_num()});
    }
    // Hermite reduction on pairs (x, y): bring to [[a, b], [0, c]]
    mpz_class a = 0, b = 0, c = 0;
    for (auto& g : v) {
        mpz_class x = g[0], y = g[1];
        // reduce (b, c) with (x, y) on the y-coordinate by gcd steps
        while (y != 0) {
            if (c == 0) {
                std::swap(c, y);
                std::swap(b, x);
                continue;
            }
            mpz_class q = y / c;
            y -= q * c;
            x -= q * b;
            if (y != 0) {
                std::swap(y, c);
                std::swap(x, b);
            }
        }
        a = gcd(a, x);
    }
    if (a == 0 || c == 0) throw std::domain_error("degenerate period lattice");
    mpq_class covol = mpq_class(abs(a * c)) / (den * den);
    covol.canonicalize();
    return covol;
}

}  // namespace

i64 square_tiled_degree(const CompletePrototype& cp) {
    const Prototype& p = cp.proto;
    if (!is_perfect_square(p.disc)) throw std::domain_error("square_tiled_degree: disc is not a square");
    i64 d = isqrt(p.disc);
    if ((p.e + d) % 2 != 0) throw std::domain_error("square_tiled_degree: invalid prototype");
    mpq_class lam(static_cast<long>(p.e + d), 2);  // (e + sqrt(D))/2, rational here
    mpq_class unit = cp.eps > 0 ? lam : lam / 2;
    // full period lattice: unit*Z^2 + Z(w,0) + Z(t,h); area d*unit
    std::vector<std::array<mpq_class, 2>> gens = {{unit, 0},
                                                  {0, unit},
                                                  {mpq_class(static_cast<long>(p.w)), 0},
                                                  {mpq_class(static_cast<long>(p.t)), mpq_class(static_cast<long>(p.h))}};
    mpq_class covol = lattice2_covolume(gens);
    mpq_class n = mpq_class(static_cast<long>(d)) * unit / covol;
    if (n.get_den() != 1) throw std::logic_error("square_tiled_degree: non-integral square count");
    i64 ni = static_cast<i64>(n.get_num().get_si());
    if (ni != d && ni != 2 * d) throw std::logic_error("square_tiled_degree: count is neither d nor 2d");
    if (d % 2 == 0 && ni != d) throw std::logic_error("square_tiled_degree: even d must give n = d");
    return ni;
}

}  // namespace prym

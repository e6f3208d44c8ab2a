#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prym/prototypes.hpp"

namespace prym {

// Cusp counts of the Weierstrass curve for one discriminant and genus.
// model_count covers the cylinder decompositions parametrized by prototypes
// (2|P|+|P'| in genus 3, |P|+|P'| in genus 4, |P(2)| in genus 2).  For square
// discriminants the remaining cusps are 2|Ps| in genus 3 (computed); in genus
// 2 and 4 no formula is available and the value is carried as reference data.
struct CuspReport {
    i64 disc = 0;
    int genus = 3;
    int model_count = 0;
    std::optional<int> square_extra;
    bool extra_is_reference = false;  // true for the genus-2/4 square summands
    std::optional<int> total;         // model_count + square_extra when defined
};

CuspReport cusp_count(i64 disc, int genus);

enum class TableFormat { csv, markdown, json };

// The cusp table for D in [lo, hi] (all three genera).  CSV columns:
// D, g2_model, g2_extra, g3_model, g3_extra, g4_model, g4_extra, g3_total.
std::string emit_cusp_table(i64 lo, i64 hi, TableFormat fmt);

// Number of unit squares of the primitive square-tiled surface attached to a
// complete prototype with square discriminant d^2, computed as surface area
// over the covolume of the full period lattice.  Always d or 2d, and d when d
// is even.  Throws std::domain_error for non-square discriminants.
i64 square_tiled_degree(const CompletePrototype& cp);

namespace tables {

struct CuspRow {
    i64 disc;
    int g2_model, g2_extra;
    int g3_p, g3_pp, g3_extra;
    int g4_p, g4_pp, g4_extra;
};

// Published cusp counts for D in [5, 52], used as golden data by the tests;
// the genus-2 and genus-4 square extras exist only here.
const std::vector<CuspRow>& cusp_reference_rows();
std::optional<int> reference_square_extra(i64 disc, int genus);

}  // namespace tables

}  // namespace prym

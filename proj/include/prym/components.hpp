#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prym/butterfly.hpp"
#include "prym/prototypes.hpp"

namespace prym {

struct GraphEdge {
    int from = 0, to = 0;
    MoveLabel label;
};

// Directed labeled graph of butterfly moves over one of the prototype sets.
// Exactly one of protos/completes/reduced is populated, matching `set`.
struct ButterflyGraph {
    i64 disc = 0;
    int genus = 3;
    char set = 'P';  // 'P', 'Q' or 'S'
    std::vector<Prototype> protos;
    std::vector<CompletePrototype> completes;
    std::vector<ReducedClass> reduced;
    std::vector<GraphEdge> edges;

    int node_count() const {
        return static_cast<int>(set == 'P' ? protos.size() : set == 'Q' ? completes.size() : reduced.size());
    }
    std::string node_label(int i) const;
};

ButterflyGraph build_graph(i64 disc, int genus, char set);

// Connected components of the underlying undirected graph; ids are canonical:
// numbered by first node occurrence.
std::vector<int> component_ids(const ButterflyGraph& g);
int component_count(const ButterflyGraph& g);
int component_count(i64 disc, int genus, char set);

// Per-component bipartiteness of the P_D move graph; the Q_D graph is its
// sign double cover, so each component contributes 1 when it carries an odd
// closed walk and 2 otherwise.
int q_components_via_parity(i64 disc, int genus = 3);

std::string to_dot(const ButterflyGraph& g);

struct ClassificationReport {
    i64 disc = 0;
    int genus = 3;
    int p_count = 0, pp_count = 0, q_count = 0, s_count = 0;
    int p_components = 0, q_components = 0, s_components = 0;
    std::optional<int> predicted_p, predicted_q, predicted_s;
    bool s_congruence_ok = true;
    bool parity_cross_check_ok = true;
    bool agree = true;
    std::vector<std::string> component_reps;  // one representative per P/S component
    std::vector<std::string> notes;

    std::string to_json() const;
    std::string to_csv_row() const;
    static std::string csv_header();
};

// Computes component counts for the relevant sets and compares them against
// the classification theorems, including every tabulated exceptional
// discriminant.  Disagreements set flags and notes; nothing throws.
ClassificationReport verify_classification(i64 disc, int genus);

// Reports for every admissible D in [lo, hi]; deterministic order, optionally
// computed on `jobs` worker threads.
std::vector<ClassificationReport> sweep(i64 lo, i64 hi, int genus, int jobs = 1);

// Theorem data tables, verbatim.
namespace tables {

// Exceptional S_D component counts in genus 3 (15 discriminants).
const std::vector<std::pair<i64, int>>& genus3_s_exceptions();
// Discriminants excluded from the generic genus-4 S~ statement.
const std::vector<i64>& genus4_s_exceptions();
// Genus-4 P~ exceptions, all with three components.
const std::vector<i64>& genus4_p_exceptions();

// Generic predictions; nullopt when the theorem makes no claim for D.
std::optional<int> predict_s_components(i64 disc, int genus);
std::optional<int> predict_p_components(i64 disc, int genus);
std::optional<int> predict_q_components(i64 disc);  // genus 3 only

}  // namespace tables

}  // namespace prym

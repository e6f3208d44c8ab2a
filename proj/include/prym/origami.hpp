#pragma once

#include <string>
#include <vector>

#include "prym/geometry.hpp"
#include "prym/prototypes.hpp"

namespace prym {

// Square-tiled surface as a pair of permutations of {0..n-1}: right[i] is the
// square to the right of i, up[i] the one above.
struct Origami {
    std::vector<int> right, up;

    int size() const { return static_cast<int>(right.size()); }
    bool transitive() const;
    // cycle lengths of the boundary permutation right*up*right^-1*up^-1;
    // an entry L corresponds to a cone point of angle 2*pi*L
    std::vector<int> commutator_cycles() const;
    std::string str() const;  // two one-line permutations
    std::string canonical_key() const;
    void validate() const;
};

// Square tiling of a primitive square-tiled eigenform surface; the period
// lattice is normalized to Z^2 first.  Throws for non-square discriminants.
Origami to_origami(const CompletePrototype& cp);

// Square tiling of any surface whose periods already span Z^2.
Origami to_origami_surface(const TranslationSurface& s);

// Action of the standard parabolic generators of SL(2,Z).
Origami act_L(const Origami& o);  // [[1,1],[0,1]]
Origami act_R(const Origami& o);  // [[1,0],[1,1]]

bool is_isomorphic(const Origami& a, const Origami& b);

// Closure of {o} under L and R, up to relabeling.
std::vector<Origami> lr_orbit(const Origami& o, size_t max_size = 100000);

}  // namespace prym

#pragma once

#include <array>
#include <optional>
#include <string>

#include "prym/intmat.hpp"
#include "prym/prototypes.hpp"

namespace prym {

// Parameter of a butterfly move: q in {1, 2, ...} or infinity.
struct MoveLabel {
    i64 q = 1;
    bool infinite = false;

    static MoveLabel finite(i64 q) { return {q, false}; }
    static MoveLabel inf() { return {0, true}; }

    bool operator==(const MoveLabel& o) const {
        return infinite == o.infinite && (infinite || q == o.q);
    }
    std::string str() const { return infinite ? "Binf" : "B" + std::to_string(q); }
};

// 4x4 integer matrix of the normalized order generator attached to a complete
// prototype, in its own homology basis.  eps = +1 uses the basis where the
// intersection form is diag(J, 2J), eps = -1 the one with diag(2J, J).
struct GeneratorMatrix {
    std::array<std::array<i64, 4>, 4> m{};
    int eps = +1;
    i64 disc = 0;

    static GeneratorMatrix of(const CompletePrototype& cp);
    // Intersection form for this basis (diag(J,2J) or diag(2J,J)).
    std::array<std::array<i64, 4>, 4> form() const;
    // T^2 == e*T + 2*w*h*Id; used as a self-check.
    bool satisfies_order_equation(i64 e, i64 wh2) const;
};

// A move is admissible iff q = infinity, q = 1, or (e + 4qh)^2 < D.  The same
// integer test covers genus 3 and genus 4.
bool is_admissible(const Prototype& p, const MoveLabel& q);

// Largest finite q admissible for p (at least 1).
i64 max_admissible_q(const Prototype& p);

// The butterfly move B_q.  e' = -e-4qh and h' = gcd(qh, w+qt) for finite q,
// e' = -e-4h and h' = gcd(t,h) for q = infinity; w' from the discriminant
// relation.  The twist t' has no closed formula; it is computed by reducing
// the integer block carrying the second basis pair to column Hermite form,
// then reducing the off-diagonal entry modulo gcd(w',h').  Throws
// std::domain_error("inadmissible") when !is_admissible(p, q).
Prototype apply_move(const Prototype& p, const MoveLabel& q);

// Same move on a complete prototype; the sign always flips.
CompletePrototype apply_move(const CompletePrototype& cp, const MoveLabel& q);

// The twist block fed to col_hnf (exposed for tests).
IntMat2 move_block(const Prototype& p, const MoveLabel& q);

// Reduced move on S_D: e ~ -e-4q when -e-4q lies in S_D and gcd(w,q) = 1,
// where w = (D-e^2)/8 (genus 3) or (D-e^2)/4 (genus 4).
std::optional<ReducedClass> reduced_move(const ReducedClass& r, i64 q);

// F_q(e) = e + 4(q-1) for an odd prime q, admissible when F_q(e) lies in S_D
// and D is not congruent to e^2 mod q; F_{-q}(e) = e - 4(q-1), admissible when
// F_{-q}(e) lies in S_D and D is not congruent to (e+4)^2 mod q.  Realized by
// the pairs (B_q, B_inf) and (B_inf, B_q).
std::optional<ReducedClass> f_move(const ReducedClass& r, i64 signed_q);

enum class Mod2Class { zero, nonzero };

// Parity of the intersection form restricted to the image of the generator
// matrix over F_2.  Separates the two A+/A- families for odd discriminants.
// Throws std::domain_error for even discriminants.
Mod2Class mod2_invariant(const CompletePrototype& cp);

}  // namespace prym

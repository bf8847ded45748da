#ifndef QFAC_TERNARY_HPP
#define QFAC_TERNARY_HPP

#include <optional>
#include <vector>

#include "qfac/poly.hpp"

namespace qfac {

// Exact division of homogeneous forms (same variable count): f = g * quotient,
// or nullopt.  Solved as a small linear system on the quotient coefficients.
std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g);

struct LinearFactorSearch {
    std::vector<MultiPoly> factors; // normalized (leading coefficient 1), with multiplicity
    bool complete = true;           // false when a QQ root search was height-limited
};

// All linear factors of a nonzero ternary form over its base field.
// Candidates come from roots of the restrictions to the coordinate lines,
// so the search is exact over finite fields; over QQ rational roots are
// sought with a height bound and `complete` reports exhaustiveness.
LinearFactorSearch linear_factors_ternary(const MultiPoly& f);

// gamma * c^2 with c normalized (leading coefficient 1); gamma is forced to
// the leading coefficient of f.  Decidable over any field here (char != 2).
std::optional<MultiPoly> scaled_square_root(const MultiPoly& f);

// Squarefree part of a ternary quartic over a finite field (product of the
// distinct irreducible factors over the algebraic closure, normalized).
MultiPoly squarefree_part_ternary_quartic(const MultiPoly& f);

} // namespace qfac

#endif

#ifndef QFAC_DEFECT_HPP
#define QFAC_DEFECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qfac/projgeo.hpp"

namespace qfac {

// Evaluation matrix of the degree-d monomials at the configuration points:
// s rows, C(n+d, d) columns, graded-lex column order.
struct EvaluationMatrix {
    ExactMatrix matrix;
    std::size_t degree;
    std::size_t point_count;
};

EvaluationMatrix evaluation_matrix(const PointConfig& cfg, std::size_t d);

// s - rank: zero iff the points impose independent conditions on degree-d forms
std::size_t defect_of_points(const PointConfig& cfg, std::size_t d);

// A degree-d form vanishing at all p_j, j != i, and not at p_i;
// nullopt iff row i lies in the span of the other rows.
std::optional<MultiPoly> separating_form(const PointConfig& cfg, std::size_t i, std::size_t d);

enum class TheoremPath { QFactorial, ExceptionCase, OutsideHypotheses };
std::string to_string(TheoremPath p);

struct FactorialityVerdict {
    std::size_t s = 0;
    TheoremPath theorem_path = TheoremPath::OutsideHypotheses;
    std::string citation; // Thm1.1-s<=8 | Thm1.1-s=9-noplane | Thm1.3-s<=11 | Thm1.3-s=12-noquadric | ...
    std::size_t defect_value = 0;
    std::string field;
    bool consistent = true; // theorem_path == QFactorial implies defect == 0
    std::string note;
    std::string to_json() const;
};

// Decision tree of the two factoriality theorems for nodal quartic
// threefolds, with the defect recomputed at degree 3 as a cross-check.
// The verdict never claims non-factoriality from the theorem path alone;
// only defect > 0 is reported as defect evidence.
FactorialityVerdict factoriality_verdict(std::size_t s, bool contains_plane,
                                         bool contains_quadric, const PointConfig& node_config,
                                         std::size_t d = 3);

} // namespace qfac

#endif

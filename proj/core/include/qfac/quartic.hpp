#ifndef QFAC_QUARTIC_HPP
#define QFAC_QUARTIC_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfac/defect.hpp"
#include "qfac/projgeo.hpp"
#include "qfac/ternary.hpp"

namespace qfac {

// Quartic threefold input: F of degree 4 in 5 variables, optionally with a
// decomposition F = Q Q' - L C (degrees 2, 2, 1, 3).
struct QuarticInput {
    MultiPoly F;
    std::optional<MultiPoly> Q, Qprime, L, C;
    bool degenerate_decomposition = false; // Q or Q' proportional to L^2
    std::vector<ProjPoint> supplied_points;

    explicit QuarticInput(MultiPoly f) : F(std::move(f)) {}
    bool has_decomposition() const { return Q && Qprime && L && C; }
    const Field& field() const { return F.field(); }
};

QuarticInput build_qqlc(const MultiPoly& q, const MultiPoly& qprime, const MultiPoly& l,
                        const MultiPoly& c);

// "field ..." header, then "F: ..." or the four blocks "Q:", "Q':", "L:", "C:".
// A field override reparses the polynomial blocks over the given field.
QuarticInput read_quartic_input(std::istream& in,
                                const std::optional<Field>& override_field = std::nullopt);
void write_quartic_input(std::ostream& out, const QuarticInput& input);

struct NodeRecord {
    ProjPoint point;
    bool gradient_zero = false;
    std::size_t hessian_rank = 0;
    bool is_node = false; // gradient_zero && hessian_rank == 4
};

// Gradient test plus 5x5 homogeneous Hessian rank; requires char not in
// {2, 3}.  Hessian rank 5 at a gradient-zero point is reported as an
// internal-consistency error (impossible by the Euler identity).
NodeRecord certify_node(const MultiPoly& f, const ProjPoint& x);

// All points of P^4(GF(q)) with vanishing gradient, each certified.
// Budget counts projective points visited.
std::vector<NodeRecord> singular_points_enumerate(const MultiPoly& f,
                                                  std::uint64_t point_budget = 2000000000ull);

enum class SearchVerdict { Yes, No, NotFound, BudgetExceeded };
std::string to_string(SearchVerdict v);

struct PlaneSearch {
    SearchVerdict verdict = SearchVerdict::NotFound;
    std::optional<LinearSubspaceParam> witness;
    std::string note;
};

// Exhaustive search over the GF(q)-rational 2-planes of P^4.  "No" means no
// plane rational over the coefficient field.
PlaneSearch contains_plane(const MultiPoly& f, std::uint64_t budget = 40000000ull);

struct QuadricSurfaceSearch {
    SearchVerdict verdict = SearchVerdict::NotFound;
    std::optional<MultiPoly> lprime;  // hyperplane
    std::optional<MultiPoly> qprime;  // quadric
    std::optional<MultiPoly> acubic;  // F = L' A + Q'' B
    std::optional<MultiPoly> bquad;
    std::string note;
};

// Candidate mode: ideal membership F in (L', Q'') by a linear solve.  Yes/No
// are definitive for the given candidate.
QuadricSurfaceSearch contains_quadric_surface(const MultiPoly& f, const MultiPoly& lprime,
                                              const MultiPoly& qprime);
// Search mode over GF(q)-rational hyperplanes; "NotFound" is not a proof of
// absence and is labeled so.
QuadricSurfaceSearch contains_quadric_surface_search(const MultiPoly& f,
                                                     std::uint64_t budget = 40000000ull);

enum class SectionKind { PlaneContained, DoubleConic, FourLines, Other, Indeterminate };
std::string to_string(SectionKind v);

struct PlaneSectionClass {
    SectionKind kind = SectionKind::Indeterminate;
    std::size_t squarefree_degree = 0;
    unsigned splitting_extension = 1; // relative degree over the base field
    // pairwise intersection points of the four lines, ambient coordinates
    // over the splitting field (when computed)
    std::vector<ProjPoint> intersection_points;
    std::string note;
};

// Lemma-3.2 dichotomy for X cap P: double conic (squarefree part of degree
// <= 2), four distinct lines (split over extensions up to relative degree 4),
// or other.
PlaneSectionClass classify_plane_section(const MultiPoly& f, const LinearSubspaceParam& plane);

// Complete-intersection model in P^5 (coordinates x0..x4, y = x5).
struct ModelY {
    MultiPoly eq_quadric; // y L - Q
    MultiPoly eq_cubic;   // y Q' - C
};

// (Y, Y'): Y from (Q, Q', L, C), Y' from (Q', Q, L, C)
std::pair<ModelY, ModelY> birational_models(const QuarticInput& input);

struct NodeOnYReport {
    bool structure_ok = false;           // linear lowest term L, quadratic lowest Q'
    std::size_t qprime_rank = 0;         // 5 = nonsingular quadric
    std::size_t qprime_restricted_rank = 0; // rank of Q' on {L=0}
    bool is_node = false;                // restricted rank == 4
};

NodeOnYReport node_on_Y(const QuarticInput& input);

struct LineThroughNode {
    ProjPoint direction; // in P^4 over the extension field
    bool in_tangent_hyperplane = false;
    bool transverse = false; // Jacobian rank 3 at the direction point
};

struct LinesThroughNodeReport {
    std::vector<unsigned> extension_degrees; // k values tried (1, 2, 4, ...)
    std::vector<std::size_t> counts;         // distinct lines per k
    std::vector<LineThroughNode> lines;      // over the largest field tried
    bool stabilized = false;                 // last two counts equal
    bool all_transverse = false;
    bool all_in_tangent_hyperplane = false;
    std::string note;
};

// Lines through (0:...:0:1) contained in Y, by exact coefficient conditions
// in the line parameter, enumerated over GF(p^k) with k grown (1, 2, 4, ...)
// until the count stabilizes or max_k is hit.
LinesThroughNodeReport lines_through_node(const ModelY& model, unsigned max_k = 4,
                                          std::uint64_t budget = 400000000ull);

struct GeneratedExample {
    QuarticInput input;
    std::vector<NodeRecord> nodes; // 12, over GF(p^2), ascending
    unsigned attempts = 0;
    bool qprime_nonsingular = false;
    bool all_transverse = false;
};

// Deterministic seeded search for F = Q Q' - L C over GF(p) whose 12 nodes
// are all GF(p^2)-rational, certified by an exhaustive singular scan.
GeneratedExample generate_example(std::uint64_t seed, std::uint32_t p,
                                  std::uint64_t point_budget = 2000000000ull);

// ---------------- full analysis pipeline ----------------

struct AnalyzeOptions {
    std::uint64_t budget = 2000000000ull;
    bool run_plane_search = true;
    bool run_quadric_search = true;
    bool run_lemma_report = true;
    // when the analysis field is an extension, containment searches can run
    // on the original input over the smaller coefficient field
    const QuarticInput* search_input = nullptr;
};

struct QuarticAnalysis {
    std::string field;
    std::size_t s = 0;
    bool points_supplied = false;
    std::vector<NodeRecord> singular_points;
    bool all_singular_are_nodes = false;
    // decomposed inputs: which singular points satisfy Q = Q' = L = C = 0
    bool decomposition_present = false;
    bool all_on_decomposition_locus = true;
    PlaneSearch plane;
    QuadricSurfaceSearch quadric;
    LemmaSixReport configuration;
    std::size_t defect = 0;
    FactorialityVerdict verdict;
    std::vector<std::string> findings; // anomalies; non-empty => CLI exit 3
    std::string to_json() const;
};

QuarticAnalysis analyze_quartic(const QuarticInput& input, const AnalyzeOptions& opts = {});

} // namespace qfac

#endif

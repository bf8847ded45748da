#ifndef QFAC_PROJGEO_HPP
#define QFAC_PROJGEO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfac/poly.hpp"

namespace qfac {

// Point of P^n, normalized so the first nonzero coordinate is 1.
class ProjPoint {
public:
    explicit ProjPoint(std::vector<FieldScalar> coords);
    const std::vector<FieldScalar>& coords() const { return coords_; }
    std::size_t ambient_dim() const { return coords_.size() - 1; }
    const Field& field() const { return coords_.front().field(); }
    bool operator==(const ProjPoint& o) const { return coords_ == o.coords_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const; // lexicographic on normalized coords
    std::string to_string() const;

private:
    std::vector<FieldScalar> coords_;
};

// Ordered list of pairwise distinct points of a common P^n.
// Duplicates are an error, never silently removed.
class PointConfig {
public:
    PointConfig(const Field& f, std::size_t ambient_dim, std::vector<ProjPoint> points);
    const Field& field() const { return field_; }
    std::size_t ambient_dim() const { return n_; }
    std::size_t size() const { return points_.size(); }
    const ProjPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<ProjPoint>& points() const { return points_; }

    // one point per line, comma-separated coordinates; '#' comments; optional
    // leading header "field rationals" | "field p=<p>"
    static PointConfig read(std::istream& in, std::size_t ambient_dim);
    void write(std::ostream& out) const;

private:
    Field field_;
    std::size_t n_;
    std::vector<ProjPoint> points_;
};

// projective dimension of the linear span of the subset (indices into cfg)
int span_dim(const PointConfig& cfg, const std::vector<std::size_t>& subset);

struct SubspaceMax {
    std::size_t count = 0;
    // indices of the config points lying in the maximizing subspace
    std::vector<std::size_t> witness;
};

// maximum number of config points contained in some k-dimensional projective
// subspace, over spans of (k+1)-subsets (degenerate spans included)
SubspaceMax max_in_subspace(const PointConfig& cfg, std::size_t k);

struct EisenbudKohResult {
    bool pass = true;
    std::size_t k = 0;                  // violating subspace dimension when !pass
    std::size_t bound = 0;              // d*k + 1
    std::vector<std::size_t> witness;   // config points in the violating subspace
};

// Pass iff every k-dimensional subspace, 1 <= k <= n-1, contains at most
// d*k + 1 of the points.
EisenbudKohResult eisenbud_koh_check(const PointConfig& cfg, std::size_t d);

// dim of the space of degree-d forms on the ambient P^n vanishing on the
// subset = C(n+d, d) - rank(evaluation matrix)
std::size_t vanishing_system_dim(const PointConfig& cfg, const std::vector<std::size_t>& subset,
                                 std::size_t d);

enum class QuadricSystemVerdict { NoCommonP3, NoQuadric, UniqueQuadric, Pencil };
std::string to_string(QuadricSystemVerdict v);

// classification of the quadrics through all points inside their common P^3
QuadricSystemVerdict pencil_of_quadrics_test(const PointConfig& cfg);

enum class TriBool { Yes, No, Indeterminate };
std::string to_string(TriBool v);

struct TwistedCubicResult {
    TriBool verdict = TriBool::Indeterminate;
    std::string reason;
    std::size_t quadric_system_dim = 0;
};

// Does some twisted cubic contain the subset?  "Yes" requires the quadrics
// through the subset to form a net (dim 3) whose base locus enumerates as a
// curve through all subset points over GF(q) and GF(q^2); "No" when the
// system is too small or the locus is finite; "Indeterminate" otherwise
// (always with a reason, never a silent guess).
TwistedCubicResult twisted_cubic_test(const PointConfig& cfg,
                                      const std::vector<std::size_t>& subset,
                                      std::uint64_t budget = 200000000ull);

struct LemmaSixReport {
    bool line_with_4 = false;
    std::vector<std::size_t> line_witness;
    bool plane_with_7 = false;
    std::vector<std::size_t> plane_witness;
    TriBool twisted_cubic_with_10 = TriBool::No;
    std::vector<std::size_t> twisted_cubic_witness;
    std::string twisted_cubic_reason;
    // maximal coplanar groups with >= 6 points, for plane-section classification
    std::vector<std::vector<std::size_t>> coplanar_six;
};

LemmaSixReport lemma_six_points_report(const PointConfig& cfg,
                                       std::uint64_t budget = 200000000ull);

// helpers shared with other modules
ExactMatrix coordinate_matrix(const PointConfig& cfg, const std::vector<std::size_t>& subset);
ExactMatrix evaluation_matrix_rows(const PointConfig& cfg, const std::vector<std::size_t>& subset,
                                   std::size_t d);
// parametrization of a P^3 containing all points (span padded deterministically)
LinearSubspaceParam containing_p3(const PointConfig& cfg);
// coordinates of the points inside a parametrized subspace
PointConfig restrict_config(const PointConfig& cfg, const LinearSubspaceParam& s);

} // namespace qfac

#endif

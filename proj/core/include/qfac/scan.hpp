#ifndef QFAC_SCAN_HPP
#define QFAC_SCAN_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qfac/field.hpp"
#include "qfac/poly.hpp"

// Exhaustive-search kernels over small finite fields.  Everything here works
// on dense-encoded GF elements and log-form coefficients so the hot loops
// stay in a few cache-resident tables.  All enumeration orders are fixed
// (lexicographic on normalized coordinates), so results are deterministic.
namespace qfac {
namespace scan {

inline constexpr std::uint32_t kLogZero = GFContext::kLogZero;
inline constexpr std::size_t kMaxScanVars = 8;

struct FTerm {
    std::array<std::uint8_t, kMaxScanVars> exps;
    std::uint32_t logc;
};

struct FPoly {
    std::uint32_t nvars = 0;
    std::vector<FTerm> terms;

    static FPoly from(const MultiPoly& f);
    // coefficient-wise embedding into a larger field
    static FPoly embedded(const MultiPoly& f, const FieldEmbedding& emb);
    bool is_zero() const { return terms.empty(); }
    // split by the exponent of the last variable: out[e] over nvars-1 vars
    std::vector<FPoly> last_var_coefficients() const;
};

// value (log form) of f at coordinates given in log form
std::uint32_t eval_log(const GFContext& ctx, const FPoly& f, const std::uint32_t* coords_log);
// value (dense) of f at dense coordinates
std::uint32_t eval_dense(const GFContext& ctx, const FPoly& f, const std::uint32_t* coords);

// All normalized points of P^{n-1}(GF(q)) (n = polys' nvars) where every
// poly vanishes, in ascending lexicographic coordinate order.  Throws
// budget_error when |P^{n-1}(q)| would exceed point_budget, or when more
// than result_cap zeros accumulate.
std::vector<std::vector<std::uint32_t>> projective_zeros(
    const GFContext& ctx, const std::vector<FPoly>& polys,
    std::uint64_t point_budget, std::uint64_t result_cap = 1u << 22);

// Common zeros in P^3(GF(q)) of {quadric} ∪ extras, solving the quadric as a
// polynomial of degree <= 2 in the last coordinate over a P^2 of prefixes.
// Budget counts the q^2+q+1 prefixes.
std::vector<std::array<std::uint32_t, 4>> p3_quadric_scan(
    const GFContext& ctx, const FPoly& quadric, const std::vector<FPoly>& extras,
    std::uint64_t prefix_budget, std::uint64_t result_cap = 1u << 22);

// roots of a*t^2 + b*t + c (log-form coefficients); all = whole field
struct QuadraticRoots {
    bool all = false;
    std::array<std::uint32_t, 2> dense{};
    std::uint32_t count = 0;
};
QuadraticRoots solve_quadratic(const GFContext& ctx, std::uint32_t la, std::uint32_t lb,
                               std::uint32_t lc);

// roots (dense) of a univariate given by log-form coefficient array c[0..deg]
// by full scan; sets all=true when identically zero
struct UnivariateRoots {
    bool all = false;
    std::vector<std::uint32_t> dense;
};
UnivariateRoots univariate_roots(const GFContext& ctx, const std::vector<std::uint32_t>& logc);

} // namespace scan
} // namespace qfac

#endif

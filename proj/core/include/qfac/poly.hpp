#ifndef QFAC_POLY_HPP
#define QFAC_POLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qfac/matrix.hpp"

namespace qfac {

using ExpVec = std::vector<std::uint16_t>;

// graded lexicographic: total degree first, then lex with x0 most significant
struct GrlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

// Homogeneous multivariate polynomial, sparse exponent map, exact
// coefficients.  The zero polynomial keeps a declared degree so that
// operations on it stay degree-consistent.
class MultiPoly {
public:
    MultiPoly(const Field& f, std::size_t nvars, long degree = 0);
    static MultiPoly monomial(const Field& f, ExpVec e, const FieldScalar& c);
    static MultiPoly variable(const Field& f, std::size_t nvars, std::size_t i);
    static MultiPoly constant(const Field& f, std::size_t nvars, const FieldScalar& c);

    const Field& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    long degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<ExpVec, FieldScalar, GrlexLess>& terms() const { return terms_; }

    FieldScalar coeff(const ExpVec& e) const; // zero scalar if absent
    void add_term(const ExpVec& e, const FieldScalar& c); // merges; drops zeros

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const FieldScalar& c) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    FieldScalar eval(const std::vector<FieldScalar>& x) const;
    MultiPoly partial(std::size_t i) const;

    // embed into a larger variable set (same indices)
    MultiPoly extended(std::size_t new_nvars) const;

    // *this == c * o for some nonzero scalar c
    bool proportional_to(const MultiPoly& o) const;

    // group terms by the exponent of variable `i`: result[e] is the
    // polynomial in the remaining grading with x_i^e stripped
    std::vector<MultiPoly> coefficients_in(std::size_t i) const;

    std::string to_string() const; // canonical graded-lex, leading term first

private:
    Field field_;
    std::size_t nvars_;
    long degree_;
    std::map<ExpVec, FieldScalar, GrlexLess> terms_;
};

std::vector<MultiPoly> gradient(const MultiPoly& f);

// nvars x nvars symmetric matrix of second partials evaluated at x
ExactMatrix hessian_matrix(const MultiPoly& f, const std::vector<FieldScalar>& x);

// Parametrized linear subspace: x = S t with S of full column rank.
struct LinearSubspaceParam {
    std::size_t ambient_nvars; // rows of S
    std::size_t params;        // columns of S
    ExactMatrix matrix;        // ambient_nvars x params

    explicit LinearSubspaceParam(ExactMatrix m);
    static LinearSubspaceParam from_columns(const Field& f,
                                            const std::vector<std::vector<FieldScalar>>& cols);
};

// pullback f(S t): homogeneous of the same degree in `params` variables
MultiPoly restrict_to_subspace(const MultiPoly& f, const LinearSubspaceParam& s);

// f(M t) for an arbitrary nvars x new_nvars matrix (no rank requirement)
MultiPoly substitute_linear(const MultiPoly& f, const ExactMatrix& m);

// coefficient-wise field embedding
MultiPoly embed_poly(const MultiPoly& f, const FieldEmbedding& emb);

// drop the last variable (all its exponents must be zero)
MultiPoly drop_last_var(const MultiPoly& f);

// all exponent vectors of total degree d in nvars variables, ascending
// graded-lex; count = C(nvars + d - 1, d)
std::vector<ExpVec> monomial_basis(std::size_t nvars, std::size_t d);

// Grammar: variables x0..x{n-1}, integer or rational literals a/b, operators
// + - * ^, parentheses, whitespace insignificant.  The result must be
// homogeneous; violations name the offending terms.
MultiPoly parse_poly(const std::string& text, std::size_t nvars, const Field& f);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

} // namespace qfac

#endif

#ifndef QFAC_MATRIX_HPP
#define QFAC_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "qfac/field.hpp"

namespace qfac {

// Dense exact matrix over one field.  All elimination is exact; the pivot
// rule is "first nonzero entry in column order", so every result is
// deterministic.
class ExactMatrix {
public:
    ExactMatrix(const Field& f, std::size_t rows, std::size_t cols);
    static ExactMatrix identity(const Field& f, std::size_t n);
    static ExactMatrix from_rows(const Field& f, const std::vector<std::vector<FieldScalar>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    const FieldScalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const FieldScalar& v);

    ExactMatrix transpose() const;
    std::vector<FieldScalar> row(std::size_t i) const;
    std::vector<FieldScalar> apply(const std::vector<FieldScalar>& x) const; // m * x
    ExactMatrix operator*(const ExactMatrix& o) const;

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<FieldScalar> a_;
};

struct RrefResult {
    ExactMatrix rref;
    std::vector<std::size_t> pivot_cols;
};

RrefResult rref(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

// Basis of { v : m v = 0 }; size == cols - rank.  Deterministic: one vector
// per free column in ascending column order, with a 1 in that column.
std::vector<std::vector<FieldScalar>> kernel_basis(const ExactMatrix& m);

// Some x with m x = b, or nullopt when inconsistent.  Free variables are 0.
std::optional<std::vector<FieldScalar>> solve_linear(const ExactMatrix& m,
                                                     const std::vector<FieldScalar>& b);

} // namespace qfac

#endif

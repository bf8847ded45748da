#include "qfac/matrix.hpp"

namespace qfac {

ExactMatrix::ExactMatrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, FieldScalar::zero(f)) {}

ExactMatrix ExactMatrix::identity(const Field& f, std::size_t n) {
    ExactMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, FieldScalar::one(f));
    return m;
}

ExactMatrix ExactMatrix::from_rows(const Field& f, const std::vector<std::vector<FieldScalar>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(f, rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw field_error("ragged rows in matrix construction");
        for (std::size_t j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void ExactMatrix::set(std::size_t i, std::size_t j, const FieldScalar& v) {
    if (v.field() != field_)
        throw field_error("matrix entry from a different field: " + v.field().to_string() +
                          " into " + field_.to_string());
    a_[i * cols_ + j] = v;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

std::vector<FieldScalar> ExactMatrix::row(std::size_t i) const {
    return std::vector<FieldScalar>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

std::vector<FieldScalar> ExactMatrix::apply(const std::vector<FieldScalar>& x) const {
    if (x.size() != cols_) throw field_error("dimension mismatch in matrix apply");
    std::vector<FieldScalar> y(rows_, FieldScalar::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] += at(i, j) * x[j];
    return y;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw field_error("dimension mismatch in matrix multiply");
    ExactMatrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero()) r.set(i, j, r.at(i, j) + at(i, k) * o.at(k, j));
        }
    return r;
}

RrefResult rref(const ExactMatrix& m) {
    ExactMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        // first nonzero at or below row r
        std::size_t pr = a.rows();
        for (std::size_t i = r; i < a.rows(); ++i)
            if (!a.at(i, c).is_zero()) { pr = i; break; }
        if (pr == a.rows()) continue;
        if (pr != r)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                FieldScalar t = a.at(r, j);
                a.set(r, j, a.at(pr, j));
                a.set(pr, j, t);
            }
        FieldScalar inv = a.at(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j) a.set(r, j, a.at(r, j) * inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            FieldScalar f = a.at(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a.set(i, j, a.at(i, j) - f * a.at(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return {a, pivots};
}

std::size_t rank(const ExactMatrix& m) { return rref(m).pivot_cols.size(); }

std::vector<std::vector<FieldScalar>> kernel_basis(const ExactMatrix& m) {
    RrefResult rr = rref(m);
    const Field& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<FieldScalar>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldScalar> v(m.cols(), FieldScalar::zero(f));
        v[free] = FieldScalar::one(f);
        for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
            v[rr.pivot_cols[i]] = -rr.rref.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<FieldScalar>> solve_linear(const ExactMatrix& m,
                                                     const std::vector<FieldScalar>& b) {
    if (b.size() != m.rows()) throw field_error("dimension mismatch in solve_linear");
    ExactMatrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, m.cols(), b[i]);
    }
    RrefResult rr = rref(aug);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        if (rr.pivot_cols[i] == m.cols()) return std::nullopt; // inconsistent
    std::vector<FieldScalar> x(m.cols(), FieldScalar::zero(m.field()));
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        x[rr.pivot_cols[i]] = rr.rref.at(i, m.cols());
    return x;
}

} // namespace qfac

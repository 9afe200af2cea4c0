#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "xtalk/rational.h"

namespace xtalk {

/// Dense square matrix of exact rationals whose rows and columns share one ordered list of
/// coordinate labels. Callers address entries by label; positional accessors exist for the
/// algorithms in this library.
class Matrix {
   public:
    Matrix() = default;
    /// Zero matrix over `labels`. Throws DimensionError on duplicate labels.
    explicit Matrix(std::vector<std::string> labels);
    /// Row-major entries; `entries.size()` must be labels.size()^2.
    Matrix(std::vector<std::string> labels, std::vector<Rational> entries);

    static Matrix identity(std::vector<std::string> labels);
    static Matrix diagonal(std::vector<std::string> labels, std::span<const Rational> values);

    size_t dim() const {
        return labels_.size();
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    bool has_label(const std::string &label) const;
    /// Throws UnknownLabelError.
    size_t index_of(const std::string &label) const;

    const Rational &at(const std::string &row, const std::string &col) const;
    void set(const std::string &row, const std::string &col, Rational value);

    const Rational &operator()(size_t i, size_t j) const {
        return entries_[i * dim() + j];
    }
    Rational &operator()(size_t i, size_t j) {
        return entries_[i * dim() + j];
    }

    bool is_symmetric() const;
    Matrix transpose() const;
    Matrix relabeled(std::vector<std::string> labels) const;

    friend bool operator==(const Matrix &a, const Matrix &b) = default;

   private:
    std::vector<std::string> labels_;
    std::vector<Rational> entries_;
};

/// Product a*b. Labels of the result are those of `a`; only dimensions must agree.
Matrix multiply(const Matrix &a, const Matrix &b);

/// Exact inverse by fraction-free (Bareiss) elimination. Throws SingularMatrixError.
Matrix invert(const Matrix &m);

/// Exact determinant (Bareiss).
Rational determinant(const Matrix &m);

/// Rows and columns restricted to `keep`, in the order they appear in `m`.
Matrix submatrix(const Matrix &m, std::span<const std::string> keep);

/// S^{-T} m S^{-1}: the capacitance matrix in the coordinates Phi = S Phi'. Columns of `s`
/// follow the label order of `m`; the result carries the labels of `s`.
Matrix congruence(const Matrix &m, const Matrix &s);

/// m_KK - m_KE m_EE^{-1} m_EK, where E = `eliminate` and K the remaining labels in order.
Matrix schur_complement(const Matrix &m, std::span<const std::string> eliminate);

std::ostream &operator<<(std::ostream &out, const Matrix &m);

}  // namespace xtalk

#include "xtalk/matrix.h"

#include <algorithm>
#include <ostream>
#include <unordered_set>
#include <utility>

#include "xtalk/errors.h"

namespace xtalk {

namespace {

void check_unique(const std::vector<std::string> &labels) {
    std::unordered_set<std::string> seen;
    for (const auto &label : labels) {
        if (!seen.insert(label).second) {
            throw DimensionError("duplicate label '" + label + "'");
        }
    }
}

using IntRows = std::vector<std::vector<mpz_class>>;

// Clears denominators row by row: returns integer rows B and multipliers d with B = diag(d) * m.
IntRows integer_rows(const Matrix &m, std::vector<mpz_class> &multipliers) {
    size_t n = m.dim();
    IntRows rows(n, std::vector<mpz_class>(n));
    multipliers.assign(n, mpz_class(1));
    for (size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (size_t j = 0; j < n; ++j) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
        }
        multipliers[i] = l;
        for (size_t j = 0; j < n; ++j) {
            const mpq_class &q = m(i, j).value();
            rows[i][j] = q.get_num() * (l / q.get_den());
        }
    }
    return rows;
}

void exact_divide(mpz_class &value, const mpz_class &divisor) {
    mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), divisor.get_mpz_t());
}

}  // namespace

Matrix::Matrix(std::vector<std::string> labels) : labels_(std::move(labels)) {
    check_unique(labels_);
    entries_.assign(labels_.size() * labels_.size(), Rational(0));
}

Matrix::Matrix(std::vector<std::string> labels, std::vector<Rational> entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
    check_unique(labels_);
    if (entries_.size() != labels_.size() * labels_.size()) {
        throw DimensionError("matrix over " + std::to_string(labels_.size()) + " labels needs " +
                             std::to_string(labels_.size() * labels_.size()) + " entries, got " +
                             std::to_string(entries_.size()));
    }
}

Matrix Matrix::identity(std::vector<std::string> labels) {
    Matrix m(std::move(labels));
    for (size_t i = 0; i < m.dim(); ++i) {
        m(i, i) = Rational(1);
    }
    return m;
}

Matrix Matrix::diagonal(std::vector<std::string> labels, std::span<const Rational> values) {
    Matrix m(std::move(labels));
    if (values.size() != m.dim()) {
        throw DimensionError("diagonal needs one value per label");
    }
    for (size_t i = 0; i < m.dim(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

bool Matrix::has_label(const std::string &label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

size_t Matrix::index_of(const std::string &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw UnknownLabelError(label);
    }
    return static_cast<size_t>(it - labels_.begin());
}

const Rational &Matrix::at(const std::string &row, const std::string &col) const {
    return (*this)(index_of(row), index_of(col));
}

void Matrix::set(const std::string &row, const std::string &col, Rational value) {
    (*this)(index_of(row), index_of(col)) = std::move(value);
}

bool Matrix::is_symmetric() const {
    for (size_t i = 0; i < dim(); ++i) {
        for (size_t j = i + 1; j < dim(); ++j) {
            if ((*this)(i, j) != (*this)(j, i)) {
                return false;
            }
        }
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(labels_);
    for (size_t i = 0; i < dim(); ++i) {
        for (size_t j = 0; j < dim(); ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix Matrix::relabeled(std::vector<std::string> labels) const {
    if (labels.size() != dim()) {
        throw DimensionError("relabel needs " + std::to_string(dim()) + " labels");
    }
    return Matrix(std::move(labels), entries_);
}

Matrix multiply(const Matrix &a, const Matrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("multiply: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()));
    }
    size_t n = a.dim();
    Matrix out(a.labels());
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) {
            if (a(i, k).is_zero()) {
                continue;
            }
            for (size_t j = 0; j < n; ++j) {
                if (!b(k, j).is_zero()) {
                    out(i, j) += a(i, k) * b(k, j);
                }
            }
        }
    }
    return out;
}

Matrix invert(const Matrix &m) {
    size_t n = m.dim();
    std::vector<mpz_class> scale;
    IntRows rows = integer_rows(m, scale);
    for (size_t i = 0; i < n; ++i) {
        rows[i].resize(2 * n, mpz_class(0));
        rows[i][n + i] = 1;
    }

    // Fraction-free Gauss-Jordan: after step k every division by the previous pivot is exact.
    mpz_class previous = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        while (pivot < n && rows[pivot][k] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw SingularMatrixError("matrix is singular (zero determinant)");
        }
        std::swap(rows[k], rows[pivot]);
        const mpz_class p = rows[k][k];
        for (size_t i = 0; i < n; ++i) {
            if (i == k) {
                continue;
            }
            const mpz_class f = rows[i][k];
            for (size_t j = 0; j < 2 * n; ++j) {
                if (j == k) {
                    continue;
                }
                mpz_class v = p * rows[i][j] - f * rows[k][j];
                exact_divide(v, previous);
                rows[i][j] = std::move(v);
            }
            rows[i][k] = 0;
        }
        previous = p;
    }

    // Left block is now det*I; the right block divided by det is B^{-1}. A^{-1} = B^{-1} diag(scale).
    Matrix out(m.labels());
    for (size_t i = 0; i < n; ++i) {
        const mpz_class &d = rows[i][i];
        for (size_t j = 0; j < n; ++j) {
            out(i, j) = Rational(mpq_class(rows[i][n + j] * scale[j], d));
        }
    }
    return out;
}

Rational determinant(const Matrix &m) {
    size_t n = m.dim();
    if (n == 0) {
        return Rational(1);
    }
    std::vector<mpz_class> scale;
    IntRows rows = integer_rows(m, scale);
    mpz_class previous = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && rows[pivot][k] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return Rational(0);
        }
        if (pivot != k) {
            std::swap(rows[k], rows[pivot]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class v = rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j];
                exact_divide(v, previous);
                rows[i][j] = std::move(v);
            }
        }
        previous = rows[k][k];
    }
    mpz_class scale_product = 1;
    for (const auto &s : scale) {
        scale_product *= s;
    }
    return Rational(mpq_class(sign * rows[n - 1][n - 1], scale_product));
}

Matrix submatrix(const Matrix &m, std::span<const std::string> keep) {
    std::vector<bool> selected(m.dim(), false);
    for (const auto &label : keep) {
        selected[m.index_of(label)] = true;
    }
    std::vector<size_t> idx;
    std::vector<std::string> labels;
    for (size_t i = 0; i < m.dim(); ++i) {
        if (selected[i]) {
            idx.push_back(i);
            labels.push_back(m.labels()[i]);
        }
    }
    Matrix out(std::move(labels));
    for (size_t a = 0; a < idx.size(); ++a) {
        for (size_t b = 0; b < idx.size(); ++b) {
            out(a, b) = m(idx[a], idx[b]);
        }
    }
    return out;
}

Matrix congruence(const Matrix &m, const Matrix &s) {
    if (m.dim() != s.dim()) {
        throw DimensionError("congruence: dimension mismatch " + std::to_string(m.dim()) + " vs " +
                             std::to_string(s.dim()));
    }
    Matrix s_inv = invert(s);
    Matrix left = s_inv.transpose();
    Matrix out = multiply(multiply(left, m.relabeled(s.labels())), s_inv);
    return out;
}

Matrix schur_complement(const Matrix &m, std::span<const std::string> eliminate) {
    std::vector<bool> removed(m.dim(), false);
    for (const auto &label : eliminate) {
        removed[m.index_of(label)] = true;
    }
    std::vector<std::string> kept_labels;
    std::vector<std::string> removed_labels;
    for (size_t i = 0; i < m.dim(); ++i) {
        (removed[i] ? removed_labels : kept_labels).push_back(m.labels()[i]);
    }
    Matrix kk = submatrix(m, kept_labels);
    if (removed_labels.empty()) {
        return kk;
    }
    Matrix ee_inv = invert(submatrix(m, removed_labels));

    std::vector<size_t> k_idx;
    std::vector<size_t> e_idx;
    for (const auto &l : kept_labels) {
        k_idx.push_back(m.index_of(l));
    }
    for (const auto &l : removed_labels) {
        e_idx.push_back(m.index_of(l));
    }
    // correction = m_KE * ee_inv * m_EK, accumulated without building rectangular matrices.
    size_t nk = k_idx.size();
    size_t ne = e_idx.size();
    std::vector<Rational> ke_inv(nk * ne);
    for (size_t a = 0; a < nk; ++a) {
        for (size_t b = 0; b < ne; ++b) {
            Rational acc;
            for (size_t c = 0; c < ne; ++c) {
                const Rational &v = m(k_idx[a], e_idx[c]);
                if (!v.is_zero()) {
                    acc += v * ee_inv(c, b);
                }
            }
            ke_inv[a * ne + b] = std::move(acc);
        }
    }
    for (size_t a = 0; a < nk; ++a) {
        for (size_t b = 0; b < nk; ++b) {
            Rational acc;
            for (size_t c = 0; c < ne; ++c) {
                const Rational &v = m(e_idx[c], k_idx[b]);
                if (!v.is_zero()) {
                    acc += ke_inv[a * ne + c] * v;
                }
            }
            kk(a, b) -= acc;
        }
    }
    return kk;
}

std::ostream &operator<<(std::ostream &out, const Matrix &m) {
    out << "[";
    for (size_t i = 0; i < m.dim(); ++i) {
        out << (i ? "\n " : "") << m.labels()[i] << ":";
        for (size_t j = 0; j < m.dim(); ++j) {
            out << " " << m(i, j);
        }
    }
    return out << "]";
}

}  // namespace xtalk

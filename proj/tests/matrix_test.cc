#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.h"
#include "xtalk/errors.h"
#include "xtalk/matrix.h"

using namespace xtalk;

namespace {

std::vector<std::string> labels(size_t n) {
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) {
        out.push_back("x" + std::to_string(i));
    }
    return out;
}

Matrix random_matrix(std::mt19937_64 &rng, size_t n) {
    Matrix m(labels(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) {
            m(i, k) = fixtures::random_rational(rng, -20, 20, 13);
        }
    }
    return m;
}

// Leibniz expansion; independent of the elimination code.
Rational leibniz(const Matrix &m) {
    std::vector<size_t> perm(m.dim());
    std::iota(perm.begin(), perm.end(), 0);
    Rational total;
    do {
        int inversions = 0;
        for (size_t i = 0; i < perm.size(); ++i) {
            for (size_t k = i + 1; k < perm.size(); ++k) {
                inversions += perm[i] > perm[k];
            }
        }
        Rational term(inversions % 2 ? -1 : 1);
        for (size_t i = 0; i < perm.size(); ++i) {
            term *= m(i, perm[i]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

TEST(Matrix, LabelsAddressEntries) {
    Matrix m({"a", "b"});
    m.set("a", "b", Rational(3));
    EXPECT_EQ(m.at("a", "b"), Rational(3));
    EXPECT_EQ(m(0, 1), Rational(3));
    EXPECT_EQ(m.index_of("b"), 1u);
    EXPECT_THROW(m.index_of("c"), UnknownLabelError);
    EXPECT_THROW(Matrix({"a", "a"}), DimensionError);
    EXPECT_THROW(Matrix({"a"}, {Rational(1), Rational(2)}), DimensionError);
}

TEST(Matrix, InverseTimesMatrixIsIdentity) {
    std::mt19937_64 rng(3);
    int tested = 0;
    for (size_t n = 1; n <= 7; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            Matrix m = random_matrix(rng, n);
            if (leibniz(m).is_zero()) {
                EXPECT_THROW(invert(m), SingularMatrixError);
                continue;
            }
            Matrix inv = invert(m);
            EXPECT_EQ(multiply(m, inv), Matrix::identity(m.labels()));
            EXPECT_EQ(multiply(inv, m), Matrix::identity(m.labels()));
            ++tested;
        }
    }
    EXPECT_GT(tested, 100);
}

TEST(Matrix, InvertNeedsPivoting) {
    Matrix m({"a", "b", "c"}, {0, 1, 2, 1, 0, 3, 4, -3, 8});
    EXPECT_EQ(multiply(m, invert(m)), Matrix::identity(m.labels()));
}

TEST(Matrix, HilbertInverseHasIntegerEntries) {
    const size_t n = 6;
    Matrix h(labels(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) {
            h(i, k) = Rational(1, static_cast<int64_t>(i + k + 1));
        }
    }
    Matrix inv = invert(h);
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) {
            EXPECT_TRUE(inv(i, k).is_integer());
        }
    }
    EXPECT_EQ(inv(0, 0), Rational(36));
    EXPECT_EQ(multiply(h, inv), Matrix::identity(h.labels()));
}

TEST(Matrix, SingularMatrixThrows) {
    Matrix m({"a", "b"}, {1, 2, 2, 4});
    EXPECT_THROW(invert(m), SingularMatrixError);
    EXPECT_EQ(determinant(m), Rational(0));
}

TEST(Matrix, DeterminantMatchesLeibniz) {
    std::mt19937_64 rng(5);
    for (size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            Matrix m = random_matrix(rng, n);
            EXPECT_EQ(determinant(m), leibniz(m));
        }
    }
    Matrix zero_pivot({"a", "b"}, {0, 1, 1, 0});
    EXPECT_EQ(determinant(zero_pivot), Rational(-1));
}

TEST(Matrix, TransposeAndSymmetry) {
    Matrix m({"a", "b"}, {1, 2, 3, 4});
    EXPECT_FALSE(m.is_symmetric());
    EXPECT_EQ(m.transpose().at("a", "b"), Rational(3));
    EXPECT_TRUE(multiply(m, m.transpose()).is_symmetric());
}

TEST(Matrix, SubmatrixKeepsSourceOrder) {
    Matrix m({"a", "b", "c"}, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    std::vector<std::string> keep{"c", "a"};
    Matrix s = submatrix(m, keep);
    EXPECT_EQ(s.labels(), (std::vector<std::string>{"a", "c"}));
    EXPECT_EQ(s, Matrix({"a", "c"}, {1, 3, 7, 9}));
}

TEST(Matrix, CongruenceOfIdentityTransformIsRelabel) {
    Matrix m({"a", "b"}, {2, -1, -1, 3});
    Matrix s = Matrix::identity({"u", "v"});
    EXPECT_EQ(congruence(m, s), m.relabeled({"u", "v"}));
}

TEST(Matrix, CongruencePreservesQuadraticForm) {
    // x^T m x == y^T C y for x = S^{-1} y is the same as C = S^{-T} m S^{-1}.
    std::mt19937_64 rng(9);
    Matrix m({"a", "b", "c"}, {5, -1, -2, -1, 4, 0, -2, 0, 6});
    Matrix s({"p", "q", "r"}, {1, 1, 0, 1, -1, 0, 0, 0, 1});
    Matrix c = congruence(m, s);
    EXPECT_EQ(multiply(multiply(s.transpose(), c), s), m.relabeled(s.labels()));
    EXPECT_TRUE(c.is_symmetric());
}

TEST(Matrix, SchurComplementMatchesInverseRestriction) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        // Diagonally dominant symmetric, hence invertible along with every principal block.
        Matrix m(labels(5));
        for (size_t i = 0; i < 5; ++i) {
            for (size_t k = i + 1; k < 5; ++k) {
                Rational v = fixtures::random_rational(rng, -5, 0);
                m(i, k) = v;
                m(k, i) = v;
            }
        }
        for (size_t i = 0; i < 5; ++i) {
            Rational row;
            for (size_t k = 0; k < 5; ++k) {
                row += abs(m(i, k));
            }
            m(i, i) = row + fixtures::random_positive(rng, 10);
        }
        std::vector<std::string> eliminate{"x1", "x3"};
        std::vector<std::string> keep{"x0", "x2", "x4"};
        Matrix schur = schur_complement(m, eliminate);
        Matrix via_inverse = invert(submatrix(invert(m), keep));
        EXPECT_EQ(schur, via_inverse);
    }
}

TEST(Matrix, MultiplyChecksDimensions) {
    EXPECT_THROW(multiply(Matrix({"a"}), Matrix({"a", "b"})), DimensionError);
}

#include <gtest/gtest.h>

#include <sstream>

#include "support.h"
#include "xtalk/errors.h"

using xtalk::ArithmeticError;
using xtalk::Rational;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
    EXPECT_EQ(Rational::parse("70"), Rational(70));
    EXPECT_EQ(Rational::parse("-3/6"), Rational(-1, 2));
    EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
    EXPECT_EQ(Rational::parse("+1.25e1"), Rational(25, 2));
    EXPECT_EQ(Rational::parse("5E-3"), Rational(1, 200));
    EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("2."), Rational(2));
}

TEST(Rational, DecimalIsExactNotBinary) {
    Rational tenth = Rational::parse("0.1");
    EXPECT_EQ(tenth * Rational(10), Rational(1));
    EXPECT_EQ(tenth.denominator(), 10);
}

TEST(Rational, RejectsMalformedLiterals) {
    for (const char *bad : {"", "abc", "1/0", "1/", "/2", "1e", "1.2.3", "--1", "1e99999999", "0x10", "1 2"}) {
        EXPECT_THROW(Rational::parse(bad), ArithmeticError) << bad;
    }
}

TEST(Rational, ZeroDenominatorAndDivisionThrow) {
    EXPECT_THROW(Rational(1, 0), ArithmeticError);
    EXPECT_THROW(Rational(1) / Rational(0), ArithmeticError);
}

TEST(Rational, CanonicalForm) {
    Rational r(6, -4);
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.to_fraction_string(), "-3/2");
    EXPECT_EQ(Rational(70).to_fraction_string(), "70/1");
}

TEST(Rational, ExactString) {
    EXPECT_EQ(Rational(70).to_exact_string(), "70");
    EXPECT_EQ(Rational(1, 10).to_exact_string(), "0.1");
    EXPECT_EQ(Rational(-3, 8).to_exact_string(), "-0.375");
    EXPECT_EQ(Rational(1, 3).to_exact_string(), "1/3");
    EXPECT_EQ(Rational(1, 1024).to_exact_string(), "0.0009765625");
}

TEST(Rational, ExactStringRoundTrips) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Rational r = xtalk::fixtures::random_rational(rng, -1000, 1000, 2000);
        EXPECT_EQ(Rational::parse(r.to_exact_string()), r);
        EXPECT_EQ(Rational::parse(r.to_fraction_string()), r);
    }
}

TEST(Rational, DecimalString) {
    EXPECT_EQ(Rational(1, 28).to_decimal_string(12), "0.0357142857143");
    EXPECT_EQ(Rational(0).to_decimal_string(12), "0");
    EXPECT_EQ(Rational(-1, 3).to_decimal_string(4), "-0.3333");
}

TEST(Rational, ArithmeticAndOrdering) {
    Rational a(1, 3);
    Rational b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, b);
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(-a, Rational(-1, 3));
    EXPECT_LT(b, a);
    EXPECT_GT(Rational(0), Rational(-1, 1000000));
    EXPECT_EQ(abs(Rational(-2, 5)), Rational(2, 5));
    EXPECT_TRUE(Rational(0).is_zero());
    EXPECT_TRUE(Rational(4, 2).is_integer());
    EXPECT_EQ(Rational(-1, 7).sign(), -1);
}

TEST(Rational, FieldIdentitiesHoldExactly) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Rational x = xtalk::fixtures::random_rational(rng, -50, 50);
        Rational y = xtalk::fixtures::random_rational(rng, -50, 50);
        Rational z = xtalk::fixtures::random_positive(rng, 50);
        EXPECT_EQ((x + y) * z, x * z + y * z);
        EXPECT_EQ((x / z) * z, x);
        EXPECT_EQ(x - x, Rational(0));
    }
}

TEST(Rational, ToDouble) {
    EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
    EXPECT_NEAR(Rational(1, 3).to_double(), 1.0 / 3.0, 1e-16);
}

TEST(Rational, StreamsAsFraction) {
    std::ostringstream out;
    out << Rational(2, 6);
    EXPECT_EQ(out.str(), "1/3");
}

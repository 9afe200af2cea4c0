#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace xtalk {

/// Exact rational number, always held in lowest terms with a positive denominator.
class Rational {
   public:
    Rational() = default;
    Rational(int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(int64_t numerator, int64_t denominator);
    explicit Rational(mpq_class value);

    /// Parses "p", "p/q", or a decimal literal ("1.25e1"). Throws ArithmeticError on malformed text.
    static Rational parse(std::string_view text);

    const mpq_class &value() const {
        return value_;
    }
    mpz_class numerator() const {
        return value_.get_num();
    }
    mpz_class denominator() const {
        return value_.get_den();
    }

    bool is_zero() const {
        return sgn(value_) == 0;
    }
    bool is_integer() const {
        return value_.get_den() == 1;
    }
    int sign() const {
        return sgn(value_);
    }

    double to_double() const;

    /// "p/q" for every value, including integers ("70/1").
    std::string to_fraction_string() const;

    /// Shortest exact text: "p" for integers, a terminating decimal when one exists, else "p/q".
    std::string to_exact_string() const;

    /// Decimal approximation with `digits` significant digits (printf %g style).
    std::string to_decimal_string(int digits = 12) const;

    Rational operator-() const;
    Rational &operator+=(const Rational &other);
    Rational &operator-=(const Rational &other);
    Rational &operator*=(const Rational &other);
    Rational &operator/=(const Rational &other);

    friend Rational operator+(Rational a, const Rational &b) {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b) {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b) {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b) {
        return a /= b;
    }

    friend bool operator==(const Rational &a, const Rational &b) {
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

   private:
    mpq_class value_{0};
};

Rational abs(const Rational &r);

/// Exact value of a decimal literal: optional sign, digits, optional fraction, optional exponent.
Rational rational_from_decimal(std::string_view text);

std::ostream &operator<<(std::ostream &out, const Rational &r);

}  // namespace xtalk

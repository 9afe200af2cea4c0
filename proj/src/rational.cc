#include "xtalk/rational.h"

#include <cctype>
#include <cstdio>
#include <ostream>

#include "xtalk/errors.h"

namespace xtalk {

namespace {

constexpr long kMaxExponent = 4096;

mpz_class pow10(unsigned long exponent) {
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void malformed(std::string_view text) {
    throw ArithmeticError("malformed number literal '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(int64_t value) : value_(static_cast<long>(value)) {
}

Rational::Rational(int64_t numerator, int64_t denominator) {
    if (denominator == 0) {
        throw ArithmeticError("division by zero");
    }
    value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return rational_from_decimal(text);
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
        negative = num[0] == '-';
        num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        malformed(text);
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw ArithmeticError("division by zero in literal '" + std::string(text) + "'");
    }
    if (negative) {
        n = -n;
    }
    return Rational(mpq_class(n, d));
}

double Rational::to_double() const {
    return value_.get_d();
}

std::string Rational::to_fraction_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_exact_string() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    mpz_class den = value_.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) {
        return to_fraction_string();
    }
    unsigned long places = std::max(twos, fives);
    mpz_class scaled = value_.get_num() * pow10(places) / value_.get_den();
    bool negative = scaled < 0;
    std::string digits = mpz_class(abs(scaled)).get_str();
    if (digits.size() <= places) {
        digits.insert(0, places - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - places, ".");
    return negative ? "-" + digits : digits;
}

std::string Rational::to_decimal_string(int digits) const {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, to_double());
    return buffer;
}

Rational Rational::operator-() const {
    return Rational(mpq_class(-value_));
}

Rational &Rational::operator+=(const Rational &other) {
    value_ += other.value_;
    return *this;
}

Rational &Rational::operator-=(const Rational &other) {
    value_ -= other.value_;
    return *this;
}

Rational &Rational::operator*=(const Rational &other) {
    value_ *= other.value_;
    return *this;
}

Rational &Rational::operator/=(const Rational &other) {
    if (other.is_zero()) {
        throw ArithmeticError("division by zero");
    }
    value_ /= other.value_;
    return *this;
}

Rational abs(const Rational &r) {
    return r.sign() < 0 ? -r : r;
}

Rational rational_from_decimal(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
        negative = rest[0] == '-';
        rest.remove_prefix(1);
    }

    long exponent = 0;
    auto e = rest.find_first_of("eE");
    if (e != std::string_view::npos) {
        std::string_view exp_text = rest.substr(e + 1);
        rest = rest.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
            exp_negative = exp_text[0] == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text)) {
            malformed(text);
        }
        if (exp_text.size() > 6) {
            throw ArithmeticError("exponent out of range in '" + std::string(text) + "'");
        }
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) {
            exponent = -exponent;
        }
    }

    std::string_view int_part = rest;
    std::string_view frac_part;
    auto dot = rest.find('.');
    if (dot != std::string_view::npos) {
        int_part = rest.substr(0, dot);
        frac_part = rest.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) {
        malformed(text);
    }
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
        malformed(text);
    }

    exponent -= static_cast<long>(frac_part.size());
    if (exponent > kMaxExponent || exponent < -kMaxExponent) {
        throw ArithmeticError("exponent out of range in '" + std::string(text) + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class mantissa(digits, 10);
    if (negative) {
        mantissa = -mantissa;
    }
    mpq_class value;
    if (exponent >= 0) {
        value = mpq_class(mantissa * pow10(static_cast<unsigned long>(exponent)));
    } else {
        value = mpq_class(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    }
    return Rational(std::move(value));
}

std::ostream &operator<<(std::ostream &out, const Rational &r) {
    return out << r.to_fraction_string();
}

}  // namespace xtalk

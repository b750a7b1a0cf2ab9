#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regcert {

/// Raised on division by zero and on undefined extended-arithmetic forms (0/0, inf - inf).
class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a textual rational is not of the form "a" or "a/b" with integer a, b.
class RationalFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact rational number backed by GMP. Always canonical: gcd(|num|, den) = 1, den > 0.
class Rational {
public:
    Rational() = default;

    template <std::integral T>
    Rational(T value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);

    static Rational from_integers(const mpz_class& numerator, const mpz_class& denominator);

    /// Accepts "[-]digits" or "[-]digits/digits" (surrounding whitespace allowed). Decimal
    /// points and exponents are rejected so exponents stay exact.
    static Rational parse(std::string_view text);

    const mpz_class& numerator() const { return value_.get_num(); }
    const mpz_class& denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational abs() const;
    Rational reciprocal() const;
    double to_double() const { return value_.get_d(); }
    long double to_long_double() const;

    /// Always "num/den", e.g. "5/1", "-3/5".
    std::string str() const;

    Rational& operator+=(const Rational& other);
    Rational& operator-=(const Rational& other);
    Rational& operator*=(const Rational& other);
    Rational& operator/=(const Rational& other);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
        const int c = cmp(lhs.value_, rhs.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Smallest rational of the form m / 2^k (k minimal) that lies in the open interval (lo, hi)
/// and is >= target. Requires lo < target < hi.
Rational dyadic_round_up(const Rational& lo, const Rational& hi, const Rational& target);

}  // namespace regcert

template <>
struct std::hash<regcert::Rational> {
    std::size_t operator()(const regcert::Rational& q) const noexcept;
};

#pragma once

#include "regcert/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace regcert {

/// A rational or +infinity. Finite values compare below infinity; infinity equals only itself.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(Rational value) : finite_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    template <std::integral T>
    ExtRational(T value) : finite_(Rational(value)) {}  // NOLINT(google-explicit-constructor)

    static ExtRational infinity() {
        ExtRational e;
        e.finite_.reset();
        return e;
    }

    bool is_infinite() const { return !finite_.has_value(); }
    bool is_finite() const { return finite_.has_value(); }

    /// Throws ArithmeticError when infinite.
    const Rational& value() const;

    /// 1/x with 1/inf = 0. 1/0 throws ArithmeticError.
    Rational reciprocal() const;

    /// "inf" or "num/den".
    std::string str() const;
    /// Accepts "inf", "infinity", or any Rational::parse form.
    static ExtRational parse(std::string_view text);

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator-(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator*(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator/(const ExtRational& a, const ExtRational& b);

    friend bool operator==(const ExtRational& a, const ExtRational& b) { return a.finite_ == b.finite_; }
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
        }
        return *a.finite_ <=> *b.finite_;
    }

private:
    // Empty means +infinity.
    std::optional<Rational> finite_{Rational(0)};
};

}  // namespace regcert

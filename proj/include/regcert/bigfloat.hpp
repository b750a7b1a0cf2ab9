#pragma once

#include "regcert/rational.hpp"

#include <mpfr.h>

#include <string>

namespace regcert {

/// Owning MPFR value with a fixed precision; results take the larger operand precision.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision = 256);
    BigFloat(const Rational& q, mpfr_prec_t precision);
    BigFloat(long double x, mpfr_prec_t precision);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    /// Bits needed for `digits` significant decimal digits plus guard bits.
    static mpfr_prec_t precision_for_digits(int digits);

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }

    BigFloat abs() const;
    long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
    bool is_positive() const { return mpfr_sgn(value_) > 0; }

    /// Decimal rendering with `digits` significant digits, e.g. "1.6105100000e+10".
    std::string str(int digits) const;

private:
    mpfr_t value_;
};

BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);

}  // namespace regcert

#include "regcert/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace regcert {

BigFloat::BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_q(value_, q.raw().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long double x, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_ld(value_, x, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

mpfr_prec_t BigFloat::precision_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * 3.3219280948873623)) + 64;
}

namespace {

template <typename Fn>
BigFloat binary(const BigFloat& a, const BigFloat& b, Fn fn) {
    BigFloat out(std::max(a.precision(), b.precision()));
    fn(out.get(), a.get(), b.get(), MPFR_RNDN);
    return out;
}

}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }

BigFloat BigFloat::abs() const {
    BigFloat out(precision());
    mpfr_abs(out.value_, value_, MPFR_RNDN);
    return out;
}

std::string BigFloat::str(int digits) const {
    const int n = mpfr_snprintf(nullptr, 0, "%.*Re", std::max(digits, 1) - 1, value_);
    std::vector<char> buf(static_cast<std::size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", std::max(digits, 1) - 1, value_);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

BigFloat log(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_log(out.get(), x.get(), MPFR_RNDN);
    return out;
}

BigFloat exp(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_exp(out.get(), x.get(), MPFR_RNDN);
    return out;
}

}  // namespace regcert

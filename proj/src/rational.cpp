#include "regcert/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <ostream>

namespace regcert {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw RationalFormatError("not an exact rational: \"" + std::string(whole) + "\"");
    }
    mpz_class z(std::string(s), 10);
    return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw ArithmeticError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    if (value_.get_den() == 0) throw ArithmeticError("rational with zero denominator");
    value_.canonicalize();
}

Rational Rational::from_integers(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw ArithmeticError("rational with zero denominator");
    mpq_class q(numerator, denominator);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::parse(std::string_view text) {
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return from_integers(parse_integer(s, text), 1);
    }
    const std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) {
        throw RationalFormatError("not an exact rational: \"" + std::string(text) + "\"");
    }
    const mpz_class den(std::string(den_text), 10);
    if (den == 0) throw RationalFormatError("zero denominator in \"" + std::string(text) + "\"");
    return from_integers(parse_integer(s.substr(0, slash), text), den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw ArithmeticError("reciprocal of zero");
    return Rational(mpq_class(1) / value_);
}

long double Rational::to_long_double() const {
    mpfr_t x;
    mpfr_init2(x, 128);
    mpfr_set_q(x, value_.get_mpq_t(), MPFR_RNDN);
    const long double result = mpfr_get_ld(x, MPFR_RNDN);
    mpfr_clear(x);
    return result;
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& other) {
    value_ *= other.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& other) {
    if (other.is_zero()) throw ArithmeticError("division by zero");
    value_ /= other.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational dyadic_round_up(const Rational& lo, const Rational& hi, const Rational& target) {
    if (!(lo < target && target < hi)) {
        throw std::invalid_argument("dyadic_round_up: target outside (lo, hi)");
    }
    mpz_class scale = 1;
    for (;;) {
        // ceil(target * scale) / scale
        mpz_class scaled_num = target.numerator() * scale;
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), target.denominator().get_mpz_t());
        Rational candidate = Rational::from_integers(q, scale);
        if (lo < candidate && candidate < hi) return candidate;
        scale *= 2;
    }
}

}  // namespace regcert

std::size_t std::hash<regcert::Rational>::operator()(const regcert::Rational& q) const noexcept {
    return std::hash<std::string>{}(q.str());
}

#include "regcert/ext_rational.hpp"

namespace regcert {

const Rational& ExtRational::value() const {
    if (!finite_) throw ArithmeticError("value() of infinity");
    return *finite_;
}

Rational ExtRational::reciprocal() const {
    if (!finite_) return Rational(0);
    return finite_->reciprocal();
}

std::string ExtRational::str() const { return finite_ ? finite_->str() : std::string("inf"); }

ExtRational ExtRational::parse(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    }
    if (s == "inf" || s == "infinity" || s == "+inf") return infinity();
    return ExtRational(Rational::parse(s));
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite() || b.is_infinite()) return ExtRational::infinity();
    return ExtRational(*a.finite_ + *b.finite_);
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) {
    if (b.is_infinite()) throw ArithmeticError("subtracting infinity");
    if (a.is_infinite()) return ExtRational::infinity();
    return ExtRational(*a.finite_ - *b.finite_);
}

ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite() || b.is_infinite()) {
        const ExtRational& other = a.is_infinite() ? b : a;
        if (other.is_infinite()) return ExtRational::infinity();
        if (other.finite_->sign() <= 0) throw ArithmeticError("infinity times non-positive value");
        return ExtRational::infinity();
    }
    return ExtRational(*a.finite_ * *b.finite_);
}

ExtRational operator/(const ExtRational& a, const ExtRational& b) {
    if (b.is_infinite()) {
        if (a.is_infinite()) throw ArithmeticError("infinity divided by infinity");
        return ExtRational(Rational(0));
    }
    if (b.finite_->is_zero()) throw ArithmeticError("division by zero");
    if (a.is_infinite()) {
        if (b.finite_->sign() < 0) throw ArithmeticError("infinity divided by negative value");
        return ExtRational::infinity();
    }
    return ExtRational(*a.finite_ / *b.finite_);
}

}  // namespace regcert

#pragma once

#include "regcert/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace regcert {

class NonSquareError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IndexOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

using RVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols);
    RMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    /// Bounds-checked access; throws IndexOutOfRange.
    const Rational& at(std::size_t i, std::size_t j) const;
    Rational& at(std::size_t i, std::size_t j);

    std::span<const Rational> row(std::size_t i) const;

    /// Principal or general submatrix with the given row and column index lists.
    RMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
    RMatrix principal(std::span<const std::size_t> idx) const { return submatrix(idx, idx); }
    RMatrix with_column(std::size_t j, std::span<const Rational> column) const;
    RMatrix transposed() const;

    RVector operator*(std::span<const Rational> x) const;
    friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
    friend RMatrix operator-(const RMatrix& a, const RMatrix& b);
    friend bool operator==(const RMatrix& a, const RMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Exact determinant. Cofactor expansion for n <= 4, fraction-free elimination above.
/// Throws NonSquareError.
Rational det(const RMatrix& m);

/// Exact solution of m x = b. Throws NonSquareError, SingularMatrixError.
/// The result is checked by multiplying back before it is returned.
RVector solve(const RMatrix& m, std::span<const Rational> b);

/// Exact inverse. Throws NonSquareError, SingularMatrixError.
RMatrix inverse(const RMatrix& m);

/// Cramer numerators: entry j is det(m with column j replaced by `column`).
RVector cramer_numerators(const RMatrix& m, std::span<const Rational> column);

namespace detail {
Rational det_cofactor(const RMatrix& m);
Rational det_bareiss(const RMatrix& m);
}  // namespace detail

}  // namespace regcert

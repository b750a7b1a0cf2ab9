#include "regcert/matrix.hpp"

#include <numeric>
#include <utility>

namespace regcert {

RMatrix::RMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RMatrix::RMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("RMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RMatrix RMatrix::identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = Rational(1);
    return m;
}

const Rational& RMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw IndexOutOfRange("RMatrix index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    return data_[i * cols_ + j];
}

Rational& RMatrix::at(std::size_t i, std::size_t j) {
    return const_cast<Rational&>(std::as_const(*this).at(i, j));
}

std::span<const Rational> RMatrix::row(std::size_t i) const {
    if (i >= rows_) throw IndexOutOfRange("RMatrix row " + std::to_string(i));
    return {data_.data() + i * cols_, cols_};
}

RMatrix RMatrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    RMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t a = 0; a < row_idx.size(); ++a) {
        for (std::size_t b = 0; b < col_idx.size(); ++b) out.at(a, b) = at(row_idx[a], col_idx[b]);
    }
    return out;
}

RMatrix RMatrix::with_column(std::size_t j, std::span<const Rational> column) const {
    if (j >= cols_ || column.size() != rows_) throw IndexOutOfRange("RMatrix::with_column");
    RMatrix out = *this;
    for (std::size_t i = 0; i < rows_; ++i) out.data_[i * cols_ + j] = column[i];
    return out;
}

RMatrix RMatrix::transposed() const {
    RMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
    }
    return out;
}

RVector RMatrix::operator*(std::span<const Rational> x) const {
    if (x.size() != cols_) throw std::invalid_argument("RMatrix * vector: size mismatch");
    RVector y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rational& a = data_[i * cols_ + j];
            if (!a.is_zero()) y[i] += a * x[j];
        }
    }
    return y;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RMatrix * RMatrix: size mismatch");
    RMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a.data_[i * a.cols_ + k];
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * b.cols_ + j] += aik * b.data_[k * b.cols_ + j];
        }
    }
    return out;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("RMatrix - RMatrix: size mismatch");
    RMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
}

namespace detail {

namespace {

Rational cofactor_rec(const RMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
    const std::size_t k = cols.size();
    if (k == 1) return m.at(row, cols[0]);
    if (k == 2) return m.at(row, cols[0]) * m.at(row + 1, cols[1]) - m.at(row, cols[1]) * m.at(row + 1, cols[0]);
    Rational acc(0);
    for (std::size_t c = 0; c < k; ++c) {
        const Rational& a = m.at(row, cols[c]);
        if (a.is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(k - 1);
        for (std::size_t t = 0; t < k; ++t) {
            if (t != c) rest.push_back(cols[t]);
        }
        Rational minor = cofactor_rec(m, rest, row + 1);
        if (c % 2 == 0) {
            acc += a * minor;
        } else {
            acc -= a * minor;
        }
    }
    return acc;
}

}  // namespace

Rational det_cofactor(const RMatrix& m) {
    if (!m.is_square()) throw NonSquareError("det of non-square matrix");
    if (m.rows() == 0) return Rational(1);
    std::vector<std::size_t> cols(m.cols());
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    return cofactor_rec(m, cols, 0);
}

Rational det_bareiss(const RMatrix& m) {
    if (!m.is_square()) throw NonSquareError("det of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);

    // Clear denominators row by row, then eliminate over the integers.
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).denominator().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j).numerator() * (l / m.at(i, j).denominator());
        scale *= l;
    }

    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return Rational(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    mpz_class d = a[n - 1][n - 1];
    if (sign < 0) d = -d;
    return Rational::from_integers(d, scale);
}

}  // namespace detail

Rational det(const RMatrix& m) {
    if (!m.is_square()) throw NonSquareError("det of non-square matrix");
    return m.rows() <= 4 ? detail::det_cofactor(m) : detail::det_bareiss(m);
}

RVector solve(const RMatrix& m, std::span<const Rational> b) {
    if (!m.is_square()) throw NonSquareError("solve with non-square matrix");
    const std::size_t n = m.rows();
    if (b.size() != n) throw std::invalid_argument("solve: right-hand side size mismatch");

    std::vector<RVector> aug(n, RVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m.at(i, j);
        aug[i][n] = b[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && aug[p][k].is_zero()) ++p;
        if (p == n) throw SingularMatrixError("solve: singular matrix");
        std::swap(aug[k], aug[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (aug[i][k].is_zero()) continue;
            const Rational f = aug[i][k] / aug[k][k];
            for (std::size_t j = k; j <= n; ++j) aug[i][j] -= f * aug[k][j];
        }
    }
    RVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = aug[i][n];
        for (std::size_t j = i + 1; j < n; ++j) acc -= aug[i][j] * x[j];
        x[i] = acc / aug[i][i];
    }

    const RVector back = m * x;
    for (std::size_t i = 0; i < n; ++i) {
        if (back[i] != b[i]) throw std::logic_error("solve: back-substitution check failed");
    }
    return x;
}

RMatrix inverse(const RMatrix& m) {
    if (!m.is_square()) throw NonSquareError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        RVector e(n, Rational(0));
        e[j] = Rational(1);
        const RVector col = solve(m, e);
        for (std::size_t i = 0; i < n; ++i) out.at(i, j) = col[i];
    }
    return out;
}

RVector cramer_numerators(const RMatrix& m, std::span<const Rational> column) {
    if (!m.is_square()) throw NonSquareError("cramer_numerators of non-square matrix");
    RVector out;
    out.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(det(m.with_column(j, column)));
    return out;
}

}  // namespace regcert

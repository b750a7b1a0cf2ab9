#include "doctest.h"

#include "regcert/digraph.hpp"
#include "regcert/ext_rational.hpp"
#include "regcert/matrix.hpp"
#include "support/instances.hpp"

#include <random>

using namespace regcert;

namespace {

bool canonical(const Rational& q) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
    return q.denominator() > 0 && (q.is_zero() ? q.denominator() == 1 : g == 1);
}

RMatrix random_matrix(std::size_t n, testing::Rng& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rational(num(rng), den(rng));
    }
    return m;
}

// Floyd-Warshall closure, self-loops ignored.
bool closure_connected(const BoolMatrix& adj) {
    const std::size_t n = adj.size();
    BoolMatrix reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) reach[i][j] = i != j && adj[i][j];
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && !reach[i][j]) return false;
        }
    }
    return true;
}

BoolMatrix from_bits(std::size_t n, unsigned long bits) {
    BoolMatrix adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) adj[i][j] = (bits >> (i * n + j)) & 1UL;
    }
    return adj;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse(" -10/4 ").str() == "-5/2");
    CHECK_THROWS_AS(Rational::parse("10/-4"), RationalFormatError);
    CHECK(Rational::parse("7").str() == "7/1");
    CHECK(Rational::parse("0/5").str() == "0/1");
    CHECK_THROWS_AS(Rational::parse("0.5"), RationalFormatError);
    CHECK_THROWS_AS(Rational::parse("1e3"), RationalFormatError);
    CHECK_THROWS_AS(Rational::parse("1/0"), RationalFormatError);
    CHECK_THROWS_AS(Rational::parse(""), RationalFormatError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ArithmeticError);
    CHECK_THROWS_AS(Rational(0).reciprocal(), ArithmeticError);
}

TEST_CASE("rational results stay reduced") {
    testing::Rng rng(11);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
    for (int k = 0; k < 2000; ++k) {
        const Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK(canonical(a + b));
        CHECK(canonical(a - b));
        CHECK(canonical(a * b));
        if (!b.is_zero()) CHECK(canonical(a / b));
    }
}

TEST_CASE("rational values beyond 64 bits") {
    Rational x(1);
    for (int k = 0; k < 40; ++k) x *= Rational(1000003, 7);
    Rational y = x;
    for (int k = 0; k < 40; ++k) y /= Rational(1000003, 7);
    CHECK(y == Rational(1));
    CHECK(x.numerator().get_str().size() > 200);
}

TEST_CASE("dyadic rounding") {
    const Rational r = dyadic_round_up(Rational(1, 3), Rational(1, 2), Rational(2, 5));
    CHECK(r == Rational(7, 16));
    CHECK(dyadic_round_up(Rational(0), Rational(1), Rational(1, 2)) == Rational(1, 2));
    CHECK_THROWS(dyadic_round_up(Rational(1), Rational(0), Rational(1, 2)));
}

TEST_CASE("extended rationals") {
    const ExtRational inf = ExtRational::infinity();
    CHECK(ExtRational(Rational(1000000)) < inf);
    CHECK(inf == ExtRational::infinity());
    CHECK(!(inf == ExtRational(Rational(5))));
    CHECK(inf.reciprocal() == Rational(0));
    CHECK(ExtRational(Rational(5, 3)).reciprocal() == Rational(3, 5));
    CHECK(ExtRational::parse("inf").is_infinite());
    CHECK(ExtRational::parse("3/6").value() == Rational(1, 2));
    CHECK_THROWS_AS(ExtRational(Rational(0)).reciprocal(), ArithmeticError);
    CHECK_THROWS_AS(inf.value(), ArithmeticError);
    CHECK_THROWS_AS(ExtRational(Rational(1)) / ExtRational(Rational(0)), ArithmeticError);
    CHECK_THROWS_AS(inf - inf, ArithmeticError);
    CHECK_THROWS_AS(inf * ExtRational(Rational(0)), ArithmeticError);
    CHECK(inf.str() == "inf");
}

TEST_CASE("determinant examples") {
    CHECK(det(RMatrix{{1, -1}, {-1, 1}}) == Rational(0));
    CHECK(det(RMatrix{{1, -2}, {-3, 1}}) == Rational(-5));
    const Rational m(-3, 5);
    CHECK(det(RMatrix{{1, m, m}, {m, 1, m}, {m, m, 1}}) == Rational(-64, 125));
    CHECK(det(RMatrix{{Rational(7, 2)}}) == Rational(7, 2));
    CHECK_THROWS_AS(det(RMatrix(2, 3)), NonSquareError);
}

TEST_CASE("cofactor and fraction-free elimination agree") {
    testing::Rng rng(12);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int k = 0; k < 30; ++k) {
            const RMatrix a = random_matrix(n, rng);
            CHECK(detail::det_cofactor(a) == detail::det_bareiss(a));
        }
    }
    // Leading zero pivot forces a row swap.
    const RMatrix z{{0, 1, 2, 3, 4}, {1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
    CHECK(detail::det_bareiss(z) == Rational(-1));
    CHECK(detail::det_cofactor(z) == Rational(-1));
}

TEST_CASE("determinant is multiplicative") {
    testing::Rng rng(13);
    std::uniform_int_distribution<std::size_t> size(1, 4);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = size(rng);
        const RMatrix a = random_matrix(n, rng), b = random_matrix(n, rng);
        CHECK(det(a * b) == det(a) * det(b));
    }
}

TEST_CASE("solve examples") {
    const RVector b{Rational(2, 3), Rational(-7)};
    CHECK(solve(RMatrix::identity(2), b) == b);
    CHECK(solve(RMatrix{{1, -2}, {-3, 1}}, RVector{-1, -1}) == RVector{Rational(3, 5), Rational(4, 5)});
    const Rational m(-3, 5);
    CHECK(solve(RMatrix{{1, m, m}, {m, 1, m}, {m, m, 1}}, RVector{-1, -1, -1}) == RVector{5, 5, 5});
    CHECK_THROWS_AS(solve(RMatrix{{1, -1}, {-1, 1}}, RVector{1, 1}), SingularMatrixError);
    CHECK_THROWS_AS(inverse(RMatrix{{2, 4}, {1, 2}}), SingularMatrixError);
}

TEST_CASE("solve multiplies back exactly") {
    testing::Rng rng(14);
    std::uniform_int_distribution<long> num(-9, 9);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
        const RMatrix a = random_matrix(n, rng);
        if (det(a).is_zero()) continue;
        RVector b(n);
        for (auto& x : b) x = Rational(num(rng), 7);
        CHECK(a * solve(a, b) == b);
        CHECK(a * inverse(a) == RMatrix::identity(n));
    }
}

TEST_CASE("matrix bounds") {
    RMatrix m(2, 2);
    CHECK_THROWS_AS(m.at(2, 0), IndexOutOfRange);
    CHECK_THROWS_AS(m.at(0, 5), IndexOutOfRange);
}

TEST_CASE("strong connectivity examples") {
    CHECK(strongly_connected(BoolMatrix{{false}}));
    CHECK(strongly_connected(BoolMatrix{{false, true}, {true, false}}));
    CHECK_FALSE(strongly_connected(BoolMatrix{{false, true, false}, {false, false, true}, {false, false, false}}));
    CHECK_FALSE(strongly_connected(BoolMatrix{{true, false}, {false, true}}));
}

TEST_CASE("strong connectivity matches transitive closure") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (unsigned long bits = 0; bits < (1UL << (n * n)); ++bits) {
            const BoolMatrix adj = from_bits(n, bits);
            CHECK(strongly_connected(adj) == closure_connected(adj));
        }
    }
    testing::Rng rng(15);
    std::uniform_int_distribution<unsigned long> pick(0, (1UL << 16) - 1);
    for (int k = 0; k < 3000; ++k) {
        const BoolMatrix adj = from_bits(4, pick(rng));
        CHECK(strongly_connected(adj) == closure_connected(adj));
    }
}

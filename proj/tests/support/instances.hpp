#pragma once

// Random exponent systems for property tests. Deterministic given the engine seed.

#include "regcert/criticality.hpp"
#include "regcert/scaling.hpp"
#include "regcert/system.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace regcert::testing {

using Rng = std::mt19937_64;

inline Rational quarter(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> pick(lo, hi);
    return Rational(pick(rng), 4);
}

inline SystemSpec make_spec(std::size_t n, int d, SolutionKind kind, const RMatrix& P) {
    SystemSpec s;
    s.n = n;
    s.d = d;
    s.kind = kind;
    s.P = P;
    s.r.assign(n, Rational(0));
    return s;
}

/// Off-diagonal pattern with quarter-integer weights in [1/4, 2] (about 70% filled, always
/// containing a Hamiltonian cycle so the digraph is strongly connected), diagonal in {0, 1/4, 1/2}.
/// The off-diagonal part is then scaled by t = k/32, and a random admissible t is chosen.
inline std::optional<RMatrix> random_admissible_P(std::size_t n, Rng& rng) {
    std::vector<std::size_t> cycle(n);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = i;
    std::shuffle(cycle.begin(), cycle.end(), rng);
    std::bernoulli_distribution fill(0.7);

    RMatrix base(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && fill(rng)) base.at(i, j) = quarter(rng, 1, 8);
        }
    }
    for (std::size_t k = 0; k < n && n > 1; ++k) {
        const std::size_t i = cycle[k], j = cycle[(k + 1) % n];
        if (base.at(i, j).is_zero()) base.at(i, j) = quarter(rng, 1, 8);
    }
    RVector diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = quarter(rng, 0, 2);

    std::vector<RMatrix> candidates;
    for (int k = 1; k <= 256; ++k) {
        const Rational t(k, 32);
        RMatrix P(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) P.at(i, j) = i == j ? diag[i] : base.at(i, j) * t;
        }
        if (det(RMatrix::identity(n) - P).sign() >= 0) continue;
        const StructureReport rep = validate_structure(make_spec(n, 3, SolutionKind::H01, P));
        // Once a proper principal submatrix stops being an M-matrix it stays that way for larger t.
        if (!rep.principal_minors_positive) break;
        if (rep.admissible) candidates.push_back(std::move(P));
    }
    if (candidates.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng)];
}

inline RMatrix admissible_P(std::size_t n, Rng& rng) {
    while (true) {
        if (auto P = random_admissible_P(n, rng)) return *P;
    }
}

/// Smallest rational >= x on the grid 1/8 (strictly greater when `strict`).
inline Rational grid_above(const Rational& x, bool strict) {
    mpz_class scaled = x.numerator() * 8;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
    Rational g = Rational::from_integers(q, 8);
    if (strict && g == x) g += Rational(1, 8);
    return g;
}

/// A Supercritical instance: random admissible P, a dimension whose threshold lies below max alpha,
/// self-exponents r_i < p_c, and (when with_h) theta > p_c'.
inline SystemSpec random_supercritical(std::size_t n, SolutionKind kind, bool with_h, Rng& rng) {
    while (true) {
        const RMatrix P = admissible_P(n, rng);
        SystemSpec s = make_spec(n, 3, kind, P);
        const ScalingData sc = compute_scaling(s);
        std::vector<int> dims;
        for (int d = 1; d <= 40; ++d) {
            if (sc.max_alpha() > critical_exponent(d, kind).threshold) dims.push_back(d);
        }
        if (dims.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, dims.size() - 1);
        s.d = dims[pick(rng)];
        const CriticalExponent ce = critical_exponent(s.d, kind);
        for (std::size_t i = 0; i < n; ++i) {
            Rational ri = quarter(rng, 0, 12);
            if (ce.p_c.is_finite()) {
                while (!(ri < ce.p_c.value())) ri = ri / Rational(2);
            }
            s.r[i] = ri;
        }
        if (with_h) {
            s.has_h = true;
            std::bernoulli_distribution inf(0.2);
            s.theta = inf(rng) ? ExtRational::infinity()
                               : ExtRational(grid_above(ce.p_c_conj.value(), true) + quarter(rng, 0, 8));
        }
        if (classify(s).status == VerdictStatus::Supercritical) return s;
    }
}

}  // namespace regcert::testing

#include "regcert/scaling.hpp"

#include <algorithm>
#include <numeric>

namespace regcert {

RVector lambda_by_columns(const SystemSpec& spec) {
    const RVector ones(spec.n, Rational(1));
    return cramer_numerators(i_minus_p(spec), ones);
}

ScalingData compute_scaling(const SystemSpec& spec) {
    check_spec(spec);
    const RMatrix A = i_minus_p(spec);
    ScalingData out;
    out.det_IminusP = det(A);
    if (out.det_IminusP.is_zero()) throw SingularMatrixError("|I-P| = 0: scaling vector undefined");
    out.alpha = solve(A, RVector(spec.n, Rational(-1)));

    const RVector by_columns = lambda_by_columns(spec);
    out.lambda.reserve(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j) {
        out.lambda.push_back(-out.det_IminusP * out.alpha[j]);
        if (out.lambda[j] != by_columns[j]) throw std::logic_error("Lambda mismatch between solve and determinant routes");
    }

    const Rational best = *std::max_element(out.alpha.begin(), out.alpha.end());
    for (std::size_t j = 0; j < spec.n; ++j) {
        if (out.alpha[j] == best) out.argmax_alpha.push_back(j);
    }
    return out;
}

RMatrix build_Q(const SystemSpec& spec, std::size_t r, const Permutation& order) {
    const std::size_t n = spec.n;
    if (r < 1 || r > n) throw IndexOutOfRange("build_Q: rank " + std::to_string(r) + " outside 1.." + std::to_string(n));
    if (order.size() != n) throw IndexOutOfRange("build_Q: permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t v : order) {
        if (v >= n || seen[v]) throw IndexOutOfRange("build_Q: not a permutation");
        seen[v] = true;
    }

    RMatrix Q(r, r);
    for (std::size_t a = 0; a < r; ++a) {
        const std::size_t i = order[a];
        for (std::size_t b = 0; b + 1 < r; ++b) {
            const std::size_t j = order[b];
            Q.at(a, b) = (i == j ? Rational(1) : Rational(0)) - spec.P.at(i, j);
        }
        Rational tail(0);
        for (std::size_t b = r - 1; b < n; ++b) tail += spec.P.at(i, order[b]);
        Q.at(a, r - 1) = (a == r - 1 ? Rational(1) : Rational(0)) - tail;
    }
    return Q;
}

namespace {

// Lambda_r^j for j = 1..r of Q_r.
RVector q_lambdas(const RMatrix& Q) { return cramer_numerators(Q, RVector(Q.rows(), Rational(1))); }

}  // namespace

bool ordering_hypothesis_holds(const SystemSpec& spec, const Permutation& order) {
    for (std::size_t r = 2; r <= spec.n; ++r) {
        const RVector lam = q_lambdas(build_Q(spec, r, order));
        const Rational& last = lam[r - 1];
        if (last.sign() <= 0) return false;
        for (std::size_t j = 0; j + 1 < r; ++j) {
            if (lam[j] > last) return false;
        }
    }
    return true;
}

ChainData compute_chain(const SystemSpec& spec, const ScalingData& scaling, const ChainOptions& options) {
    const std::size_t n = spec.n;
    if (n > options.max_search_n) {
        throw NoAdmissibleOrdering("ordering search limited to n <= " + std::to_string(options.max_search_n));
    }

    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    bool found = false;
    do {
        if (!std::binary_search(scaling.argmax_alpha.begin(), scaling.argmax_alpha.end(), perm.back())) continue;
        if (ordering_hypothesis_holds(spec, perm)) {
            found = true;
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) throw NoAdmissibleOrdering("no ordering with a maximizer of alpha last satisfies Lambda_r^j <= Lambda_r^r");

    ChainData out;
    out.permutation = perm;
    for (std::size_t r = std::min<std::size_t>(2, n); r <= n; ++r) {
        const RMatrix Q = build_Q(spec, r, perm);
        const Rational q = det(Q);
        const Rational lrr = q_lambdas(Q)[r - 1];
        if (lrr.is_zero()) throw std::logic_error("chain: Lambda_r^r vanished");
        out.ranks.push_back(r);
        out.q_dets.push_back(q);
        out.lambda_rr.push_back(lrr);
        out.chain.push_back(-q / lrr);
    }

    for (std::size_t k = 1; k < out.chain.size(); ++k) {
        if (out.chain[k] < out.chain[k - 1]) throw std::logic_error("chain is not nondecreasing at rank " + std::to_string(out.ranks[k]));
    }
    if (out.chain.back() != scaling.max_alpha().reciprocal()) {
        throw std::logic_error("chain does not end at 1/max alpha");
    }
    return out;
}

}  // namespace regcert

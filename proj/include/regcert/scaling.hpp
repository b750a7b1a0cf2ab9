#pragma once

#include "regcert/system.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace regcert {

class NoAdmissibleOrdering : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Permutation = std::vector<std::size_t>;

struct ScalingData {
    RVector alpha;                         // (I-P) alpha = -1
    Rational det_IminusP;
    RVector lambda;                        // -|I-P| alpha_j
    std::vector<std::size_t> argmax_alpha; // 0-based, ascending
    Rational max_alpha() const { return alpha.at(argmax_alpha.front()); }
};

/// Throws SingularMatrixError when |I-P| = 0. Cross-checks lambda against the
/// column-replacement determinants and throws std::logic_error on disagreement.
ScalingData compute_scaling(const SystemSpec& spec);

/// Entry j: |I-P| with column j replaced by the all-ones vector. Defined even when |I-P| = 0.
RVector lambda_by_columns(const SystemSpec& spec);

/// The r x r matrix Q_r in the relabeling `order` (order[k] is the original index placed at k).
/// Columns 1..r-1 are those of I-P; column r holds delta_{ir} - sum_{j>=r} p_ij.
/// Throws IndexOutOfRange for r outside 1..n or a bad permutation.
RMatrix build_Q(const SystemSpec& spec, std::size_t r, const Permutation& order);

struct ChainData {
    Permutation permutation;
    std::vector<std::size_t> ranks;  // r for each chain entry
    RVector chain;                   // -|Q_r| / Lambda_r^r
    RVector q_dets;
    RVector lambda_rr;
};

struct ChainOptions {
    std::size_t max_search_n = 8;
};

/// True iff Lambda_r^j <= Lambda_r^r for j < r and Lambda_r^r > 0, for every rank r >= 2.
bool ordering_hypothesis_holds(const SystemSpec& spec, const Permutation& order);

/// Lexicographically smallest ordering with an alpha maximizer last that satisfies the ordering
/// hypothesis. Throws NoAdmissibleOrdering when none exists or n exceeds the search bound, and
/// std::logic_error if the resulting chain is not nondecreasing or does not end at 1/max alpha.
ChainData compute_chain(const SystemSpec& spec, const ScalingData& scaling, const ChainOptions& options = {});

}  // namespace regcert

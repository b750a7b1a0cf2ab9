#include "regcert/bootstrap.hpp"

#include <algorithm>
#include <numeric>

namespace regcert {

StepCheck step_valid(const SystemSpec& spec, const State& state, std::size_t i, const Rational& new_s) {
    const CriticalExponent ce = critical_exponent(spec.d, spec.kind);
    Rational sigma(0);
    for (std::size_t j = 0; j < spec.n; ++j) sigma += spec.P.at(i, j) * state.at(j);
    sigma = max(sigma, spec.r.at(i) * state.at(i));
    if (spec.has_h) sigma = max(sigma, spec.theta->reciprocal());
    StepCheck out;
    out.sigma = sigma;
    out.margin = ce.p_c_conj_inv - (sigma - new_s);
    out.valid = sigma <= Rational(1) && out.margin.sign() > 0;
    return out;
}

std::string to_string(WaypointCase c) {
    switch (c) {
        case WaypointCase::I: return "I";
        case WaypointCase::II: return "II";
        case WaypointCase::III: return "III";
        case WaypointCase::IV: return "IV";
        case WaypointCase::V: return "V";
    }
    return "?";
}

std::vector<ExtRational> WaypointTable::exponents(std::size_t r) const {
    std::vector<ExtRational> out;
    for (const Rational& y : slowness.at(r - 1)) {
        out.push_back(y.is_zero() ? ExtRational::infinity() : ExtRational(y.reciprocal()));
    }
    return out;
}

namespace {

// Solves (I-P)_{RR} w = P_{R,rest} s_rest - c for the components in `block`.
RVector block_waypoint(const SystemSpec& spec, const std::vector<std::size_t>& block,
                       const std::vector<std::size_t>& rest, const State& s, const Rational& c) {
    const RMatrix A = i_minus_p(spec).principal(block);
    RVector b;
    b.reserve(block.size());
    for (std::size_t i : block) {
        Rational acc = -c;
        for (std::size_t j : rest) acc += spec.P.at(i, j) * s[j];
        b.push_back(acc);
    }
    return solve(A, b);
}

}  // namespace

WaypointTable waypoints(const SystemSpec& spec, const Permutation& order) {
    if (order.size() != spec.n) throw IndexOutOfRange("waypoints: permutation has wrong length");
    const CriticalExponent ce = critical_exponent(spec.d, spec.kind);
    const Rational inv_pc = ce.p_c.reciprocal();
    WaypointTable table;
    table.order = order;
    State at_pc(spec.n, inv_pc);
    bool decided = false;
    for (std::size_t r = 1; r < spec.n; ++r) {
        const std::vector<std::size_t> block(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(r));
        const std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(r), order.end());
        RVector y;
        try {
            y = block_waypoint(spec, block, rest, at_pc, ce.p_c_conj_inv);
        } catch (const SingularMatrixError&) {
            throw std::logic_error("waypoints: singular leading subsystem at rank " + std::to_string(r));
        }
        if (!decided) {
            const bool negative = std::any_of(y.begin(), y.end(), [](const Rational& v) { return v.sign() < 0; });
            const bool infinite = std::any_of(y.begin(), y.end(), [](const Rational& v) { return v.is_zero(); });
            if (negative || infinite) {
                decided = true;
                table.case_rank = r;
                if (negative) {
                    table.case_tag = r == 1 ? WaypointCase::I : WaypointCase::III;
                } else {
                    table.case_tag = r == 1 ? WaypointCase::II : WaypointCase::IV;
                }
            }
        }
        table.slowness.push_back(std::move(y));
    }
    if (!decided) table.case_tag = WaypointCase::V;
    return table;
}

namespace {

struct Stall {};

class Generator {
public:
    Generator(const SystemSpec& spec, const GeneratorConfig& cfg, Permutation order, Rational offset)
        : spec_(spec), cfg_(cfg), order_(std::move(order)), ce_(critical_exponent(spec.d, spec.kind)) {
        state_.assign(spec.n, ce_.p_c.reciprocal() + offset);
        initial_ = state_;
    }

    BootstrapCertificate run() {
        while (true) {
            // Components already at zero stay frozen and contribute nothing to later sigmas.
            std::vector<std::size_t> active;
            for (std::size_t k : order_) {
                if (state_[k].sign() > 0) active.push_back(k);
            }
            if (active.empty()) break;
            if (!waypoint_phases(active)) greedy(active);
        }
        BootstrapCertificate cert;
        cert.spec_digest = spec_digest(spec_);
        cert.initial = initial_;
        cert.steps = std::move(steps_);
        cert.final_state = state_;
        return cert;
    }

    std::vector<PhaseTrace> phases;

private:
    // Returns true when some component reached zero, which restarts the phase sequence.
    bool waypoint_phases(const std::vector<std::size_t>& active) {
        for (std::size_t r = 1; r < active.size(); ++r) {
            const std::vector<std::size_t> block(active.begin(), active.begin() + static_cast<std::ptrdiff_t>(r));
            std::vector<std::size_t> rest;
            for (std::size_t k = 0; k < spec_.n; ++k) {
                if (std::find(block.begin(), block.end(), k) == block.end()) rest.push_back(k);
            }
            const RVector w = block_waypoint(spec_, block, rest, state_, ce_.p_c_conj_inv);

            PhaseTrace pt;
            pt.components = block;
            pt.rest = rest;
            for (std::size_t k : rest) pt.rest_state.push_back(state_[k]);
            pt.waypoint = w;
            for (std::size_t k : block) pt.start.push_back(state_[k]);
            const Rational gap0 = gap(block, w);
            pt.tolerance = gap0 / Rational(64);

            bool hit_zero = false;
            if (gap0.sign() > 0) {
                for (std::size_t round = 0; round < 64; ++round) {
                    bool moved = false;
                    for (std::size_t a = 0; a < block.size(); ++a) {
                        if (state_[block[a]].is_zero()) continue;
                        if (try_move(block[a], &w[a])) {
                            moved = true;
                            hit_zero = hit_zero || state_[block[a]].is_zero();
                        }
                    }
                    ++pt.rounds;
                    if (hit_zero || !moved || gap(block, w) <= pt.tolerance) break;
                }
            }
            for (std::size_t k : block) pt.end.push_back(state_[k]);
            phases.push_back(std::move(pt));
            if (hit_zero) return true;
        }
        return false;
    }

    void greedy(const std::vector<std::size_t>& active) {
        while (true) {
            bool moved = false;
            bool hit_zero = false;
            for (std::size_t k : active) {
                if (state_[k].is_zero()) continue;
                if (try_move(k, nullptr)) {
                    moved = true;
                    hit_zero = hit_zero || state_[k].is_zero();
                }
            }
            if (hit_zero) return;
            if (!moved) throw Stall{};
        }
    }

    Rational gap(const std::vector<std::size_t>& block, const RVector& w) const {
        Rational g(0);
        for (std::size_t a = 0; a < block.size(); ++a) g = max(g, state_[block[a]] - max(w[a], Rational(0)));
        return g;
    }

    bool try_move(std::size_t i, const Rational* waypoint) {
        const Rational& s = state_[i];
        const StepCheck probe = step_valid(spec_, state_, i, Rational(0));
        if (probe.sigma > Rational(1)) return false;
        const Rational floor = probe.sigma - ce_.p_c_conj_inv;
        Rational next;
        if (floor.sign() < 0) {
            next = Rational(0);
        } else {
            if (floor >= s) return false;
            Rational target = floor + cfg_.epsilon * (s - floor);
            if (waypoint && *waypoint < s) target = max(target, *waypoint + cfg_.tau * (s - *waypoint));
            next = dyadic_round_up(floor, s, target);
        }
        const StepCheck chk = step_valid(spec_, state_, i, next);
        if (!chk.valid || !(next < s)) throw std::logic_error("generator produced an invalid step");
        if (steps_.size() >= cfg_.max_steps) {
            throw CertificateSearchExhausted("no certificate within " + std::to_string(cfg_.max_steps) + " steps");
        }
        steps_.push_back(Step{i, state_, next, chk.sigma, chk.margin});
        state_[i] = next;
        return true;
    }

    const SystemSpec& spec_;
    const GeneratorConfig& cfg_;
    Permutation order_;
    CriticalExponent ce_;
    State state_;
    State initial_;
    std::vector<Step> steps_;
};

Permutation generation_order(const SystemSpec& spec, const StructureReport& structure) {
    Permutation order(spec.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (structure.det_IminusP.sign() >= 0) return order;
    const ScalingData sc = compute_scaling(spec);
    try {
        return compute_chain(spec, sc).permutation;
    } catch (const NoAdmissibleOrdering&) {
        const std::size_t last = sc.argmax_alpha.front();
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(last));
        order.push_back(last);
        return order;
    }
}

}  // namespace

BootstrapCertificate generate_certificate(const SystemSpec& spec, const GeneratorConfig& config, GeneratorTrace* trace) {
    const StructureReport structure = validate_structure(spec);
    std::optional<ScalingData> scaling;
    if (!structure.det_IminusP.is_zero()) scaling = compute_scaling(spec);
    const RegularityVerdict verdict = classify(spec, structure, scaling);
    if (verdict.status != VerdictStatus::Supercritical && verdict.status != VerdictStatus::AutoRegular) {
        throw NotSupercritical("certificate generation requires Supercritical or AutoRegular, got " +
                               to_string(verdict.status));
    }
    if (config.epsilon.sign() <= 0 || config.epsilon >= Rational(1)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (config.tau.sign() < 0 || config.tau >= Rational(1)) throw std::invalid_argument("tau must lie in [0,1)");

    const CriticalExponent& ce = verdict.exponent;
    Rational offset = config.initial_offset.value_or((Rational(1) - ce.p_c.reciprocal()) / Rational(100));
    if (offset.sign() <= 0 || ce.p_c.reciprocal() + offset > Rational(1)) {
        throw std::invalid_argument("initial offset must be positive with 1/p_c + offset <= 1");
    }

    const Permutation order = generation_order(spec, structure);
    for (std::size_t attempt = 1; attempt <= config.max_restarts; ++attempt) {
        Generator gen(spec, config, order, offset);
        try {
            BootstrapCertificate cert = gen.run();
            if (trace) {
                trace->order = order;
                trace->initial_offset = offset;
                trace->attempts = attempt;
                trace->phases = std::move(gen.phases);
            }
            return cert;
        } catch (const Stall&) {
            offset /= Rational(4);
        }
    }
    throw CertificateSearchExhausted("descent stalled after " + std::to_string(config.max_restarts) +
                                     " initial offsets");
}

}  // namespace regcert

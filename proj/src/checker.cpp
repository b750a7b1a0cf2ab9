#include "regcert/checker.hpp"

namespace regcert {

std::string to_string(CheckFailure f) {
    switch (f) {
        case CheckFailure::None: return "None";
        case CheckFailure::SpecDigestMismatch: return "SpecDigestMismatch";
        case CheckFailure::DimensionMismatch: return "DimensionMismatch";
        case CheckFailure::InitialStateIllegal: return "InitialStateIllegal";
        case CheckFailure::ComponentOutOfRange: return "ComponentOutOfRange";
        case CheckFailure::ChainBroken: return "ChainBroken";
        case CheckFailure::SlownessOutOfRange: return "SlownessOutOfRange";
        case CheckFailure::ExponentBelowOne: return "ExponentBelowOne";
        case CheckFailure::MarginViolation: return "MarginViolation";
        case CheckFailure::NoProgress: return "NoProgress";
        case CheckFailure::RecordMismatch: return "RecordMismatch";
        case CheckFailure::IncompleteFinalState: return "IncompleteFinalState";
    }
    return "?";
}

namespace {

CheckResult fail(CheckFailure why, std::string detail, std::optional<std::size_t> step = std::nullopt) {
    return CheckResult{false, step, why, std::move(detail)};
}

bool in_unit_interval(const Rational& x) { return x.sign() >= 0 && x <= Rational(1); }

}  // namespace

CheckResult check_certificate(const SystemSpec& spec, const BootstrapCertificate& cert) {
    check_spec(spec);
    const std::size_t n = spec.n;
    if (cert.spec_digest != spec_digest(spec)) return fail(CheckFailure::SpecDigestMismatch, "digest differs from spec");
    if (cert.initial.size() != n || cert.final_state.size() != n) {
        return fail(CheckFailure::DimensionMismatch, "state vectors must have " + std::to_string(n) + " entries");
    }

    const CriticalExponent ce = critical_exponent(spec.d, spec.kind);
    const Rational lower = ce.p_c.reciprocal();
    const Rational bound = ce.p_c_conj_inv;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(cert.initial[i] > lower) || cert.initial[i] > Rational(1)) {
            return fail(CheckFailure::InitialStateIllegal,
                        "initial s_" + std::to_string(i + 1) + " = " + cert.initial[i].str() + " not in (1/p_c, 1]");
        }
    }

    State s = cert.initial;
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
        const Step& st = cert.steps[k];
        if (st.component >= n) return fail(CheckFailure::ComponentOutOfRange, "component index out of range", k);
        if (st.pre_state.size() != n) return fail(CheckFailure::DimensionMismatch, "pre-state has wrong length", k);
        if (st.pre_state != s) return fail(CheckFailure::ChainBroken, "pre-state differs from the running state", k);
        if (!in_unit_interval(st.new_s)) return fail(CheckFailure::SlownessOutOfRange, "new slowness outside [0,1]", k);

        const std::size_t i = st.component;
        Rational product(0);
        for (std::size_t j = 0; j < n; ++j) product += spec.P.at(i, j) * s[j];
        Rational sigma = product;
        const Rational self = spec.r[i] * s[i];
        if (self > sigma) sigma = self;
        if (spec.has_h) {
            const Rational h = spec.theta->reciprocal();
            if (h > sigma) sigma = h;
        }

        if (sigma > Rational(1)) return fail(CheckFailure::ExponentBelowOne, "sigma = " + sigma.str() + " > 1", k);
        const Rational margin = bound - (sigma - st.new_s);
        if (margin.sign() <= 0) {
            return fail(CheckFailure::MarginViolation,
                        "sigma - new_s = " + (sigma - st.new_s).str() + " is not < 1/p_c' = " + bound.str(), k);
        }
        if (!(st.new_s < s[i])) return fail(CheckFailure::NoProgress, "new slowness does not decrease", k);
        if (st.sigma != sigma || st.margin != margin) {
            return fail(CheckFailure::RecordMismatch, "recorded sigma/margin differ from recomputed values", k);
        }
        s[i] = st.new_s;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!cert.final_state[i].is_zero() || !s[i].is_zero()) {
            return fail(CheckFailure::IncompleteFinalState,
                        "component " + std::to_string(i + 1) + " ends at slowness " + s[i].str() + " (recorded " +
                            cert.final_state[i].str() + ")");
        }
    }
    return CheckResult{true, std::nullopt, CheckFailure::None, ""};
}

}  // namespace regcert

#include "regcert/criticality.hpp"

#include <algorithm>

namespace regcert {

CriticalExponent critical_exponent(int d, SolutionKind kind) {
    if (d < 1) throw std::invalid_argument("critical_exponent: d must be >= 1");
    CriticalExponent ce;
    ce.kind = kind;
    ce.d = d;
    switch (kind) {
        case SolutionKind::H01:
            ce.p_c = d <= 2 ? ExtRational::infinity() : ExtRational(Rational(d + 2, d - 2));
            break;
        case SolutionKind::L1:
            ce.p_c = d <= 2 ? ExtRational::infinity() : ExtRational(Rational(d, d - 2));
            break;
        case SolutionKind::L1delta:
            ce.p_c = d <= 1 ? ExtRational::infinity() : ExtRational(Rational(d + 1, d - 1));
            break;
    }
    ce.p_c_conj_inv = Rational(1) - ce.p_c.reciprocal();
    ce.p_c_conj = ExtRational(ce.p_c_conj_inv.reciprocal());
    ce.threshold = ce.p_c.is_infinite() ? Rational(0) : (ce.p_c.value() - Rational(1)).reciprocal();
    return ce;
}

std::string to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::Supercritical: return "Supercritical";
        case VerdictStatus::Subcritical: return "Subcritical";
        case VerdictStatus::Critical: return "Critical";
        case VerdictStatus::AutoRegular: return "AutoRegular";
        case VerdictStatus::NotCovered: return "NotCovered";
        case VerdictStatus::InvalidStructure: return "InvalidStructure";
    }
    return "?";
}

const Comparison* RegularityVerdict::find(const std::string& name) const {
    for (const auto& c : evidence) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

Comparison less_than(std::string name, ExtRational lhs, ExtRational rhs) {
    const bool holds = lhs < rhs;
    return {std::move(name), std::move(lhs), "<", std::move(rhs), holds};
}

Comparison greater_than(std::string name, ExtRational lhs, ExtRational rhs) {
    const bool holds = lhs > rhs;
    return {std::move(name), std::move(lhs), ">", std::move(rhs), holds};
}

std::string kind_family(SolutionKind kind) {
    switch (kind) {
        case SolutionKind::H01: return "h01-regularity";
        case SolutionKind::L1: return "l1-regularity";
        case SolutionKind::L1delta: return "very-weak-regularity";
    }
    return "?";
}

// Appends the max r and theta conditions; returns true when all hold.
bool side_conditions(const SystemSpec& spec, const CriticalExponent& ce, RegularityVerdict& v) {
    const Rational max_r = *std::max_element(spec.r.begin(), spec.r.end());
    v.evidence.push_back(less_than("max_r < p_c", max_r, ce.p_c));
    bool ok = v.evidence.back().holds;
    if (spec.has_h) {
        v.evidence.push_back(greater_than("theta > p_c_conj", *spec.theta, ce.p_c_conj));
        ok = ok && v.evidence.back().holds;
    }
    return ok;
}

std::string failed_side_conditions(const RegularityVerdict& v) {
    std::string out;
    for (const char* name : {"max_r < p_c", "theta > p_c_conj"}) {
        const Comparison* c = v.find(name);
        if (c && !c->holds) out += (out.empty() ? "" : ", ") + std::string(name);
    }
    return out;
}

}  // namespace

RegularityVerdict classify(const SystemSpec& spec, const StructureReport& structure,
                           const std::optional<ScalingData>& scaling) {
    const CriticalExponent ce = critical_exponent(spec.d, spec.kind);
    RegularityVerdict v;
    v.exponent = ce;
    const std::string family = kind_family(spec.kind);

    if (!structure.irreducible || !structure.principal_minors_positive) {
        v.status = VerdictStatus::InvalidStructure;
        v.cited_theorem = "structural-assumption";
        v.notes = structure.failures;
        return v;
    }

    const Rational& D = structure.det_IminusP;
    v.evidence.push_back(less_than("det_IminusP < 0", D, Rational(0)));

    if (D.sign() >= 0) {
        const RVector lam = lambda_by_columns(spec);
        bool all_pos = true;
        for (std::size_t j = 0; j < lam.size(); ++j) {
            v.evidence.push_back(greater_than("lambda_" + std::to_string(j + 1) + " > 0", lam[j], Rational(0)));
            all_pos = all_pos && v.evidence.back().holds;
        }
        if (!all_pos) {
            v.status = VerdictStatus::InvalidStructure;
            v.cited_theorem = "structural-assumption";
            v.notes.emplace_back("|I-P| >= 0 but some Lambda^j <= 0");
            return v;
        }
        const bool side = side_conditions(spec, ce, v);
        v.status = side ? VerdictStatus::AutoRegular : VerdictStatus::NotCovered;
        v.cited_theorem = "nonnegative-determinant-extension";
        if (!side) v.notes.push_back("side condition fails: " + failed_side_conditions(v));
        return v;
    }

    if (!scaling) throw std::invalid_argument("classify: scaling data required when |I-P| != 0");
    const Rational max_alpha = scaling->max_alpha();
    v.evidence.push_back(greater_than("max_alpha > threshold", max_alpha, ce.threshold));
    const bool side = side_conditions(spec, ce, v);

    Rational min_row = Rational(0);
    for (std::size_t i = 0; i < spec.n; ++i) {
        Rational row(0);
        for (std::size_t j = 0; j < spec.n; ++j) row += spec.P.at(i, j);
        if (i == 0 || row < min_row) min_row = row;
    }
    v.evidence.push_back(less_than("min_row_sum < p_c", min_row, ce.p_c));

    if (max_alpha > ce.threshold) {
        if (side) {
            v.status = VerdictStatus::Supercritical;
            v.cited_theorem = family + "(i)";
            if (!v.find("min_row_sum < p_c")->holds) {
                throw std::logic_error("supercritical verdict with every row sum >= p_c");
            }
        } else {
            v.status = VerdictStatus::NotCovered;
            v.cited_theorem = family + "(i)";
            v.notes.push_back("side condition fails: " + failed_side_conditions(v));
        }
    } else if (max_alpha == ce.threshold) {
        v.status = VerdictStatus::Critical;
        v.cited_theorem = "critical-case-open";
        v.notes.emplace_back("max alpha equals 1/(p_c-1); neither direction applies");
    } else {
        v.status = VerdictStatus::Subcritical;
        v.cited_theorem = family + "(ii)";
        if (spec.kind == SolutionKind::L1delta) {
            v.notes.emplace_back("singular solution is the boundary-cone construction, not computed here");
        } else if (spec.d < 3) {
            v.notes.emplace_back("radial singular construction requires d >= 3");
        }
    }
    return v;
}

RegularityVerdict classify(const SystemSpec& spec) {
    const StructureReport structure = validate_structure(spec);
    std::optional<ScalingData> scaling;
    if (!structure.det_IminusP.is_zero()) scaling = compute_scaling(spec);
    return classify(spec, structure, scaling);
}

std::string to_string(Attestation a) {
    switch (a) {
        case Attestation::Superlinearity: return "superlinearity";
        case Attestation::LowerBound: return "lower-bound";
        case Attestation::NuclearReactorForm: return "nuclear-reactor-form";
        case Attestation::SublinearAtZero: return "sublinear-at-zero";
    }
    return "?";
}

Attestation parse_attestation(const std::string& text) {
    for (Attestation a : {Attestation::Superlinearity, Attestation::LowerBound, Attestation::NuclearReactorForm,
                          Attestation::SublinearAtZero}) {
        if (text == to_string(a)) return a;
    }
    throw std::invalid_argument("unknown attestation '" + text + "'");
}

std::string attestation_statement(Attestation a) {
    switch (a) {
        case Attestation::Superlinearity:
            return "sum_i f_i >= lambda sum_i u_i - C_1 for u >= 0, with lambda > lambda_1 of -Laplacian in H_0^1";
        case Attestation::LowerBound:
            return "sum_i f_i >= -C_2 sum_i u_i - h_1(x) with h_1 in L^1_delta";
        case Attestation::NuclearReactorForm:
            return "f_i = a_i(x) prod_j u_j^{p_ij} - b_i(x) u_i with a_i, b_i bounded, a_i >= 0, int a_i > 0, "
                   "inf spec(-Laplacian + b_i) > 0";
        case Attestation::SublinearAtZero:
            return "sum_i f_i = o(sum_i u_i) as u -> 0+, uniformly in x";
    }
    return "?";
}

std::string to_string(AuditStatus s) {
    switch (s) {
        case AuditStatus::Holds: return "HOLDS";
        case AuditStatus::Fails: return "FAILS";
        case AuditStatus::NeedsAttestation: return "NEEDS-ATTESTATION";
    }
    return "?";
}

AuditReport theorem_audit(const SystemSpec& spec, const std::set<Attestation>& attestations) {
    AuditReport rep;
    for (Attestation a : attestations) rep.assumptions.push_back(to_string(a) + ": " + attestation_statement(a));

    SystemSpec vw = spec;
    vw.kind = SolutionKind::L1delta;
    const StructureReport structure = validate_structure(vw);
    std::optional<ScalingData> scaling;
    if (!structure.det_IminusP.is_zero()) scaling = compute_scaling(vw);
    const RegularityVerdict verdict = classify(vw, structure, scaling);

    // Condition shared by the a priori estimate and the superlinear existence result.
    std::string condition_failure;
    if (!structure.admissible) {
        condition_failure = "structural assumption (irreducible, proper principal minors > 0, |I-P| < 0)";
    } else if (verdict.status == VerdictStatus::Subcritical) {
        condition_failure = "max alpha < (d-1)/2: optimal condition fails, see very-weak-regularity(ii)";
    } else if (verdict.status != VerdictStatus::Supercritical) {
        condition_failure = "very-weak optimal condition is " + to_string(verdict.status);
        if (!verdict.notes.empty()) condition_failure += " (" + verdict.notes.front() + ")";
    }

    auto entry = [&](std::string name, bool condition_ok, std::string failure,
                     std::initializer_list<Attestation> needed) {
        AuditEntry e;
        e.theorem = std::move(name);
        if (!condition_ok) {
            e.status = AuditStatus::Fails;
            e.missing.push_back(failure);
            e.reason = std::move(failure);
        } else {
            for (Attestation a : needed) {
                if (!attestations.count(a)) e.missing.push_back(to_string(a));
            }
            e.status = e.missing.empty() ? AuditStatus::Holds : AuditStatus::NeedsAttestation;
            e.reason = e.missing.empty() ? "all hypotheses checked or attested" : "analytic hypotheses not attested";
        }
        rep.entries.push_back(std::move(e));
    };

    const bool cond = condition_failure.empty();
    entry("a-priori-estimate", cond, condition_failure, {Attestation::LowerBound});
    entry("superlinear-existence(a)", cond, condition_failure, {Attestation::Superlinearity});
    entry("superlinear-existence(b)", cond, condition_failure,
          {Attestation::Superlinearity, Attestation::SublinearAtZero});

    // The nuclear-reactor system fixes the shape of f, so only alpha and the structure matter.
    std::string reactor_failure;
    if (!structure.admissible) {
        reactor_failure = "structural assumption (irreducible, proper principal minors > 0, |I-P| < 0)";
    } else {
        const Rational need = critical_exponent(spec.d, SolutionKind::L1delta).threshold;
        if (!(scaling->max_alpha() > need)) {
            reactor_failure = "max alpha > (d-1)/2 fails (" + scaling->max_alpha().str() + " vs " + need.str() +
                              "), see very-weak-regularity(ii)";
        }
    }
    const bool rcond = reactor_failure.empty();
    entry("nuclear-reactor(a)", rcond, reactor_failure, {Attestation::NuclearReactorForm});
    entry("nuclear-reactor(b)", rcond, reactor_failure, {Attestation::NuclearReactorForm});
    entry("product-system-existence", rcond, reactor_failure, {});
    if (rcond) rep.assumptions.emplace_back("product-system-existence: applies to -Laplace(u_i) = prod_j u_j^{p_ij} with this P");
    return rep;
}

}  // namespace regcert

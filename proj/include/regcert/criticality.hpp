#pragma once

#include "regcert/scaling.hpp"
#include "regcert/system.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace regcert {

struct CriticalExponent {
    ExtRational p_c;
    Rational p_c_conj_inv;  // 1/p_c' = 1 - 1/p_c
    ExtRational p_c_conj;   // p_c' = p_c / (p_c - 1)
    Rational threshold;     // 1/(p_c - 1), 0 when p_c is infinite
    SolutionKind kind = SolutionKind::H01;
    int d = 0;
};

/// Throws std::invalid_argument for d < 1.
CriticalExponent critical_exponent(int d, SolutionKind kind);

enum class VerdictStatus { Supercritical, Subcritical, Critical, AutoRegular, NotCovered, InvalidStructure };

std::string to_string(VerdictStatus status);

/// One exact comparison, rendered as lhs <relation> rhs.
struct Comparison {
    std::string name;
    ExtRational lhs;
    std::string relation;  // "<" or ">"
    ExtRational rhs;
    bool holds = false;
};

struct RegularityVerdict {
    VerdictStatus status = VerdictStatus::InvalidStructure;
    CriticalExponent exponent;
    std::vector<Comparison> evidence;
    std::string cited_theorem;
    std::vector<std::string> notes;

    const Comparison* find(const std::string& name) const;
};

/// `scaling` must be present whenever |I-P| != 0. Total: every input maps to one status.
RegularityVerdict classify(const SystemSpec& spec, const StructureReport& structure,
                           const std::optional<ScalingData>& scaling);

/// Convenience: runs validate_structure and compute_scaling first.
RegularityVerdict classify(const SystemSpec& spec);

enum class Attestation { Superlinearity, LowerBound, NuclearReactorForm, SublinearAtZero };

std::string to_string(Attestation a);
/// "superlinearity", "lower-bound", "nuclear-reactor-form", "sublinear-at-zero".
Attestation parse_attestation(const std::string& text);
std::string attestation_statement(Attestation a);

enum class AuditStatus { Holds, Fails, NeedsAttestation };

std::string to_string(AuditStatus s);

struct AuditEntry {
    std::string theorem;
    AuditStatus status = AuditStatus::Fails;
    std::vector<std::string> missing;  // attestation names or failed conditions
    std::string reason;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    std::vector<std::string> assumptions;  // echoed attestations
};

AuditReport theorem_audit(const SystemSpec& spec, const std::set<Attestation>& attestations);

}  // namespace regcert

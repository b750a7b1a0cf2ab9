#pragma once

#include "regcert/bootstrap.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace regcert {

enum class CheckFailure {
    None,
    SpecDigestMismatch,
    DimensionMismatch,
    InitialStateIllegal,
    ComponentOutOfRange,
    ChainBroken,
    SlownessOutOfRange,
    ExponentBelowOne,
    MarginViolation,
    NoProgress,
    RecordMismatch,
    IncompleteFinalState,
};

std::string to_string(CheckFailure f);

struct CheckResult {
    bool ok = false;
    std::optional<std::size_t> step_index;  // 0-based; empty for whole-certificate failures
    CheckFailure reason = CheckFailure::None;
    std::string detail;
};

/// Re-derives every step from the SystemSpec alone. Independent of the generator.
CheckResult check_certificate(const SystemSpec& spec, const BootstrapCertificate& cert);

}  // namespace regcert

#pragma once

#include "regcert/ext_rational.hpp"
#include "regcert/matrix.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace regcert {

enum class SolutionKind { H01, L1, L1delta };

std::string to_string(SolutionKind kind);
/// "h01", "l1", "l1delta" (case-insensitive). Throws std::invalid_argument.
SolutionKind parse_kind(std::string_view text);

class MalformedSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxComponents = 16;

/// Exponent signature of -Δu_i = f_i(x, u), |f_i| <= C(∏ u_j^{p_ij} + u_i^{r_i}) + h.
struct SystemSpec {
    std::size_t n = 0;
    int d = 0;
    RMatrix P;
    RVector r;
    SolutionKind kind = SolutionKind::H01;
    std::optional<ExtRational> theta;
    bool has_h = false;
};

/// Throws MalformedSpec on any field invariant violation.
void check_spec(const SystemSpec& spec);

RMatrix i_minus_p(const SystemSpec& spec);

struct PrincipalMinor {
    std::vector<std::size_t> index;  // 0-based, ascending
    Rational value;
};

struct StructureReport {
    bool irreducible = false;
    bool principal_minors_positive = false;
    Rational det_IminusP;
    bool admissible = false;
    std::vector<PrincipalMinor> minors;  // all proper nonempty principal minors, by subset bitmask
    std::vector<std::string> failures;
};

StructureReport validate_structure(const SystemSpec& spec);

/// p_ii < 1 for every i.
bool diagonal_subunit_check(const SystemSpec& spec);

/// Stable text form of every field that affects analysis; input to spec_digest.
std::string canonical_form(const SystemSpec& spec);
/// Lowercase hex SHA-256 of canonical_form.
std::string spec_digest(const SystemSpec& spec);

}  // namespace regcert

#pragma once

#include "regcert/criticality.hpp"
#include "regcert/scaling.hpp"
#include "regcert/system.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regcert {

class CertificateSearchExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSupercritical : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Slowness vector: s_i = 1/k_i, with s_i = 0 meaning u_i in L^inf.
using State = RVector;

struct StepCheck {
    bool valid = false;
    Rational sigma;
    Rational margin;
};

/// sigma = max(sum_j p_ij s_j, r_i s_i, 1/theta if has_h); valid iff sigma <= 1 and
/// sigma - new_s < 1/p_c'. margin = 1/p_c' - (sigma - new_s).
StepCheck step_valid(const SystemSpec& spec, const State& state, std::size_t i, const Rational& new_s);

struct Step {
    std::size_t component = 0;  // 0-based
    State pre_state;
    Rational new_s;
    Rational sigma;
    Rational margin;
    friend bool operator==(const Step&, const Step&) = default;
};

struct BootstrapCertificate {
    std::string spec_digest;
    State initial;
    std::vector<Step> steps;
    State final_state;
    friend bool operator==(const BootstrapCertificate&, const BootstrapCertificate&) = default;
};

enum class WaypointCase { I, II, III, IV, V };

std::string to_string(WaypointCase c);

/// Rank r entry: slowness solution y of (I-P)_{rxr} y = B_r, B_i = sum_{j>r} p_ij / p_c - 1/p_c'.
/// y < 0 reads as a negative k*, y = 0 as k* = inf, y > 0 as k* = 1/y.
struct WaypointTable {
    Permutation order;
    std::vector<RVector> slowness;  // slowness[r-1] has r entries, in `order` labels
    WaypointCase case_tag = WaypointCase::V;
    std::size_t case_rank = 0;  // rank that decided the case; 0 for Case V

    /// k* values: negative finite, finite positive, or infinite.
    std::vector<ExtRational> exponents(std::size_t r) const;
};

WaypointTable waypoints(const SystemSpec& spec, const Permutation& order);

struct GeneratorConfig {
    Rational epsilon{1, 100};
    std::size_t max_steps = 10000;
    Rational tau{1, 2};
    std::optional<Rational> initial_offset;  // default (1 - 1/p_c)/100
    std::size_t max_restarts = 8;
};

struct PhaseTrace {
    std::vector<std::size_t> components;  // original labels driven in this phase
    std::vector<std::size_t> rest;
    RVector rest_state;  // slowness of `rest`, fixed during the phase
    RVector waypoint;
    RVector start;
    RVector end;
    Rational tolerance;
    std::size_t rounds = 0;
};

struct GeneratorTrace {
    Permutation order;
    Rational initial_offset;
    std::size_t attempts = 0;
    std::vector<PhaseTrace> phases;  // of the successful attempt
};

/// Requires a Supercritical or AutoRegular verdict (throws NotSupercritical otherwise).
/// Throws CertificateSearchExhausted when max_steps is exceeded on every attempt.
BootstrapCertificate generate_certificate(const SystemSpec& spec, const GeneratorConfig& config = {},
                                          GeneratorTrace* trace = nullptr);

}  // namespace regcert

#pragma once

#include "regcert/bigfloat.hpp"
#include "regcert/scaling.hpp"
#include "regcert/system.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regcert {

class PreconditionViolated : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IdentityViolation : public std::runtime_error {
public:
    IdentityViolation(const std::string& what, std::optional<std::size_t> component, std::optional<long double> radius)
        : std::runtime_error(what), component(component), radius(radius) {}
    std::optional<std::size_t> component;
    std::optional<long double> radius;
};

/// u_i(r) = c_i (r^{-2 alpha_i} - 1) on the unit ball, with prod_j c_j^{p_ij} = beta_i c_i and
/// beta_i = 2 alpha_i (d - 2 - 2 alpha_i).
struct SingularSolution {
    int d = 0;
    RMatrix P;
    RVector alpha;
    RVector beta;
    RMatrix log_coeffs;  // ln c_i = sum_k log_coeffs(i,k) ln beta_k
    std::vector<std::optional<Rational>> c_exact;
    std::vector<BigFloat> c;
    int digits = 50;
};

/// Throws PreconditionViolated unless d >= 3, the structure is admissible and max alpha < (d-2)/2.
SingularSolution construct_interior_singular(const SystemSpec& spec, const ScalingData& scaling, int digits = 50);

struct VerificationReport {
    bool exponent_identity = false;    // (I-P) alpha = -1, exact
    bool log_system_identity = false;  // (I-P) log_coeffs = -I, exact
    BigFloat max_coefficient_residual;
    long double coefficient_tolerance = 0;
    long double max_numeric_residual = 0;
    long double numeric_tolerance = 1e-9L;
    std::size_t radii = 0;
    std::size_t worst_component = 0;
    long double worst_radius = 0;
};

/// Log-spaced radii r_k = 10^{-3 + 3k/N}, k = 0..N-1.
std::vector<long double> sample_radii(std::size_t count);

/// Throws IdentityViolation naming the failing component (and radius for the numeric check).
VerificationReport verify_identity(const SingularSolution& sol, std::size_t sample_count = 100);

struct ComponentMembership {
    bool in_Linf = false;
    bool in_H01 = false;
    bool in_L1 = false;
    bool f_in_L1 = false;
    std::vector<std::pair<ExtRational, bool>> in_Lk;
};

struct MembershipReport {
    std::vector<ComponentMembership> components;
    bool all_in_H01 = false;
    bool all_in_L1 = false;  // u and f both in L^1
    bool in_kind = false;    // solution lies in the class named by the queried kind
    bool any_in_Linf = false;
};

MembershipReport classify_membership(const SingularSolution& sol, SolutionKind kind,
                                     const std::vector<ExtRational>& queried_k = {});

/// The very-weak boundary counterexample is not computed; this records what it would need.
struct ConeConstructionStub {
    std::string citation;
    std::vector<std::string> required_inputs;
};

ConeConstructionStub very_weak_cone_stub();

}  // namespace regcert

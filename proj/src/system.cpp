#include "regcert/system.hpp"

#include "regcert/digraph.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <memory>
#include <sstream>

namespace regcert {

std::string to_string(SolutionKind kind) {
    switch (kind) {
        case SolutionKind::H01: return "h01";
        case SolutionKind::L1: return "l1";
        case SolutionKind::L1delta: return "l1delta";
    }
    return "?";
}

SolutionKind parse_kind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "h01") return SolutionKind::H01;
    if (lower == "l1") return SolutionKind::L1;
    if (lower == "l1delta") return SolutionKind::L1delta;
    throw std::invalid_argument("unknown solution kind '" + std::string(text) + "' (expected h01, l1 or l1delta)");
}

void check_spec(const SystemSpec& spec) {
    if (spec.n < 1) throw MalformedSpec("n must be >= 1");
    if (spec.n > kMaxComponents) throw MalformedSpec("n must be <= " + std::to_string(kMaxComponents));
    if (spec.d < 1) throw MalformedSpec("d must be >= 1");
    if (spec.P.rows() != spec.n || spec.P.cols() != spec.n) {
        throw MalformedSpec("P must be " + std::to_string(spec.n) + "x" + std::to_string(spec.n));
    }
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t j = 0; j < spec.n; ++j) {
            if (spec.P.at(i, j).sign() < 0) {
                throw MalformedSpec("P[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative");
            }
        }
    }
    if (spec.r.size() != spec.n) throw MalformedSpec("r must have " + std::to_string(spec.n) + " entries");
    for (std::size_t i = 0; i < spec.n; ++i) {
        if (spec.r[i].sign() < 0) throw MalformedSpec("r[" + std::to_string(i) + "] is negative");
    }
    if (spec.has_h && !spec.theta) throw MalformedSpec("has_h requires theta");
    if (spec.theta && spec.theta->is_finite() && spec.theta->value().sign() <= 0) {
        throw MalformedSpec("theta must be positive");
    }
}

RMatrix i_minus_p(const SystemSpec& spec) { return RMatrix::identity(spec.n) - spec.P; }

StructureReport validate_structure(const SystemSpec& spec) {
    check_spec(spec);
    const std::size_t n = spec.n;
    StructureReport rep;

    BoolMatrix adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) adj[i][j] = i != j && spec.P.at(i, j).sign() > 0;
    }
    rep.irreducible = strongly_connected(adj);
    if (!rep.irreducible) rep.failures.emplace_back("irreducible: positivity digraph of P is not strongly connected");

    const RMatrix A = i_minus_p(spec);
    rep.principal_minors_positive = true;
    const std::size_t full = (std::size_t{1} << n) - 1;
    for (std::size_t mask = 1; mask < full; ++mask) {
        PrincipalMinor pm;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) pm.index.push_back(i);
        }
        pm.value = det(A.principal(pm.index));
        if (pm.value.sign() <= 0 && rep.principal_minors_positive) {
            rep.principal_minors_positive = false;
            std::ostringstream os;
            os << "principal_minors_positive: minor on {";
            for (std::size_t k = 0; k < pm.index.size(); ++k) os << (k ? "," : "") << pm.index[k] + 1;
            os << "} is " << pm.value.str();
            rep.failures.push_back(os.str());
        }
        rep.minors.push_back(std::move(pm));
    }

    rep.det_IminusP = det(A);
    if (rep.det_IminusP.sign() >= 0) {
        rep.failures.push_back("det_negative: |I-P| = " + rep.det_IminusP.str() + " is not < 0");
    }
    rep.admissible = rep.irreducible && rep.principal_minors_positive && rep.det_IminusP.sign() < 0;
    return rep;
}

bool diagonal_subunit_check(const SystemSpec& spec) {
    for (std::size_t i = 0; i < spec.P.rows() && i < spec.P.cols(); ++i) {
        if (spec.P.at(i, i) >= Rational(1)) return false;
    }
    return true;
}

std::string canonical_form(const SystemSpec& spec) {
    std::ostringstream os;
    os << "regcert-spec-v1\n";
    os << "n=" << spec.n << "\nd=" << spec.d << "\nkind=" << to_string(spec.kind) << "\n";
    for (std::size_t i = 0; i < spec.n; ++i) {
        os << "P" << i << "=";
        for (std::size_t j = 0; j < spec.n; ++j) os << (j ? "," : "") << spec.P.at(i, j).str();
        os << "\n";
    }
    os << "r=";
    for (std::size_t i = 0; i < spec.n; ++i) os << (i ? "," : "") << spec.r[i].str();
    os << "\ntheta=" << (spec.theta ? spec.theta->str() : std::string("absent"));
    os << "\nhas_h=" << (spec.has_h ? 1 : 0) << "\n";
    return os.str();
}

std::string spec_digest(const SystemSpec& spec) {
    const std::string text = canonical_form(spec);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), text.data(), text.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(hex[md[k] >> 4]);
        out.push_back(hex[md[k] & 0xF]);
    }
    return out;
}

}  // namespace regcert

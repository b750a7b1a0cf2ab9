#include "regcert/bootstrap.hpp"
#include "regcert/checker.hpp"
#include "regcert/counterexample.hpp"
#include "regcert/criticality.hpp"
#include "regcert/io.hpp"
#include "regcert/scaling.hpp"
#include "regcert/system.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace regcert;

enum Exit : int {
    kOk = 0,
    kParse = 2,
    kSubcritical = 10,
    kCritical = 11,
    kNotCovered = 12,
    kInvalidStructure = 13,
    kExhausted = 20,
    kCertInvalid = 30,
    kDigestMismatch = 31,
    kNoConstruction = 40,
    kIdentityViolation = 41,
};

int verdict_exit(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Supercritical:
        case VerdictStatus::AutoRegular: return kOk;
        case VerdictStatus::Subcritical: return kSubcritical;
        case VerdictStatus::Critical: return kCritical;
        case VerdictStatus::NotCovered: return kNotCovered;
        case VerdictStatus::InvalidStructure: return kInvalidStructure;
    }
    return kInvalidStructure;
}

struct Analysis {
    StructureReport structure;
    std::optional<ScalingData> scaling;
    std::optional<ChainData> chain;
    std::string chain_error;
    RegularityVerdict verdict;
};

Analysis analyze(const SystemSpec& spec) {
    Analysis a;
    a.structure = validate_structure(spec);
    if (!a.structure.det_IminusP.is_zero()) a.scaling = compute_scaling(spec);
    if (a.structure.admissible) {
        try {
            a.chain = compute_chain(spec, *a.scaling);
        } catch (const NoAdmissibleOrdering& e) {
            a.chain_error = e.what();
        }
    }
    a.verdict = classify(spec, a.structure, a.scaling);
    return a;
}

std::optional<SpecDocument> load_or_report(const std::string& path) {
    try {
        return load_spec(path);
    } catch (const std::exception& e) {
        std::cerr << "regcert: " << path << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

void emit(const Json& j, std::ostream& os) { os << j.dump(2) << "\n"; }

int cmd_analyze(const std::string& path) {
    const auto doc = load_or_report(path);
    if (!doc) return kParse;
    const SystemSpec& spec = doc->spec;
    const Analysis a = analyze(spec);

    Json out;
    out["command"] = "analyze";
    out["spec_digest"] = spec_digest(spec);
    out["spec"] = spec_to_json(*doc);
    out["structure"] = to_json(a.structure);
    out["diagonal_subunit"] = diagonal_subunit_check(spec);
    if (a.scaling) {
        out["scaling"] = to_json(*a.scaling);
    } else {
        Json s;
        s["unavailable"] = "|I-P| = 0";
        s["lambda_by_columns"] = Json::array();
        for (const Rational& q : lambda_by_columns(spec)) s["lambda_by_columns"].push_back(q.str());
        out["scaling"] = s;
    }
    if (a.chain) {
        out["chain"] = to_json(*a.chain);
        out["waypoints"] = to_json(waypoints(spec, a.chain->permutation));
    } else if (!a.chain_error.empty()) {
        out["chain"] = Json{{"error", a.chain_error}};
    } else {
        out["chain"] = nullptr;
    }
    out["verdict"] = to_json(a.verdict);
    out["audit"] = to_json(theorem_audit(spec, doc->attestations));

    const VerdictStatus st = a.verdict.status;
    if (st == VerdictStatus::Supercritical || st == VerdictStatus::AutoRegular) {
        out["certificate"] = Json{{"command", "regcert certify " + path}};
    } else if (st == VerdictStatus::Subcritical) {
        Json cx;
        const bool radial = spec.kind != SolutionKind::L1delta && spec.d >= 3;
        cx["applicable"] = radial;
        if (radial) {
            cx["command"] = "regcert counterexample " + path;
        } else {
            cx["citation"] = very_weak_cone_stub().citation;
        }
        out["counterexample"] = cx;
    }
    emit(out, std::cout);
    return verdict_exit(st);
}

int cmd_certify(const std::string& path, const std::string& epsilon, std::size_t max_steps, const std::string& out_path) {
    const auto doc = load_or_report(path);
    if (!doc) return kParse;
    const SystemSpec& spec = doc->spec;

    GeneratorConfig cfg;
    try {
        cfg.epsilon = Rational::parse(epsilon);
    } catch (const std::exception&) {
        std::cerr << "regcert: --epsilon: exact rational required (got \"" << epsilon << "\")\n";
        return kParse;
    }
    if (cfg.epsilon.sign() <= 0 || cfg.epsilon >= Rational(1)) {
        std::cerr << "regcert: --epsilon must lie in (0,1)\n";
        return kParse;
    }
    cfg.max_steps = max_steps;

    const RegularityVerdict v = classify(spec);
    if (v.status != VerdictStatus::Supercritical && v.status != VerdictStatus::AutoRegular) {
        std::cerr << "regcert: verdict " << to_string(v.status) << "; no certificate generated\n";
        return verdict_exit(v.status);
    }

    BootstrapCertificate cert;
    try {
        cert = generate_certificate(spec, cfg);
    } catch (const CertificateSearchExhausted& e) {
        std::cerr << "regcert: certificate search exhausted: " << e.what() << "\n";
        return kExhausted;
    }

    Rational min_margin = cert.steps.empty() ? Rational(0) : cert.steps.front().margin;
    for (const Step& s : cert.steps) min_margin = min(min_margin, s.margin);
    std::ostringstream summary;
    summary << "verdict " << to_string(v.status) << ": certificate with " << cert.steps.size()
            << " steps, minimum margin " << min_margin.str() << "\n";

    const Json j = certificate_to_json(cert);
    if (out_path.empty()) {
        emit(j, std::cout);
        std::cerr << summary.str();
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) {
            std::cerr << "regcert: cannot write '" << out_path << "'\n";
            return kParse;
        }
        emit(j, os);
        std::cout << summary.str();
    }
    return kOk;
}

int cmd_check(const std::string& spec_path, const std::string& cert_path) {
    const auto doc = load_or_report(spec_path);
    if (!doc) return kParse;
    BootstrapCertificate cert;
    try {
        cert = load_certificate(cert_path);
    } catch (const std::exception& e) {
        std::cerr << "regcert: " << cert_path << ": " << e.what() << "\n";
        return kParse;
    }
    const CheckResult res = check_certificate(doc->spec, cert);
    Json out;
    out["command"] = "check";
    out["result"] = to_json(res);
    emit(out, std::cout);
    if (res.ok) return kOk;
    std::cerr << "regcert: certificate rejected: " << to_string(res.reason);
    if (res.step_index) std::cerr << " at step " << *res.step_index + 1;
    std::cerr << ": " << res.detail << "\n";
    return res.reason == CheckFailure::SpecDigestMismatch ? kDigestMismatch : kCertInvalid;
}

std::string provenance(const SingularSolution& sol, std::size_t i) {
    std::ostringstream os;
    os << "ln c_" << i + 1 << " =";
    bool first = true;
    for (std::size_t k = 0; k < sol.beta.size(); ++k) {
        const Rational& m = sol.log_coeffs.at(i, k);
        if (m.is_zero()) continue;
        os << (first ? " " : " + ") << "(" << m.str() << ") ln(" << sol.beta[k].str() << ")";
        first = false;
    }
    if (first) os << " 0";
    return os.str();
}

int cmd_counterexample(const std::string& path, int digits, std::size_t radii) {
    const auto doc = load_or_report(path);
    if (!doc) return kParse;
    const SystemSpec& spec = doc->spec;
    if (digits < 1 || radii < 1) {
        std::cerr << "regcert: --digits and --radii must be positive\n";
        return kParse;
    }
    const Analysis a = analyze(spec);
    if (spec.kind == SolutionKind::L1delta) {
        const ConeConstructionStub stub = very_weak_cone_stub();
        std::cerr << "regcert: " << stub.citation << "; requires:";
        for (const auto& r : stub.required_inputs) std::cerr << " [" << r << "]";
        std::cerr << "\n";
        return kNoConstruction;
    }
    if (a.verdict.status != VerdictStatus::Subcritical) {
        std::cerr << "regcert: verdict " << to_string(a.verdict.status) << "; the singular construction needs Subcritical\n";
        return kNoConstruction;
    }

    SingularSolution sol;
    try {
        sol = construct_interior_singular(spec, *a.scaling, digits);
    } catch (const PreconditionViolated& e) {
        std::cerr << "regcert: " << e.what() << "\n";
        return kNoConstruction;
    }
    VerificationReport ver;
    try {
        ver = verify_identity(sol, radii);
    } catch (const IdentityViolation& e) {
        std::cerr << "regcert: identity violation: " << e.what() << "\n";
        return kIdentityViolation;
    }
    const MembershipReport mem = classify_membership(sol, spec.kind);

    Json out;
    out["command"] = "counterexample";
    out["spec_digest"] = spec_digest(spec);
    out["form"] = "u_i(r) = c_i (r^(-2 alpha_i) - 1), 0 < r <= 1";
    out["d"] = sol.d;
    out["verdict"] = to_string(a.verdict.status);
    out["cited_theorem"] = a.verdict.cited_theorem;
    Json comps = Json::array();
    for (std::size_t i = 0; i < spec.n; ++i) {
        Json c;
        c["component"] = i + 1;
        c["alpha"] = sol.alpha[i].str();
        c["beta"] = sol.beta[i].str();
        c["c"] = sol.c[i].str(digits);
        if (sol.c_exact[i]) {
            c["c_exact"] = sol.c_exact[i]->str();
        } else {
            c["c_exact"] = nullptr;
        }
        c["provenance"] = provenance(sol, i);
        comps.push_back(std::move(c));
    }
    out["components"] = std::move(comps);
    out["membership"] = to_json(mem);
    Json vj;
    vj["exponent_identity"] = ver.exponent_identity;
    vj["log_system_identity"] = ver.log_system_identity;
    vj["max_coefficient_residual"] = ver.max_coefficient_residual.str(6);
    vj["radii"] = ver.radii;
    vj["max_numeric_residual"] = static_cast<double>(ver.max_numeric_residual);
    vj["numeric_tolerance"] = static_cast<double>(ver.numeric_tolerance);
    out["verification"] = std::move(vj);
    emit(out, std::cout);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regcert: L-infinity regularity certifier for semilinear elliptic systems"};
    app.require_subcommand(1);

    std::string spec_path, cert_path, out_path, epsilon = "1/100";
    std::size_t max_steps = 10000;
    int digits = 50;
    std::size_t radii = 100;

    auto* analyze_cmd = app.add_subcommand("analyze", "structure, scaling, verdict and theorem audit");
    analyze_cmd->add_option("spec", spec_path, "spec document")->required();

    auto* certify_cmd = app.add_subcommand("certify", "generate a bootstrap certificate");
    certify_cmd->add_option("spec", spec_path, "spec document")->required();
    certify_cmd->add_option("--epsilon", epsilon, "margin fraction as an exact rational")->capture_default_str();
    certify_cmd->add_option("--max-steps", max_steps, "step budget")->capture_default_str();
    certify_cmd->add_option("--out", out_path, "certificate output path (default: stdout)");

    auto* check_cmd = app.add_subcommand("check", "independently check a certificate");
    check_cmd->add_option("spec", spec_path, "spec document")->required();
    check_cmd->add_option("certificate", cert_path, "certificate document")->required();

    auto* cx_cmd = app.add_subcommand("counterexample", "construct the radial singular solution");
    cx_cmd->add_option("spec", spec_path, "spec document")->required();
    cx_cmd->add_option("--digits", digits, "significant digits for c_i")->capture_default_str();
    cx_cmd->add_option("--radii", radii, "number of sample radii")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kParse;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(spec_path);
        if (*certify_cmd) return cmd_certify(spec_path, epsilon, max_steps, out_path);
        if (*check_cmd) return cmd_check(spec_path, cert_path);
        if (*cx_cmd) return cmd_counterexample(spec_path, digits, radii);
    } catch (const std::exception& e) {
        std::cerr << "regcert: internal error: " << e.what() << "\n";
        return 1;
    }
    return kParse;
}

#include "doctest.h"

#include "regcert/bootstrap.hpp"
#include "regcert/io.hpp"
#include "support/instances.hpp"

using namespace regcert;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const DocumentError& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("spec documents") {
    const SpecDocument doc = parse_spec(R"({"n": 2, "d": 3, "kind": "l1", "P": [["0", 2], ["3", "0"]],
        "theta": "inf", "attestations": ["lower-bound"]})");
    CHECK(doc.spec.P.at(0, 1) == Rational(2));
    CHECK(doc.spec.r == RVector{0, 0});
    CHECK(doc.spec.has_h);
    CHECK(doc.spec.theta->is_infinite());
    CHECK(doc.attestations.count(Attestation::LowerBound) == 1);

    const SpecDocument again = parse_spec(spec_to_json(doc).dump());
    CHECK(spec_digest(again.spec) == spec_digest(doc.spec));
    CHECK(again.attestations == doc.attestations);

    const SpecDocument no_h = parse_spec(R"({"n": 1, "d": 3, "kind": "h01", "P": [["2"]]})");
    CHECK_FALSE(no_h.spec.has_h);
}

TEST_CASE("spec diagnostics") {
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h01", "P": [["0.5"]]})"), "P[0][0]: exact rational required"));
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h01", "P": [[0.5]]})"), "exact rational required"));
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h01", "P": [["2"]], "r": ["1e2"]})"), "r[0]"));
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h1", "P": [["2"]]})"), "kind"));
    CHECK(contains(error_of(R"({"n": 2, "d": 3, "kind": "h01", "P": [["2"]]})"), "P"));
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h01", "P": [["2"]], "extra": 1})"), "extra: unknown field"));
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h01", "P": [["-2"]]})"), "negative"));
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h01", "P": [["2"]], "has_h": true})"), "theta"));
    CHECK(contains(error_of("{\n  \"n\": 1,\n  \"d\": 3,,\n}"), "line 3"));
    CHECK(contains(error_of(R"({"n": 1, "d": 3, "kind": "h01", "P": [["2"]], "attestations": ["magic"]})"), "attestations[0]"));
}

TEST_CASE("certificate documents round-trip") {
    testing::Rng rng(71);
    for (int k = 0; k < 40; ++k) {
        const SystemSpec s = testing::random_supercritical(2 + static_cast<std::size_t>(k % 4),
                                                           static_cast<SolutionKind>(k % 3), k % 2, rng);
        const BootstrapCertificate cert = generate_certificate(s);
        const std::string text = certificate_to_json(cert).dump(2);
        const BootstrapCertificate back = parse_certificate(text);
        CHECK(back == cert);
        CHECK(certificate_to_json(back).dump(2) == text);
    }
}

TEST_CASE("certificate document errors") {
    const SystemSpec s = testing::make_spec(1, 3, SolutionKind::L1, RMatrix{{2}});
    Json j = certificate_to_json(generate_certificate(s));
    CHECK(j["format"] == "regcert-certificate/1");
    CHECK(j["steps"][0]["component"] == 1);

    Json bad = j;
    bad["format"] = "other";
    CHECK_THROWS_AS(certificate_from_json(bad), DocumentError);
    bad = j;
    bad["step_count"] = 99;
    CHECK_THROWS_AS(certificate_from_json(bad), DocumentError);
    bad = j;
    bad["steps"][0]["new_s"] = 0.25;
    CHECK_THROWS_AS(certificate_from_json(bad), DocumentError);
    bad = j;
    bad["final"] = Json::array({"0", "0"});
    CHECK_THROWS_AS(certificate_from_json(bad), DocumentError);
}

TEST_CASE("reports render rationals as num/den") {
    const SystemSpec s = testing::make_spec(2, 3, SolutionKind::H01, RMatrix{{0, 2}, {3, 0}});
    const Json sc = to_json(compute_scaling(s));
    CHECK(sc["alpha"][0] == "3/5");
    CHECK(sc["det_IminusP"] == "-5/1");
    const Json v = to_json(classify(s));
    CHECK(v["status"] == "Supercritical");
    CHECK(v.dump() == to_json(classify(s)).dump());
}

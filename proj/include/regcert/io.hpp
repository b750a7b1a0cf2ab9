#pragma once

#include "regcert/bootstrap.hpp"
#include "regcert/checker.hpp"
#include "regcert/counterexample.hpp"
#include "regcert/criticality.hpp"
#include "regcert/scaling.hpp"
#include "regcert/system.hpp"

#include "json.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regcert {

using Json = nlohmann::ordered_json;

/// Malformed document. what() carries the field path or line/column.
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpecDocument {
    SystemSpec spec;
    std::set<Attestation> attestations;
};

SpecDocument parse_spec(std::string_view text);
SpecDocument load_spec(const std::string& path);
Json spec_to_json(const SpecDocument& doc);

inline constexpr const char* kCertificateFormat = "regcert-certificate/1";

Json certificate_to_json(const BootstrapCertificate& cert);
BootstrapCertificate certificate_from_json(const Json& doc);
BootstrapCertificate parse_certificate(std::string_view text);
BootstrapCertificate load_certificate(const std::string& path);

Json to_json(const StructureReport& rep);
Json to_json(const ScalingData& sc);
Json to_json(const ChainData& ch);
Json to_json(const CriticalExponent& ce);
Json to_json(const RegularityVerdict& v);
Json to_json(const AuditReport& a);
Json to_json(const WaypointTable& w);
Json to_json(const CheckResult& r);
Json to_json(const MembershipReport& m);

/// Parses JSON text, reporting syntax errors as "line L, column C: ...".
Json parse_json_text(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace regcert

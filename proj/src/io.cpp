#include "regcert/io.hpp"

#include <fstream>
#include <sstream>

namespace regcert {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DocumentError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < stop; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        const auto cut = msg.find("syntax error");
        if (cut != std::string::npos) msg = msg.substr(cut);
        throw DocumentError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw DocumentError(path + ": " + what);
}

Rational rational_field(const Json& v, const std::string& path) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Rational::parse(std::to_string(v.get<unsigned long long>()));
        return Rational::parse(std::to_string(v.get<long long>()));
    }
    if (v.is_number_float()) field_error(path, "exact rational required (got a floating-point number)");
    if (!v.is_string()) field_error(path, "exact rational required (expected \"num/den\" or an integer)");
    const std::string s = v.get<std::string>();
    try {
        return Rational::parse(s);
    } catch (const RationalFormatError&) {
        field_error(path, "exact rational required (got \"" + s + "\")");
    } catch (const ArithmeticError&) {
        field_error(path, "zero denominator in \"" + s + "\"");
    }
}

ExtRational ext_field(const Json& v, const std::string& path) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "+inf") return ExtRational::infinity();
    }
    return ExtRational(rational_field(v, path));
}

long long integer_field(const Json& obj, const char* key) {
    if (!obj.contains(key)) field_error(key, "missing");
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) field_error(key, "integer required");
    return v.get<long long>();
}

std::string rat(const Rational& q) { return q.str(); }

Json vec(const RVector& v) {
    Json a = Json::array();
    for (const Rational& q : v) a.push_back(q.str());
    return a;
}

Json indices(const std::vector<std::size_t>& v) {
    Json a = Json::array();
    for (std::size_t k : v) a.push_back(k + 1);
    return a;
}

RVector vector_field(const Json& v, const std::string& path, std::size_t n) {
    if (!v.is_array()) field_error(path, "array required");
    if (v.size() != n) field_error(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    RVector out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(rational_field(v[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

}  // namespace

SpecDocument parse_spec(std::string_view text) {
    const Json doc = parse_json_text(text);
    if (!doc.is_object()) throw DocumentError("spec document must be a JSON object");
    static const std::set<std::string> known{"n", "d", "kind", "P", "r", "theta", "has_h", "attestations", "name", "description"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key)) field_error(key, "unknown field");
    }

    SpecDocument out;
    SystemSpec& s = out.spec;
    const long long n = integer_field(doc, "n");
    if (n < 1 || n > static_cast<long long>(kMaxComponents)) field_error("n", "must be in 1.." + std::to_string(kMaxComponents));
    s.n = static_cast<std::size_t>(n);
    const long long d = integer_field(doc, "d");
    if (d < 1 || d > 1000000) field_error("d", "must be a positive integer");
    s.d = static_cast<int>(d);

    if (!doc.contains("kind") || !doc["kind"].is_string()) field_error("kind", "string \"h01\", \"l1\" or \"l1delta\" required");
    try {
        s.kind = parse_kind(doc["kind"].get<std::string>());
    } catch (const std::invalid_argument& e) {
        field_error("kind", e.what());
    }

    if (!doc.contains("P")) field_error("P", "missing");
    const Json& P = doc["P"];
    if (!P.is_array() || P.size() != s.n) field_error("P", "expected " + std::to_string(s.n) + " rows");
    s.P = RMatrix(s.n, s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        const RVector row = vector_field(P[i], "P[" + std::to_string(i) + "]", s.n);
        for (std::size_t j = 0; j < s.n; ++j) s.P.at(i, j) = row[j];
    }
    if (doc.contains("r")) {
        s.r = vector_field(doc["r"], "r", s.n);
    } else {
        s.r.assign(s.n, Rational(0));
    }
    if (doc.contains("theta") && !doc["theta"].is_null()) s.theta = ext_field(doc["theta"], "theta");
    if (doc.contains("has_h")) {
        if (!doc["has_h"].is_boolean()) field_error("has_h", "boolean required");
        s.has_h = doc["has_h"].get<bool>();
    } else {
        s.has_h = s.theta.has_value();
    }
    if (doc.contains("attestations")) {
        const Json& at = doc["attestations"];
        if (!at.is_array()) field_error("attestations", "array of strings required");
        for (std::size_t k = 0; k < at.size(); ++k) {
            const std::string path = "attestations[" + std::to_string(k) + "]";
            if (!at[k].is_string()) field_error(path, "string required");
            try {
                out.attestations.insert(parse_attestation(at[k].get<std::string>()));
            } catch (const std::invalid_argument& e) {
                field_error(path, e.what());
            }
        }
    }
    try {
        check_spec(s);
    } catch (const MalformedSpec& e) {
        throw DocumentError(std::string("invalid spec: ") + e.what());
    }
    return out;
}

SpecDocument load_spec(const std::string& path) { return parse_spec(read_file(path)); }

Json spec_to_json(const SpecDocument& doc) {
    const SystemSpec& s = doc.spec;
    Json j;
    j["n"] = s.n;
    j["d"] = s.d;
    j["kind"] = to_string(s.kind);
    Json P = Json::array();
    for (std::size_t i = 0; i < s.n; ++i) P.push_back(vec(RVector(s.P.row(i).begin(), s.P.row(i).end())));
    j["P"] = P;
    j["r"] = vec(s.r);
    if (s.theta) j["theta"] = s.theta->str();
    j["has_h"] = s.has_h;
    if (!doc.attestations.empty()) {
        Json a = Json::array();
        for (Attestation at : doc.attestations) a.push_back(to_string(at));
        j["attestations"] = a;
    }
    return j;
}

Json certificate_to_json(const BootstrapCertificate& cert) {
    Json j;
    j["format"] = kCertificateFormat;
    j["spec_digest"] = cert.spec_digest;
    j["n"] = cert.initial.size();
    j["initial"] = vec(cert.initial);
    j["step_count"] = cert.steps.size();
    Json steps = Json::array();
    for (const Step& st : cert.steps) {
        Json s;
        s["component"] = st.component + 1;
        s["pre"] = vec(st.pre_state);
        s["new_s"] = rat(st.new_s);
        s["sigma"] = rat(st.sigma);
        s["margin"] = rat(st.margin);
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    j["final"] = vec(cert.final_state);
    return j;
}

BootstrapCertificate certificate_from_json(const Json& doc) {
    if (!doc.is_object()) throw DocumentError("certificate must be a JSON object");
    if (!doc.contains("format") || doc["format"] != kCertificateFormat) {
        field_error("format", std::string("expected \"") + kCertificateFormat + "\"");
    }
    if (!doc.contains("spec_digest") || !doc["spec_digest"].is_string()) field_error("spec_digest", "string required");
    const long long n = integer_field(doc, "n");
    if (n < 1 || n > static_cast<long long>(kMaxComponents)) field_error("n", "out of range");
    const std::size_t N = static_cast<std::size_t>(n);

    BootstrapCertificate cert;
    cert.spec_digest = doc["spec_digest"].get<std::string>();
    if (!doc.contains("initial")) field_error("initial", "missing");
    cert.initial = vector_field(doc["initial"], "initial", N);
    if (!doc.contains("steps") || !doc["steps"].is_array()) field_error("steps", "array required");
    const Json& steps = doc["steps"];
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const std::string base = "steps[" + std::to_string(k) + "]";
        const Json& s = steps[k];
        if (!s.is_object()) field_error(base, "object required");
        if (!s.contains("component") || !s["component"].is_number_integer()) field_error(base + ".component", "integer required");
        const long long comp = s["component"].get<long long>();
        Step st;
        // Out-of-range components are kept so the checker can report them.
        st.component = comp >= 1 ? static_cast<std::size_t>(comp - 1) : static_cast<std::size_t>(-1);
        for (const char* key : {"pre", "new_s", "sigma", "margin"}) {
            if (!s.contains(key)) field_error(base + "." + key, "missing");
        }
        if (!s["pre"].is_array()) field_error(base + ".pre", "array required");
        for (std::size_t i = 0; i < s["pre"].size(); ++i) {
            st.pre_state.push_back(rational_field(s["pre"][i], base + ".pre[" + std::to_string(i) + "]"));
        }
        st.new_s = rational_field(s["new_s"], base + ".new_s");
        st.sigma = rational_field(s["sigma"], base + ".sigma");
        st.margin = rational_field(s["margin"], base + ".margin");
        cert.steps.push_back(std::move(st));
    }
    if (doc.contains("step_count") && (!doc["step_count"].is_number_unsigned() || doc["step_count"].get<std::size_t>() != steps.size())) {
        field_error("step_count", "does not match the number of steps");
    }
    if (!doc.contains("final")) field_error("final", "missing");
    cert.final_state = vector_field(doc["final"], "final", N);
    return cert;
}

BootstrapCertificate parse_certificate(std::string_view text) { return certificate_from_json(parse_json_text(text)); }

BootstrapCertificate load_certificate(const std::string& path) { return parse_certificate(read_file(path)); }

Json to_json(const StructureReport& rep) {
    Json j;
    j["irreducible"] = rep.irreducible;
    j["principal_minors_positive"] = rep.principal_minors_positive;
    j["det_IminusP"] = rat(rep.det_IminusP);
    j["admissible"] = rep.admissible;
    Json minors = Json::array();
    for (const auto& m : rep.minors) {
        Json e;
        e["index"] = indices(m.index);
        e["value"] = rat(m.value);
        minors.push_back(std::move(e));
    }
    j["principal_minors"] = std::move(minors);
    j["failures"] = rep.failures;
    return j;
}

Json to_json(const ScalingData& sc) {
    Json j;
    j["alpha"] = vec(sc.alpha);
    j["det_IminusP"] = rat(sc.det_IminusP);
    j["lambda"] = vec(sc.lambda);
    j["argmax_alpha"] = indices(sc.argmax_alpha);
    j["max_alpha"] = rat(sc.max_alpha());
    return j;
}

Json to_json(const ChainData& ch) {
    Json j;
    j["permutation"] = indices(ch.permutation);
    Json entries = Json::array();
    for (std::size_t k = 0; k < ch.chain.size(); ++k) {
        Json e;
        e["r"] = ch.ranks[k];
        e["det_Q"] = rat(ch.q_dets[k]);
        e["lambda_rr"] = rat(ch.lambda_rr[k]);
        e["value"] = rat(ch.chain[k]);
        entries.push_back(std::move(e));
    }
    j["chain"] = std::move(entries);
    return j;
}

Json to_json(const CriticalExponent& ce) {
    Json j;
    j["kind"] = to_string(ce.kind);
    j["d"] = ce.d;
    j["p_c"] = ce.p_c.str();
    j["p_c_conj"] = ce.p_c_conj.str();
    j["p_c_conj_inv"] = rat(ce.p_c_conj_inv);
    j["threshold"] = rat(ce.threshold);
    return j;
}

Json to_json(const RegularityVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["cited_theorem"] = v.cited_theorem;
    j["critical_exponent"] = to_json(v.exponent);
    Json ev = Json::array();
    for (const auto& c : v.evidence) {
        Json e;
        e["name"] = c.name;
        e["lhs"] = c.lhs.str();
        e["relation"] = c.relation;
        e["rhs"] = c.rhs.str();
        e["holds"] = c.holds;
        ev.push_back(std::move(e));
    }
    j["evidence"] = std::move(ev);
    j["notes"] = v.notes;
    return j;
}

Json to_json(const AuditReport& a) {
    Json j;
    Json entries = Json::array();
    for (const auto& e : a.entries) {
        Json x;
        x["theorem"] = e.theorem;
        x["status"] = to_string(e.status);
        x["missing"] = e.missing;
        x["reason"] = e.reason;
        entries.push_back(std::move(x));
    }
    j["theorems"] = std::move(entries);
    j["assumptions"] = a.assumptions;
    return j;
}

Json to_json(const WaypointTable& w) {
    Json j;
    j["order"] = indices(w.order);
    j["case"] = to_string(w.case_tag);
    j["case_rank"] = w.case_rank;
    Json ranks = Json::array();
    for (std::size_t r = 1; r <= w.slowness.size(); ++r) {
        Json e;
        e["r"] = r;
        e["slowness"] = vec(w.slowness[r - 1]);
        Json ks = Json::array();
        for (const ExtRational& k : w.exponents(r)) ks.push_back(k.str());
        e["k_star"] = std::move(ks);
        ranks.push_back(std::move(e));
    }
    j["ranks"] = std::move(ranks);
    return j;
}

Json to_json(const CheckResult& r) {
    Json j;
    j["ok"] = r.ok;
    j["reason"] = to_string(r.reason);
    if (r.step_index) {
        j["step"] = *r.step_index + 1;
    } else {
        j["step"] = nullptr;
    }
    j["detail"] = r.detail;
    return j;
}

Json to_json(const MembershipReport& m) {
    Json j;
    Json comps = Json::array();
    for (std::size_t i = 0; i < m.components.size(); ++i) {
        const auto& c = m.components[i];
        Json e;
        e["component"] = i + 1;
        e["in_Linf"] = c.in_Linf;
        e["in_H01"] = c.in_H01;
        e["in_L1"] = c.in_L1;
        e["f_in_L1"] = c.f_in_L1;
        if (!c.in_Lk.empty()) {
            Json lk = Json::array();
            for (const auto& [k, in] : c.in_Lk) {
                Json q;
                q["k"] = k.str();
                q["member"] = in;
                lk.push_back(std::move(q));
            }
            e["in_Lk"] = std::move(lk);
        }
        comps.push_back(std::move(e));
    }
    j["components"] = std::move(comps);
    j["all_in_H01"] = m.all_in_H01;
    j["all_in_L1"] = m.all_in_L1;
    j["in_kind"] = m.in_kind;
    j["any_in_Linf"] = m.any_in_Linf;
    return j;
}

}  // namespace regcert

#pragma once

#include "nonleaf/criteria.hpp"
#include "nonleaf/jsonio.hpp"
#include "nonleaf/oracle.hpp"
#include "nonleaf/schemas.hpp"
#include "nonleaf/version.hpp"

#include <cstdlib>
#include <ctime>
#include <optional>
#include <sstream>
#include <string>

namespace nonleaf {

// Emitted documents are deterministic for a given (manifest, seed, version):
// the timestamp field is null unless SOURCE_DATE_EPOCH is set.
inline std::optional<std::string> timestamp_from_env() {
    const char* env = std::getenv("SOURCE_DATE_EPOCH");
    if (!env) return std::nullopt;
    std::time_t t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

inline ojson witness_to_json(const Witness& w) {
    ojson j;
    j["kind"] = w.kind;
    ojson fields = ojson::array();
    for (const auto& [k, v] : w.fields) fields.push_back(ojson::array({k, v}));
    j["fields"] = std::move(fields);
    return j;
}

inline ojson verdict_to_json(const Verdict& v) {
    ojson j;
    j["check"] = v.check;
    j["status"] = status_str(v.status);
    j["detail"] = v.detail;
    ojson ws = ojson::array();
    for (const auto& w : v.witnesses) ws.push_back(witness_to_json(w));
    j["witnesses"] = std::move(ws);
    j["assumptions"] = v.assumptions;
    return j;
}

inline ojson certificate_to_json(const Certificate& c) {
    ojson j;
    j["theorem"] = c.theorem;
    j["manifold"] = c.manifold;
    j["status"] = status_str(c.status);
    j["conclusion"] = c.conclusion;
    ojson hs = ojson::array();
    for (const auto& h : c.hypotheses) hs.push_back(verdict_to_json(h));
    j["hypotheses"] = std::move(hs);
    j["assumptions"] = c.assumptions;
    j["model_limitations"] = c.model_limitations;
    return j;
}

inline ojson certificate_document(const Certificate& c, const std::string& manifest_digest,
                                  std::uint64_t seed) {
    ojson doc;
    doc["format"] = "nonleaf-certificate/1";
    doc["tool_version"] = kVersion;
    doc["manifest_digest"] = manifest_digest;
    doc["seed"] = seed;
    if (auto ts = timestamp_from_env())
        doc["timestamp"] = *ts;
    else
        doc["timestamp"] = nullptr;
    doc["certificate"] = certificate_to_json(c);
    static const json schema = json::parse(schemas::kCertificateSchema);
    validate_against_schema(json::parse(doc.dump()), schema, "certificate document");
    return doc;
}

inline ojson report_document(const std::vector<OracleReport>& reports,
                             const std::optional<std::string>& manifest_digest,
                             std::uint64_t seed) {
    ojson doc;
    doc["format"] = "nonleaf-report/1";
    doc["tool_version"] = kVersion;
    if (manifest_digest)
        doc["manifest_digest"] = *manifest_digest;
    else
        doc["manifest_digest"] = nullptr;
    doc["seed"] = seed;
    if (auto ts = timestamp_from_env())
        doc["timestamp"] = *ts;
    else
        doc["timestamp"] = nullptr;
    ojson rs = ojson::array();
    for (const auto& r : reports) {
        ojson rj;
        rj["check"] = r.check;
        rj["instance"] = r.instance;
        rj["expected"] = r.expected;
        rj["computed"] = r.computed;
        rj["pass"] = r.pass;
        rj["seed"] = r.seed;
        rs.push_back(std::move(rj));
    }
    doc["reports"] = std::move(rs);
    static const json schema = json::parse(schemas::kReportSchema);
    validate_against_schema(json::parse(doc.dump()), schema, "report document");
    return doc;
}

// ---------------------------------------------------------------------------
// human-readable rendering

inline std::string render_witness(const Witness& w) {
    std::ostringstream os;
    os << w.kind;
    for (const auto& [k, v] : w.fields) os << " " << k << "=" << v;
    return os.str();
}

inline std::string render_verdict(const Verdict& v, const std::string& indent = "") {
    std::ostringstream os;
    os << indent << "check: " << v.check << "\n";
    os << indent << "status: " << status_str(v.status) << "\n";
    if (!v.detail.empty()) os << indent << "detail: " << v.detail << "\n";
    for (const auto& w : v.witnesses) os << indent << "witness: " << render_witness(w) << "\n";
    for (const auto& a : v.assumptions) os << indent << "assumption: " << a << "\n";
    return os.str();
}

inline std::string render_certificate(const Certificate& c) {
    std::ostringstream os;
    os << "theorem: " << c.theorem << "\n";
    os << "manifold: " << c.manifold << "\n";
    os << "status: " << status_str(c.status) << "\n";
    for (const auto& h : c.hypotheses) {
        os << "hypothesis " << h.check << ": " << status_str(h.status) << "\n";
        if (!h.detail.empty()) os << "  detail: " << h.detail << "\n";
        for (const auto& w : h.witnesses) os << "  witness: " << render_witness(w) << "\n";
    }
    if (!c.assumptions.empty()) {
        os << "assumptions:\n";
        for (const auto& a : c.assumptions) os << "  - " << a << "\n";
    }
    os << "model limitations:\n";
    for (const auto& l : c.model_limitations) os << "  - " << l << "\n";
    if (!c.conclusion.empty()) os << "conclusion: " << c.conclusion << "\n";
    return os.str();
}

inline std::string render_report_line(const OracleReport& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << " " << r.check << " [" << r.instance << "]";
    if (!r.pass) os << " expected: " << r.expected << "; computed: " << r.computed;
    return os.str();
}

}  // namespace nonleaf

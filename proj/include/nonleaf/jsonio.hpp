#pragma once

#include "nonleaf/extended_count.hpp"
#include "nonleaf/numeric.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace nonleaf {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct ManifestError : std::runtime_error {
    ManifestError(const std::string& path, const std::string& msg)
        : std::runtime_error(path.empty() ? msg : path + ": " + msg) {}
};

// Integers round-trip as JSON numbers up to 2^53 and as decimal strings above.
inline ojson int_to_json(const Int& v) {
    static const Int kMax = Int(1) << 53;
    if (abs_int(v) <= kMax) return ojson(static_cast<std::int64_t>(v));
    return ojson(v.str());
}

inline Int int_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty()) throw ManifestError(path, "empty integer string");
        std::size_t start = s[0] == '-' ? 1 : 0;
        if (start == s.size()) throw ManifestError(path, "malformed integer '" + s + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw ManifestError(path, "malformed integer '" + s + "'");
        return Int(s);
    }
    throw ManifestError(path, "expected an integer (or a decimal string)");
}

inline ojson ext_to_json(const ExtCount& c) {
    if (c.is_omega()) return ojson("omega");
    return int_to_json(c.finite());
}

inline ExtCount ext_from_json(const json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "omega") return ExtCount::omega();
    Int v = int_from_json(j, path);
    if (v < 0) throw ManifestError(path, "count must be >= 0 or \"omega\"");
    return ExtCount(v);
}

// ---------------------------------------------------------------------------
// a structural validator for the practical JSON Schema subset the shipped
// schemas use: type, enum, required, properties, additionalProperties, items,
// oneOf, minimum, minItems, maxItems and local $ref.

namespace schema_detail {

inline const json& resolve_ref(const json& root, const std::string& ref,
                               const std::string& path) {
    if (ref.rfind("#/", 0) != 0) throw ManifestError(path, "unsupported $ref '" + ref + "'");
    const json* node = &root;
    std::size_t pos = 2;
    while (pos < ref.size()) {
        std::size_t next = ref.find('/', pos);
        std::string key = ref.substr(pos, next == std::string::npos ? next : next - pos);
        if (!node->is_object() || !node->contains(key))
            throw ManifestError(path, "dangling $ref '" + ref + "'");
        node = &(*node)[key];
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return *node;
}

inline bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "integer") return value.is_number_integer();
    if (t == "number") return value.is_number();
    if (t == "boolean") return value.is_boolean();
    if (t == "null") return value.is_null();
    return false;
}

inline void validate(const json& root, const json& schema, const json& value,
                     const std::string& path) {
    if (schema.contains("$ref")) {
        validate(root, resolve_ref(root, schema["$ref"].get<std::string>(), path), value, path);
        return;
    }
    if (schema.contains("oneOf")) {
        std::string errors;
        for (const auto& alt : schema["oneOf"]) {
            try {
                validate(root, alt, value, path);
                return;
            } catch (const ManifestError& e) {
                errors += std::string(errors.empty() ? "" : " | ") + e.what();
            }
        }
        throw ManifestError(path, "no alternative matches (" + errors + ")");
    }
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string())
            ok = type_matches(value, t.get<std::string>());
        else
            for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
        if (!ok) throw ManifestError(path, "unexpected type " + std::string(value.type_name()));
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || alt == value;
        if (!ok) throw ManifestError(path, "value " + value.dump() + " not in enum");
    }
    if (schema.contains("minimum") && value.is_number())
        if (value.get<double>() < schema["minimum"].get<double>())
            throw ManifestError(path, "below minimum");
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& req : schema["required"])
                if (!value.contains(req.get<std::string>()))
                    throw ManifestError(path, "missing required key '" + req.get<std::string>() +
                                                  "'");
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        for (const auto& [key, sub] : value.items()) {
            if (props && props->contains(key)) {
                validate(root, (*props)[key], sub, path + "." + key);
            } else if (schema.contains("additionalProperties")) {
                const json& ap = schema["additionalProperties"];
                if (ap.is_boolean() && !ap.get<bool>())
                    throw ManifestError(path, "unknown key '" + key + "'");
                if (ap.is_object()) validate(root, ap, sub, path + "." + key);
            }
        }
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
            throw ManifestError(path, "too few items");
        if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>())
            throw ManifestError(path, "too many items");
        if (schema.contains("items")) {
            std::size_t i = 0;
            for (const auto& item : value)
                validate(root, schema["items"], item, path + "[" + std::to_string(i++) + "]");
        }
    }
}

}  // namespace schema_detail

inline void validate_against_schema(const json& value, const json& schema,
                                    const std::string& what) {
    schema_detail::validate(schema, schema, value, what);
}

}  // namespace nonleaf

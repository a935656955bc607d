#pragma once

// Tiny structural validator covering the subset of JSON Schema the files
// under schemas/ actually use: type, required, properties, items, enum.
// Returns an empty string on success, otherwise a path plus reason.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace schema {

inline bool type_matches(const std::string& want, const nlohmann::json& v) {
    if (want == "object") return v.is_object();
    if (want == "array") return v.is_array();
    if (want == "string") return v.is_string();
    if (want == "boolean") return v.is_boolean();
    if (want == "integer") return v.is_number_integer();
    if (want == "number") return v.is_number();
    return false;
}

inline std::string validate(const nlohmann::json& sch, const nlohmann::json& v,
                            const std::string& path = "$") {
    if (sch.contains("type")) {
        std::string want = sch["type"].get<std::string>();
        if (!type_matches(want, v)) {
            return path + ": expected " + want + ", got " + v.dump();
        }
    }
    if (sch.contains("enum")) {
        bool found = false;
        for (const auto& option : sch["enum"]) {
            if (option == v) {
                found = true;
                break;
            }
        }
        if (!found) return path + ": value " + v.dump() + " not in enum";
    }
    if (sch.contains("required")) {
        for (const auto& key : sch["required"]) {
            if (!v.contains(key.get<std::string>())) {
                return path + ": missing required key " + key.get<std::string>();
            }
        }
    }
    if (sch.contains("properties") && v.is_object()) {
        for (const auto& [key, sub] : sch["properties"].items()) {
            if (!v.contains(key)) continue;
            std::string err = validate(sub, v[key], path + "." + key);
            if (!err.empty()) return err;
        }
    }
    if (sch.contains("items") && v.is_array()) {
        size_t idx = 0;
        for (const auto& elem : v) {
            std::string err =
                validate(sch["items"], elem, path + "[" + std::to_string(idx) + "]");
            if (!err.empty()) return err;
            ++idx;
        }
    }
    return "";
}

inline nlohmann::json load_schema(const std::string& name) {
    std::string full = std::string(RDV_SCHEMA_DIR) + "/" + name;
    std::ifstream in(full);
    if (!in) throw std::runtime_error("cannot open schema " + full);
    nlohmann::json sch;
    in >> sch;
    return sch;
}

// Parses CLI output and validates it in one step.
inline std::string check_against(const std::string& schema_file,
                                 const std::string& payload) {
    nlohmann::json v = nlohmann::json::parse(payload);
    return validate(load_schema(schema_file), v);
}

}  // namespace schema

#pragma once

#include <string>

#include "json.hpp"

namespace metaplectica {

/**
 * Checks `value` against the subset of JSON Schema used by the shipped
 * schema files: type, enum, required, properties, items. Returns an empty
 * string on success, otherwise a path-prefixed reason for the first
 * mismatch.
 */
inline std::string json_schema_mismatch(const nlohmann::json& schema, const nlohmann::json& value,
                                        const std::string& path = "$") {
  if (schema.contains("type")) {
    const std::string t = schema.at("type").get<std::string>();
    const bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) || (t == "number" && value.is_number()) ||
                    (t == "integer" && value.is_number_integer()) ||
                    (t == "boolean" && value.is_boolean()) || (t == "null" && value.is_null());
    if (!ok) {
      return path + ": expected " + t;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema.at("enum")) {
      if (candidate == value) {
        found = true;
        break;
      }
    }
    if (!found) {
      return path + ": value is not one of the allowed constants";
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& name : schema.at("required")) {
        if (!value.contains(name.get<std::string>())) {
          return path + ": missing required member '" + name.get<std::string>() + "'";
        }
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema.at("properties").items()) {
        if (value.contains(key)) {
          const std::string r = json_schema_mismatch(sub, value.at(key), path + "." + key);
          if (!r.empty()) {
            return r;
          }
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string r =
          json_schema_mismatch(schema.at("items"), value.at(i), path + "[" + std::to_string(i) + "]");
      if (!r.empty()) {
        return r;
      }
    }
  }
  return "";
}

}  // namespace metaplectica

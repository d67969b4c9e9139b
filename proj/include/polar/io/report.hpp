#pragma once

// Machine-readable report: top-level keys command, inputs, results,
// warnings, version, always in that order. No timestamps or host data, so
// the same command on the same inputs serializes to the same bytes.

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace polar::io {

inline constexpr std::string_view kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> warnings = {};

  Json to_json() const {
    Json in = inputs;
    in["digest"] = fnv1a_hex(inputs.dump());
    Json out;
    out["command"] = command;
    out["inputs"] = std::move(in);
    out["results"] = results;
    out["warnings"] = warnings;
    out["version"] = kVersion;
    return out;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

}  // namespace polar::io

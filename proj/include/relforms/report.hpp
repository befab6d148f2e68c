#pragma once

#include <cstdint>
#include <string>

#include "relforms/scenario.hpp"

namespace relforms {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over a canonicalized (parsed and re-serialized) scenario document,
// so semantically identical configs share a digest.
std::string scenario_digest(const Scenario& sc);
std::uint64_t fnv1a(const std::string& bytes);

struct RunManifest {
  std::string scenario_digest;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  double tolerance = 0.0;
  std::string output_path;

  std::string to_json() const;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace relforms

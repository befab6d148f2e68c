#include "relforms/report.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "relforms/errors.hpp"

namespace relforms {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string scenario_digest(const Scenario& sc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(scenario_to_json(sc))));
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["scenario_digest"] = scenario_digest;
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  j["tolerance"] = tolerance;
  j["output_path"] = output_path;
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

}  // namespace relforms

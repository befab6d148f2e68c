#pragma once

#include <stdexcept>
#include <string>

namespace relforms {

// Exit-code taxonomy used by the CLI: 0 pass, 2 validation, 3 integration,
// 4 verification failure, 5 I/O.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct IntegrationError : std::runtime_error {
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// World line tangent to the constraint-surface family: the multiplier
// denominator vanished.
struct GrazingWorldlineError : IntegrationError {
  explicit GrazingWorldlineError(const std::string& what) : IntegrationError(what) {}
};

struct NonTimelikeVelocityError : IntegrationError {
  explicit NonTimelikeVelocityError(const std::string& what) : IntegrationError(what) {}
};

struct NoRealRootError : ValidationError {
  explicit NoRealRootError(const std::string& what) : ValidationError(what) {}
};

struct MissingMirrorModeError : ValidationError {
  explicit MissingMirrorModeError(const std::string& what) : ValidationError(what) {}
};

}  // namespace relforms

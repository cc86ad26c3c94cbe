#pragma once

#include <stdexcept>
#include <string>

namespace qkt {

enum class ErrorCode {
  invalid_dimension,
  invalid_argument,
  non_physical_state,
  numerical,
  vanishing_probability,
  validation,
  io,
};

/// Base for every error raised by the library. The code survives the trip
/// through the C API as a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Detector D1 never clicks: unnormalized post-selected trace below threshold.
class VanishingProbabilityError : public Error {
 public:
  VanishingProbabilityError(const std::string& what, int kick = -1)
      : Error(ErrorCode::vanishing_probability, what), kick_(kick) {}
  int kick() const noexcept { return kick_; }

 private:
  int kick_;
};

/// Config rejected; `path()` names the offending field (e.g. "sigma.count").
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& what)
      : Error(ErrorCode::validation, path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qkt

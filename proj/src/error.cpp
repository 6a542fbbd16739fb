#include "effdim/error.hpp"

namespace effdim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateFisher: return "DegenerateFisher";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format(ErrorCode code, const std::string& message,
                   std::optional<std::size_t> theta_index) {
  std::string out = std::string(to_string(code)) + ": " + message;
  if (theta_index) out += " (theta point " + std::to_string(*theta_index) + ")";
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> theta_index)
    : std::runtime_error(format(code, message, theta_index)),
      code_(code),
      theta_index_(theta_index),
      bare_message_(message) {}

Error Error::with_theta_index(std::size_t index) const {
  return Error(code_, bare_message_, index);
}

}  // namespace effdim

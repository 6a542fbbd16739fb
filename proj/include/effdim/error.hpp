#ifndef EFFDIM_ERROR_HPP
#define EFFDIM_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace effdim {

enum class ErrorCode {
  InvalidInput,
  NotPositiveDefinite,
  ConvergenceFailure,
  DegenerateFisher,
  Unsupported,
  Io,
};

const char* to_string(ErrorCode code);

// Single exception type for the library. Numerical failures tied to a
// particular parameter point carry its index in the theta sample.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> theta_index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> theta_index() const noexcept { return theta_index_; }

  Error with_theta_index(std::size_t index) const;

 private:
  ErrorCode code_;
  std::optional<std::size_t> theta_index_;
  std::string bare_message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::InvalidInput, message);
}

}  // namespace effdim

#endif  // EFFDIM_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace danforge {

enum class ErrorCode {
  EmptyDemand,
  SelfLoop,
  InvalidDemand,
  NoMass,
  BadBase,
  ShapeMismatch,
  NotConnected,
  BadArity,
  ItemNotInTree,
  WrongFamily,
  TooLarge,
  BadSpec,
  Parse,
  UnknownSuite,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can report it in machine-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace danforge

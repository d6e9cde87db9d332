#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace outlinekit {

enum class ErrorCode {
  EmptyOutline,
  MalformedHeading,
  BothEmpty,
  GroupTooSmall,
  LengthMismatch,
  NonFiniteInput,
  EmptySequence,
  InvalidInput,
  EmbedderUnavailable,
  JudgeUnavailable,
  NoScoreFound,
  NoSuccessfulItems,
  ConfigInvalid,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI, bindings) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace outlinekit

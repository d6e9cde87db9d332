#include "outlinekit/error.hpp"

namespace outlinekit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyOutline: return "EmptyOutline";
    case ErrorCode::MalformedHeading: return "MalformedHeading";
    case ErrorCode::BothEmpty: return "BothEmpty";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EmbedderUnavailable: return "EmbedderUnavailable";
    case ErrorCode::JudgeUnavailable: return "JudgeUnavailable";
    case ErrorCode::NoScoreFound: return "NoScoreFound";
    case ErrorCode::NoSuccessfulItems: return "NoSuccessfulItems";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace outlinekit

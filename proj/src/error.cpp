#include "extempore/error.hpp"

namespace extempore {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::validation_error: return "validation-error";
    case ErrorCode::vocabulary_error: return "vocabulary-error";
    case ErrorCode::unknown_term: return "unknown-term";
    case ErrorCode::ambiguous_term: return "ambiguous-term";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::no_results: return "no-results";
    case ErrorCode::unknown_label: return "unknown-label";
    case ErrorCode::terminal: return "terminal";
    case ErrorCode::at_start: return "at-start";
    case ErrorCode::invalid_task: return "invalid-task";
    case ErrorCode::unsatisfiable_task: return "unsatisfiable-task";
    case ErrorCode::replay_error: return "replay-error";
    case ErrorCode::empty_sequence: return "empty-sequence";
  }
  return "unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return ErrorCategory::parse;
    case ErrorCode::validation_error:
    case ErrorCode::vocabulary_error:
    case ErrorCode::invalid_task: return ErrorCategory::validation;
    default: return ErrorCategory::domain;
  }
}

nlohmann::json Error::to_json() const {
  return nlohmann::json{{"code", to_string(code_)}, {"message", what()}, {"details", details_}};
}

}  // namespace extempore

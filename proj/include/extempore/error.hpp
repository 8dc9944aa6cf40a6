#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace extempore {

/// Stable error codes. The string forms are part of the HTTP wire contract.
enum class ErrorCode {
  parse_error,
  validation_error,
  vocabulary_error,
  unknown_term,
  ambiguous_term,
  conflict,
  no_results,
  unknown_label,
  terminal,
  at_start,
  invalid_task,
  unsatisfiable_task,
  replay_error,
  empty_sequence,
};

std::string_view to_string(ErrorCode code);

/// Category used by the CLI to pick an exit status.
enum class ErrorCategory { parse, validation, domain };

ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

}  // namespace extempore

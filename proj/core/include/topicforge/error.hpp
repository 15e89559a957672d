#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topicforge {

enum class ErrorCode {
  DuplicateLabel,
  InvalidLabel,
  DimensionMismatch,
  NonFiniteEntry,
  UnknownLabel,
  LabelMismatch,
  DivisionByZero,
  NotAPermutation,
  NegativeInput,
  RankTooLarge,
  InvalidConfig,
  ZeroColumn,
  DuplicateDocumentId,
  EmptyCorpus,
  EmptySelection,
  UnknownTopic,
  UnknownDocument,
  KOutOfRange,
  DuplicateName,
  NotFound,
  Io,
  Parse,
};

/// Stable CamelCase name, used verbatim in JSON error payloads.
std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace topicforge

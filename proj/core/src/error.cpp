#include "topicforge/error.hpp"

namespace topicforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::DuplicateDocumentId: return "DuplicateDocumentId";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::UnknownTopic: return "UnknownTopic";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace topicforge

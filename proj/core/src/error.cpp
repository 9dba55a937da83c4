#include "mexcode/error.hpp"

namespace mexcode {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownCharacter: return "UnknownCharacter";
    case ErrorKind::MalformedNumber: return "MalformedNumber";
    case ErrorKind::UnexpectedToken: return "UnexpectedToken";
    case ErrorKind::UnbalancedParens: return "UnbalancedParens";
    case ErrorKind::EmptyExpression: return "EmptyExpression";
    case ErrorKind::AmbiguousOrdering: return "AmbiguousOrdering";
    case ErrorKind::MalformedCode: return "MalformedCode";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::EntryParseError: return "EntryParseError";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::MalformedIndex: return "MalformedIndex";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& message,
                           std::optional<std::size_t> position) {
  std::string out(to_string(kind));
  if (position) out += " at " + std::to_string(*position);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(format_message(kind, message, position)),
      kind_(kind),
      position_(position) {}

}  // namespace mexcode

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mexcode {

enum class ErrorKind {
  // parser
  UnknownCharacter,
  MalformedNumber,
  UnexpectedToken,
  UnbalancedParens,
  EmptyExpression,
  // canonical / encode
  AmbiguousOrdering,
  MalformedCode,
  InvalidConfig,
  // oracle
  TooLarge,
  // index
  DuplicateId,
  EntryParseError,
  ConfigMismatch,
  MalformedIndex,
  Io,
};

std::string_view to_string(ErrorKind kind);

// All domain failures surface as this exception. `position` is a 0-based
// character offset into the source text for parser errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace mexcode

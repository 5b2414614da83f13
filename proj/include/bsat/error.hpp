#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bsat {

enum class ErrorKind {
  SyntaxError,
  ArityMismatch,
  ReservedByte,
  NameClash,
  UnmappedFreeVariable,
  NotQuantifierFree,
  NotInFragment,
  ExplosionGuard,
  UnassignedVariable,
  TooManyVariables,
  UndeclaredSymbol,
  UnassignedFreeVariable,
  EnumerationGuard,
  PaddingOverflow,
  MalformedPadding,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure surfaced by the library. `stage` is filled in by the
/// pipeline runner so a caller can tell which step rejected the input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(message), kind_(kind), offset_(offset) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Byte offset into the source text, for parse errors.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> offset_;
  std::string stage_;
};

}  // namespace bsat

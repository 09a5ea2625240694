#pragma once

#include <stdexcept>
#include <string>

namespace conical {

/// Failure categories surfaced to callers. Distinct kinds let the CLI and
/// tests tell apart e.g. a missing lexicon from a malformed one.
enum class ErrorKind {
  invalid_argument,
  empty_corpus,
  dimension_mismatch,
  degenerate_document,
  file_not_found,
  malformed_line,
  non_numeric_count,
  empty_file,
  invalid_utf8,
  unsupported_version,
  convergence,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace conical

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace docforge {

enum class ErrorCode {
  // document model
  UnresolvableParent,
  LabelPlacementViolation,
  SchemaVersionMismatch,
  MalformedPayload,
  DanglingRef,
  // pdf backend
  NotAPdf,
  EncryptedPdf,
  CorruptXref,
  UnsupportedFilter,
  // markup backends
  UndecodableInput,
  // layout sidecar
  SidecarMissing,
  SidecarSchemaError,
  PageMismatch,
  // pipeline / cli
  UnsupportedFormat,
  // bench harness
  EmptyCorpus,
};

std::string_view to_string(ErrorCode code);

/// Exception type carrying a stable error code alongside the message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace docforge

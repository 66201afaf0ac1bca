#include "docforge/errors.hpp"

namespace docforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnresolvableParent: return "unresolvable parent";
    case ErrorCode::LabelPlacementViolation: return "label placement violation";
    case ErrorCode::SchemaVersionMismatch: return "schema version mismatch";
    case ErrorCode::MalformedPayload: return "malformed payload";
    case ErrorCode::DanglingRef: return "dangling ref";
    case ErrorCode::NotAPdf: return "not a pdf";
    case ErrorCode::EncryptedPdf: return "encrypted pdf";
    case ErrorCode::CorruptXref: return "corrupt xref";
    case ErrorCode::UnsupportedFilter: return "unsupported filter";
    case ErrorCode::UndecodableInput: return "undecodable input";
    case ErrorCode::SidecarMissing: return "sidecar missing";
    case ErrorCode::SidecarSchemaError: return "sidecar schema error";
    case ErrorCode::PageMismatch: return "page mismatch";
    case ErrorCode::UnsupportedFormat: return "unsupported format";
    case ErrorCode::EmptyCorpus: return "empty corpus";
  }
  return "unknown error";
}

}  // namespace docforge

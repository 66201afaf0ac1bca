#pragma once

#include <string>
#include <string_view>

#include "docforge/document.hpp"

namespace docforge {

inline constexpr std::string_view kSchemaVersion = "1.0";

/// Lossless, deterministic serialization: equal documents produce
/// byte-identical output. Schema is documented in docs/schema.md.
std::string to_json(const DoclingDocument& doc);

/// Throws Error(SchemaVersionMismatch | MalformedPayload | DanglingRef).
DoclingDocument from_json(std::string_view payload);

}  // namespace docforge

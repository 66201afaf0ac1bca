#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "docforge/pdf/objects.hpp"

namespace docforge::pdf {

std::vector<std::uint8_t> flate_decode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> flate_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> ascii_hex_decode(std::span<const std::uint8_t> data);

/// Reverses PNG (10..15) and TIFF (2) predictors; predictor 1 is a no-op.
std::vector<std::uint8_t> undo_predictor(std::span<const std::uint8_t> data, int predictor,
                                         int colors, int bits_per_component, int columns);

/// Applies the stream's /Filter chain (FlateDecode, ASCIIHexDecode) honoring
/// /DecodeParms. Throws ParseFailure for corrupt data and Error-worthy
/// unsupported filters (callers decide whether that is fatal).
class UnsupportedFilterFailure : public ParseFailure {
public:
  using ParseFailure::ParseFailure;
};

std::vector<std::uint8_t> decode_stream_data(const PdfDict& dict,
                                             std::span<const std::uint8_t> raw);

}  // namespace docforge::pdf

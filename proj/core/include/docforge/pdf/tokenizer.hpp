#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "docforge/pdf/objects.hpp"

namespace docforge::pdf {

bool is_pdf_whitespace(std::uint8_t c);
bool is_pdf_delimiter(std::uint8_t c);

/// Recursive-descent scanner over raw PDF bytes. Parses direct objects;
/// indirect-object and stream framing is handled by DocumentReader.
class Tokenizer {
public:
  explicit Tokenizer(std::span<const std::uint8_t> data, std::size_t pos = 0)
      : data_(data), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }
  bool eof() const { return pos_ >= data_.size(); }

  /// Skips whitespace and %-comments.
  void skip_space();

  /// Parses one object: number, ref (`n g R` with backtracking), string,
  /// name, array, dict, true/false/null. Throws ParseFailure on anything else.
  PdfObject parse_object(int depth = 0);

  /// Reads a bare keyword token ([a-zA-Z'"*]+); empty when next is not one.
  std::string peek_keyword();
  bool accept_keyword(std::string_view kw);

  std::optional<std::int64_t> accept_int();

  /// Consumes bytes to end of line (for xref table entries).
  std::string read_line();

  std::span<const std::uint8_t> data() const { return data_; }

private:
  PdfObject parse_number_or_ref();
  std::string parse_literal_string();
  std::string parse_hex_string();
  PdfName parse_name();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace docforge::pdf

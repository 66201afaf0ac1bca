#include "docforge/pdf/tokenizer.hpp"

#include <cctype>
#include <charconv>

namespace docforge::pdf {

namespace {
constexpr int kMaxNesting = 256;

int hex_value(std::uint8_t c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

bool is_pdf_whitespace(std::uint8_t c) {
  return c == 0x00 || c == 0x09 || c == 0x0A || c == 0x0C || c == 0x0D || c == 0x20;
}

bool is_pdf_delimiter(std::uint8_t c) {
  switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
      return true;
    default:
      return false;
  }
}

const PdfObject& dict_get(const PdfDict& dict, const std::string& key) {
  static const PdfObject kNull;
  auto it = dict.find(key);
  return it == dict.end() ? kNull : it->second;
}

bool dict_has(const PdfDict& dict, const std::string& key) { return dict.contains(key); }

void Tokenizer::skip_space() {
  while (pos_ < data_.size()) {
    std::uint8_t c = data_[pos_];
    if (is_pdf_whitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
    } else {
      break;
    }
  }
}

std::string Tokenizer::peek_keyword() {
  const std::size_t saved = pos_;
  skip_space();
  std::string word;
  while (pos_ < data_.size()) {
    std::uint8_t c = data_[pos_];
    if (is_pdf_whitespace(c) || is_pdf_delimiter(c)) break;
    word.push_back(static_cast<char>(c));
    ++pos_;
  }
  pos_ = saved;
  return word;
}

bool Tokenizer::accept_keyword(std::string_view kw) {
  const std::size_t saved = pos_;
  skip_space();
  for (char expected : kw) {
    if (pos_ >= data_.size() || data_[pos_] != static_cast<std::uint8_t>(expected)) {
      pos_ = saved;
      return false;
    }
    ++pos_;
  }
  if (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) && !is_pdf_delimiter(data_[pos_])) {
    pos_ = saved;  // keyword continues, e.g. "true" vs "truex"
    return false;
  }
  return true;
}

std::optional<std::int64_t> Tokenizer::accept_int() {
  const std::size_t saved = pos_;
  skip_space();
  std::size_t start = pos_;
  if (pos_ < data_.size() && (data_[pos_] == '+' || data_[pos_] == '-')) ++pos_;
  std::size_t digits = pos_;
  while (pos_ < data_.size() && std::isdigit(data_[pos_])) ++pos_;
  if (pos_ == digits) {
    pos_ = saved;
    return std::nullopt;
  }
  std::int64_t out = 0;
  const char* first = reinterpret_cast<const char*>(data_.data()) + start;
  const char* last = reinterpret_cast<const char*>(data_.data()) + pos_;
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || p != last) {
    pos_ = saved;
    return std::nullopt;
  }
  return out;
}

std::string Tokenizer::read_line() {
  std::string line;
  while (pos_ < data_.size() && data_[pos_] != '\r' && data_[pos_] != '\n')
    line.push_back(static_cast<char>(data_[pos_++]));
  if (pos_ < data_.size() && data_[pos_] == '\r') ++pos_;
  if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
  return line;
}

PdfObject Tokenizer::parse_object(int depth) {
  if (depth > kMaxNesting) throw ParseFailure("object nesting too deep");
  skip_space();
  if (pos_ >= data_.size()) throw ParseFailure("unexpected end of data");

  const std::uint8_t c = data_[pos_];
  if (c == '/') return PdfObject(parse_name());
  if (c == '(') return PdfObject(parse_literal_string());
  if (c == '[') {
    ++pos_;
    PdfArray items;
    while (true) {
      skip_space();
      if (pos_ >= data_.size()) throw ParseFailure("unterminated array");
      if (data_[pos_] == ']') {
        ++pos_;
        break;
      }
      items.push_back(parse_object(depth + 1));
    }
    return PdfObject(std::move(items));
  }
  if (c == '<') {
    if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
      pos_ += 2;
      PdfDict dict;
      while (true) {
        skip_space();
        if (pos_ >= data_.size()) throw ParseFailure("unterminated dictionary");
        if (data_[pos_] == '>') {
          if (pos_ + 1 >= data_.size() || data_[pos_ + 1] != '>')
            throw ParseFailure("malformed dictionary close");
          pos_ += 2;
          break;
        }
        if (data_[pos_] != '/') throw ParseFailure("dictionary key must be a name");
        PdfName key = parse_name();
        dict[key.value] = parse_object(depth + 1);
      }
      return PdfObject(std::move(dict));
    }
    return PdfObject(parse_hex_string());
  }
  if (c == '+' || c == '-' || c == '.' || std::isdigit(c)) return parse_number_or_ref();

  if (accept_keyword("true")) return PdfObject(true);
  if (accept_keyword("false")) return PdfObject(false);
  if (accept_keyword("null")) return PdfObject::null();

  throw ParseFailure("unexpected byte in object");
}

PdfObject Tokenizer::parse_number_or_ref() {
  std::size_t start = pos_;
  bool is_real = false;
  if (pos_ < data_.size() && (data_[pos_] == '+' || data_[pos_] == '-')) ++pos_;
  while (pos_ < data_.size() && (std::isdigit(data_[pos_]) || data_[pos_] == '.')) {
    if (data_[pos_] == '.') is_real = true;
    ++pos_;
  }
  std::string token(reinterpret_cast<const char*>(data_.data()) + start, pos_ - start);
  if (token.empty() || token == "+" || token == "-" || token == ".")
    throw ParseFailure("malformed number");

  if (!is_real) {
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc()) throw ParseFailure("malformed integer");

    // `num gen R` lookahead.
    if (value >= 0) {
      const std::size_t saved = pos_;
      auto gen = accept_int();
      if (gen && *gen >= 0 && accept_keyword("R"))
        return PdfObject(PdfRef{static_cast<int>(value), static_cast<int>(*gen)});
      pos_ = saved;
    }
    return PdfObject(value);
  }

  // Reals like "4.", "-.002".
  double value = 0.0;
  try {
    value = std::stod(token);
  } catch (const std::exception&) {
    throw ParseFailure("malformed real");
  }
  return PdfObject(value);
}

std::string Tokenizer::parse_literal_string() {
  ++pos_;  // consume '('
  std::string out;
  int depth = 1;
  while (pos_ < data_.size()) {
    std::uint8_t c = data_[pos_++];
    if (c == '\\') {
      if (pos_ >= data_.size()) break;
      std::uint8_t e = data_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '(': out.push_back('('); break;
        case ')': out.push_back(')'); break;
        case '\\': out.push_back('\\'); break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;  // line continuation
        case '\n':
          break;
        default:
          if (e >= '0' && e <= '7') {
            int code = e - '0';
            for (int i = 0; i < 2 && pos_ < data_.size() && data_[pos_] >= '0' &&
                            data_[pos_] <= '7';
                 ++i)
              code = code * 8 + (data_[pos_++] - '0');
            out.push_back(static_cast<char>(code & 0xFF));
          } else {
            out.push_back(static_cast<char>(e));  // unknown escape: drop backslash
          }
      }
    } else if (c == '(') {
      ++depth;
      out.push_back('(');
    } else if (c == ')') {
      if (--depth == 0) return out;
      out.push_back(')');
    } else if (c == '\r') {
      // EOL inside a literal string is read as LF.
      if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
      out.push_back('\n');
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  throw ParseFailure("unterminated literal string");
}

std::string Tokenizer::parse_hex_string() {
  ++pos_;  // consume '<'
  std::string out;
  int hi = -1;
  while (pos_ < data_.size()) {
    std::uint8_t c = data_[pos_++];
    if (c == '>') {
      if (hi >= 0) out.push_back(static_cast<char>(hi << 4));  // odd count: pad 0
      return out;
    }
    if (is_pdf_whitespace(c)) continue;
    int v = hex_value(c);
    if (v < 0) throw ParseFailure("invalid hex digit in string");
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<char>((hi << 4) | v));
      hi = -1;
    }
  }
  throw ParseFailure("unterminated hex string");
}

PdfName Tokenizer::parse_name() {
  ++pos_;  // consume '/'
  std::string out;
  while (pos_ < data_.size()) {
    std::uint8_t c = data_[pos_];
    if (is_pdf_whitespace(c) || is_pdf_delimiter(c)) break;
    ++pos_;
    if (c == '#' && pos_ + 1 < data_.size()) {
      int hi = hex_value(data_[pos_]);
      int lo = hex_value(data_[pos_ + 1]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>((hi << 4) | lo));
        pos_ += 2;
        continue;
      }
    }
    out.push_back(static_cast<char>(c));
  }
  return PdfName{std::move(out)};
}

}  // namespace docforge::pdf

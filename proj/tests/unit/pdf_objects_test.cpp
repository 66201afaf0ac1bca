#include <doctest.h>

#include <string>

#include "docforge/pdf/filters.hpp"
#include "docforge/pdf/objects.hpp"
#include "docforge/pdf/tokenizer.hpp"

using namespace docforge::pdf;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

PdfObject parse(const std::string& s) {
  auto data = bytes_of(s);
  Tokenizer tok(data);
  return tok.parse_object();
}

}  // namespace

TEST_CASE("numbers, booleans, null") {
  CHECK(parse("42").as_int() == 42);
  CHECK(parse("-17").as_int() == -17);
  CHECK(parse("3.14").as_double() == doctest::Approx(3.14));
  CHECK(parse("-.002").as_double() == doctest::Approx(-0.002));
  CHECK(parse("4.").as_double() == doctest::Approx(4.0));
  CHECK(parse("true").as_bool());
  CHECK_FALSE(parse("false").as_bool());
  CHECK(parse("null").is_null());
}

TEST_CASE("references need the full `n g R` form") {
  auto ref = parse("12 0 R");
  REQUIRE(ref.is_ref());
  CHECK(ref.ref().num == 12);

  // Lookahead must backtrack when R does not follow.
  auto data = bytes_of("12 13 14");
  Tokenizer tok(data);
  CHECK(tok.parse_object().as_int() == 12);
  CHECK(tok.parse_object().as_int() == 13);
  CHECK(tok.parse_object().as_int() == 14);
}

TEST_CASE("literal strings with escapes") {
  CHECK(parse("(hello)").string_bytes() == "hello");
  CHECK(parse("(a\\(b\\))").string_bytes() == "a(b)");
  CHECK(parse("(nested (parens) ok)").string_bytes() == "nested (parens) ok");
  CHECK(parse("(\\101\\102)").string_bytes() == "AB");
  CHECK(parse("(tab\\there)").string_bytes() == "tab\there");
  CHECK(parse("(line\\\ncontinued)").string_bytes() == "linecontinued");
}

TEST_CASE("hex strings") {
  CHECK(parse("<48656C6C6F>").string_bytes() == "Hello");
  CHECK(parse("<48 65 6C>").string_bytes() == "Hel");
  CHECK(parse("<484>").string_bytes() == std::string("H\x40"));  // odd digit pads 0
}

TEST_CASE("names with hash escapes") {
  CHECK(parse("/Name").name() == "Name");
  CHECK(parse("/A#20B").name() == "A B");
  CHECK(parse("/Adobe#23Green").name() == "Adobe#Green");
}

TEST_CASE("arrays and dicts") {
  auto arr = parse("[1 (two) /three [4]]");
  REQUIRE(arr.is_array());
  CHECK(arr.array().size() == 4);

  auto dict = parse("<< /A 1 /B << /C (x) >> /D 2 0 R >>");
  REQUIRE(dict.is_dict());
  CHECK(dict_get(dict.dict(), "A").as_int() == 1);
  CHECK(dict_get(dict.dict(), "B").dict().size() == 1);
  CHECK(dict_get(dict.dict(), "D").is_ref());
  CHECK(dict_get(dict.dict(), "Missing").is_null());
}

TEST_CASE("comments are whitespace") {
  CHECK(parse("% a comment\n42").as_int() == 42);
}

TEST_CASE("flate round trip") {
  std::string payload = "stream payload stream payload stream payload";
  auto enc = flate_encode(bytes_of(payload));
  auto dec = flate_decode(enc);
  CHECK(std::string(dec.begin(), dec.end()) == payload);
  CHECK_THROWS_AS(flate_decode(bytes_of("not a flate stream")), ParseFailure);
}

TEST_CASE("ascii hex decode") {
  auto dec = ascii_hex_decode(bytes_of("48 65 6c 6C 6f>"));
  CHECK(std::string(dec.begin(), dec.end()) == "Hello");
}

TEST_CASE("png predictor reversal") {
  // Row length 3, two rows, Up filter.
  std::vector<std::uint8_t> raw = {10, 20, 30, 11, 22, 33};
  std::vector<std::uint8_t> filtered = {2, 10, 20, 30, 2, 1, 2, 3};
  auto out = undo_predictor(filtered, 12, 1, 8, 3);
  CHECK(out == raw);
}

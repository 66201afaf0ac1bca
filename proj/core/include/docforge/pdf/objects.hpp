#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace docforge::pdf {

/// Internal failure while decoding PDF structures. Callers at module
/// boundaries convert these into warnings or docforge::Error codes.
class ParseFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PdfName {
  std::string value;
  bool operator==(const PdfName&) const = default;
  auto operator<=>(const PdfName&) const = default;
};

struct PdfRef {
  int num = 0;
  int gen = 0;
  bool operator==(const PdfRef&) const = default;
  auto operator<=>(const PdfRef&) const = default;
};

class PdfObject;
using PdfArray = std::vector<PdfObject>;
using PdfDict = std::map<std::string, PdfObject>;  // keys stored without '/'

struct PdfStream {
  PdfDict dict;
  std::vector<std::uint8_t> raw;  // as stored in the file, filters not applied
};

class PdfObject {
public:
  using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string,
                             PdfName, PdfArray, PdfDict, PdfRef, std::shared_ptr<PdfStream>>;

  PdfObject() = default;
  PdfObject(Value v) : value_(std::move(v)) {}

  static PdfObject null() { return PdfObject(); }

  bool is_null() const { return std::holds_alternative<std::monostate>(value_); }
  bool is_bool() const { return std::holds_alternative<bool>(value_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_real() const { return std::holds_alternative<double>(value_); }
  bool is_number() const { return is_int() || is_real(); }
  bool is_string() const { return std::holds_alternative<std::string>(value_); }
  bool is_name() const { return std::holds_alternative<PdfName>(value_); }
  bool is_array() const { return std::holds_alternative<PdfArray>(value_); }
  bool is_dict() const { return std::holds_alternative<PdfDict>(value_); }
  bool is_ref() const { return std::holds_alternative<PdfRef>(value_); }
  bool is_stream() const { return std::holds_alternative<std::shared_ptr<PdfStream>>(value_); }

  bool as_bool() const { return get<bool>("bool"); }
  std::int64_t as_int() const {
    if (is_real()) return static_cast<std::int64_t>(std::get<double>(value_));
    return get<std::int64_t>("integer");
  }
  double as_double() const {
    if (is_int()) return static_cast<double>(std::get<std::int64_t>(value_));
    return get<double>("number");
  }
  const std::string& string_bytes() const { return get<std::string>("string"); }
  const std::string& name() const { return get<PdfName>("name").value; }
  const PdfArray& array() const { return get<PdfArray>("array"); }
  PdfArray& array() { return const_cast<PdfArray&>(get<PdfArray>("array")); }
  const PdfDict& dict() const {
    if (is_stream()) return stream().dict;
    return get<PdfDict>("dict");
  }
  PdfRef ref() const { return get<PdfRef>("ref"); }
  const PdfStream& stream() const {
    auto& p = get<std::shared_ptr<PdfStream>>("stream");
    if (!p) throw ParseFailure("null stream");
    return *p;
  }

  const Value& value() const { return value_; }

private:
  template <typename T>
  const T& get(const char* what) const {
    if (const T* v = std::get_if<T>(&value_)) return *v;
    throw ParseFailure(std::string("pdf object is not a ") + what);
  }

  Value value_;
};

/// Convenience lookups; return null object when the key is absent.
const PdfObject& dict_get(const PdfDict& dict, const std::string& key);
bool dict_has(const PdfDict& dict, const std::string& key);

}  // namespace docforge::pdf

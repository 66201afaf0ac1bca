#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "docforge/pdf/objects.hpp"

namespace docforge::pdf {

/// One resolved page with inherited attributes applied.
struct PageInfo {
  PdfDict dict;
  PdfObject resources;   // dict or null
  double media_box[4] = {0, 0, 612, 792};  // llx, lly, urx, ury
  int rotate = 0;        // normalized to 0/90/180/270
};

/// Decodes the object graph of a PDF file: classic xref tables, xref
/// streams, object streams, and the Flate/ASCIIHex filters. Objects are
/// parsed lazily and cached.
///
/// Throws docforge::Error with NotAPdf / EncryptedPdf / CorruptXref.
class DocumentReader {
public:
  static DocumentReader open(std::span<const std::uint8_t> bytes);

  const PdfDict& trailer() const { return trailer_; }

  /// Object by reference; null object when absent. Generation numbers are
  /// not checked strictly (lenient, like common readers).
  const PdfObject& get(PdfRef ref);

  /// Follows reference chains to a direct object.
  const PdfObject& resolve(const PdfObject& obj);

  /// Decoded stream contents (resolves the object first when given a ref).
  std::vector<std::uint8_t> decoded_stream(const PdfObject& obj);

  /// Pages in document order with inherited Resources/MediaBox/Rotate.
  std::vector<PageInfo> pages();

  std::vector<std::string>& warnings() { return warnings_; }
  std::size_t object_count() const { return entries_.size(); }

private:
  struct Entry {
    enum class Kind { Free, Offset, InStream } kind = Kind::Free;
    std::uint64_t offset = 0;  // byte offset, or containing object-stream number
    int index_in_stream = 0;
  };

  DocumentReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void load_xref_chain(std::uint64_t start_offset);
  bool load_xref_section(std::uint64_t offset, std::set<std::uint64_t>& visited);
  PdfDict parse_classic_xref(std::size_t pos, std::map<int, Entry>& section);
  void load_xref_stream_at(std::size_t pos);
  void apply_xref_stream(const PdfObject& stream_obj);
  void merge_trailer(const PdfDict& dict);
  void reconstruct_by_scan();

  PdfObject parse_indirect_at(std::uint64_t offset, int expected_num);
  const PdfObject& load_from_object_stream(const Entry& entry, int num);
  void warn(std::string message);

  std::span<const std::uint8_t> bytes_;
  std::map<int, Entry> entries_;
  PdfDict trailer_;
  std::map<int, PdfObject> cache_;
  std::map<int, std::map<int, PdfObject>> objstm_cache_;
  std::set<int> in_flight_;
  std::vector<std::string> warnings_;
};

}  // namespace docforge::pdf

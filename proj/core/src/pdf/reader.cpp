#include "docforge/pdf/reader.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>

#include "docforge/errors.hpp"
#include "docforge/pdf/filters.hpp"
#include "docforge/pdf/tokenizer.hpp"

namespace docforge::pdf {

namespace {

constexpr std::size_t kHeaderScanWindow = 1024;
constexpr std::size_t kTailScanWindow = 2048;
constexpr int kMaxResolveDepth = 32;
constexpr int kMaxPageTreeDepth = 64;
constexpr std::size_t kMaxPages = 10000;

std::optional<std::size_t> find_header(std::span<const std::uint8_t> bytes) {
  static constexpr char kMagic[] = "%PDF-";
  const std::size_t window = std::min(bytes.size(), kHeaderScanWindow);
  for (std::size_t i = 0; i + 5 <= window; ++i) {
    if (std::memcmp(bytes.data() + i, kMagic, 5) == 0) return i;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> find_startxref(std::span<const std::uint8_t> bytes) {
  static constexpr char kKey[] = "startxref";
  const std::size_t window = std::min(bytes.size(), kTailScanWindow);
  const std::size_t base = bytes.size() - window;
  for (std::size_t i = window; i-- > 9;) {
    if (std::memcmp(bytes.data() + base + i - 9, kKey, 9) == 0) {
      Tokenizer tok(bytes, base + i);
      if (auto v = tok.accept_int(); v && *v >= 0) return static_cast<std::uint64_t>(*v);
    }
  }
  return std::nullopt;
}

}  // namespace

void DocumentReader::warn(std::string message) { warnings_.push_back(std::move(message)); }

DocumentReader DocumentReader::open(std::span<const std::uint8_t> bytes) {
  auto header = find_header(bytes);
  if (!header) throw Error(ErrorCode::NotAPdf, "missing %PDF- header in first 1024 bytes");

  DocumentReader reader(bytes);

  auto start = find_startxref(bytes);
  bool loaded = false;
  if (start) {
    try {
      reader.load_xref_chain(*start);
      loaded = !reader.entries_.empty();
    } catch (const ParseFailure& e) {
      reader.warn(std::string("xref chain unusable: ") + e.what());
      loaded = false;
    }
  } else {
    reader.warn("startxref not found");
  }

  if (!loaded) {
    // Lenient fallback: one reconstruction pass over the raw bytes.
    reader.entries_.clear();
    reader.trailer_.clear();
    reader.reconstruct_by_scan();
    if (reader.entries_.empty() || !dict_has(reader.trailer_, "Root"))
      throw Error(ErrorCode::CorruptXref, "xref tables unusable and scan found no objects");
    reader.warn("cross-reference data reconstructed by scanning for objects");
  }

  if (dict_has(reader.trailer_, "Encrypt"))
    throw Error(ErrorCode::EncryptedPdf, "encrypted documents are not supported");

  return reader;
}

void DocumentReader::load_xref_chain(std::uint64_t start_offset) {
  std::set<std::uint64_t> visited;
  std::uint64_t offset = start_offset;
  while (true) {
    if (visited.contains(offset)) {
      warn("xref /Prev chain loops; stopping");
      break;
    }
    visited.insert(offset);
    if (!load_xref_section(offset, visited)) break;

    const PdfObject& prev = dict_get(trailer_, "Prev");
    // Each section consumes its own Prev key so the chain can advance.
    if (!prev.is_number()) break;
    offset = static_cast<std::uint64_t>(prev.as_int());
    trailer_.erase("Prev");
  }
  trailer_.erase("Prev");
}

bool DocumentReader::load_xref_section(std::uint64_t offset, std::set<std::uint64_t>& visited) {
  if (offset >= bytes_.size()) throw ParseFailure("xref offset past end of file");
  Tokenizer tok(bytes_, offset);
  if (tok.accept_keyword("xref")) {
    std::map<int, Entry> section;
    PdfDict section_trailer = parse_classic_xref(tok.pos(), section);

    // Hybrid files carry an /XRefStm pointing at a parallel xref stream whose
    // entries take precedence over the classic section (which marks objects
    // living in object streams as free).
    const PdfObject& hybrid = dict_get(section_trailer, "XRefStm");
    if (hybrid.is_number()) {
      std::uint64_t at = static_cast<std::uint64_t>(hybrid.as_int());
      if (!visited.contains(at)) {
        visited.insert(at);
        const PdfObject classic_prev = dict_get(section_trailer, "Prev");
        try {
          load_xref_stream_at(at);
        } catch (const ParseFailure& e) {
          warn(std::string("hybrid xref stream unusable: ") + e.what());
        }
        // The classic section, not the auxiliary stream, owns the chain.
        if (classic_prev.is_null()) trailer_.erase("Prev");
        else trailer_["Prev"] = classic_prev;
      }
      section_trailer.erase("XRefStm");
    }

    for (const auto& [num, entry] : section) entries_.emplace(num, entry);
    merge_trailer(section_trailer);
    return true;
  }
  load_xref_stream_at(offset);
  return true;
}

PdfDict DocumentReader::parse_classic_xref(std::size_t pos, std::map<int, Entry>& section) {
  Tokenizer tok(bytes_, pos);

  // Free entries are recorded too so deleted objects are not resurrected
  // from older sections.
  while (true) {
    if (tok.accept_keyword("trailer")) break;
    auto start = tok.accept_int();
    if (!start) throw ParseFailure("malformed xref subsection header");
    auto count = tok.accept_int();
    if (!count || *count < 0) throw ParseFailure("malformed xref subsection count");
    tok.skip_space();
    for (std::int64_t i = 0; i < *count; ++i) {
      // 20-byte entries: 10-digit offset, 5-digit gen, f|n.
      auto off = tok.accept_int();
      auto gen = tok.accept_int();
      tok.skip_space();
      if (!off || !gen || tok.eof()) throw ParseFailure("malformed xref entry");
      char type = static_cast<char>(tok.data()[tok.pos()]);
      tok.seek(tok.pos() + 1);
      if (type != 'n' && type != 'f') throw ParseFailure("malformed xref entry type");
      const int num = static_cast<int>(*start + i);
      Entry e;
      e.kind = type == 'n' ? Entry::Kind::Offset : Entry::Kind::Free;
      e.offset = static_cast<std::uint64_t>(*off);
      section.emplace(num, e);
    }
  }

  PdfObject trailer_obj = tok.parse_object();
  if (!trailer_obj.is_dict()) throw ParseFailure("trailer is not a dictionary");
  return trailer_obj.dict();
}

void DocumentReader::load_xref_stream_at(std::size_t pos) {
  Tokenizer tok(bytes_, pos);
  auto num = tok.accept_int();
  auto gen = tok.accept_int();
  if (!num || !gen || !tok.accept_keyword("obj"))
    throw ParseFailure("xref stream object header not found");
  PdfObject obj = parse_indirect_at(pos, static_cast<int>(*num));
  if (!obj.is_stream()) throw ParseFailure("xref stream object is not a stream");
  apply_xref_stream(obj);
}

void DocumentReader::apply_xref_stream(const PdfObject& stream_obj) {
  const PdfStream& stream = stream_obj.stream();
  const PdfDict& dict = stream.dict;

  const PdfObject& w_obj = dict_get(dict, "W");
  if (!w_obj.is_array() || w_obj.array().size() < 3)
    throw ParseFailure("xref stream missing /W");
  int w[3];
  for (int i = 0; i < 3; ++i) {
    if (!w_obj.array()[i].is_number()) throw ParseFailure("bad /W entry");
    w[i] = static_cast<int>(w_obj.array()[i].as_int());
    if (w[i] < 0 || w[i] > 8) throw ParseFailure("bad /W width");
  }

  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  const PdfObject& index = dict_get(dict, "Index");
  if (index.is_array()) {
    const PdfArray& arr = index.array();
    for (std::size_t i = 0; i + 1 < arr.size(); i += 2)
      ranges.emplace_back(arr[i].as_int(), arr[i + 1].as_int());
  } else {
    const PdfObject& size = dict_get(dict, "Size");
    if (!size.is_number()) throw ParseFailure("xref stream missing /Size");
    ranges.emplace_back(0, size.as_int());
  }

  std::vector<std::uint8_t> data = decode_stream_data(dict, stream.raw);
  const std::size_t row = static_cast<std::size_t>(w[0]) + w[1] + w[2];
  if (row == 0) throw ParseFailure("zero-width xref stream rows");

  std::size_t at = 0;
  auto read_field = [&](int width, std::uint64_t fallback) -> std::uint64_t {
    if (width == 0) return fallback;
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 8) | data[at++];
    return v;
  };

  for (auto [start, count] : ranges) {
    for (std::int64_t i = 0; i < count; ++i) {
      if (at + row > data.size()) {
        warn("xref stream data shorter than /Index declares");
        break;
      }
      const std::uint64_t type = read_field(w[0], 1);
      const std::uint64_t f2 = read_field(w[1], 0);
      const std::uint64_t f3 = read_field(w[2], 0);
      const int num = static_cast<int>(start + i);
      Entry e;
      if (type == 0) {
        e.kind = Entry::Kind::Free;
      } else if (type == 1) {
        e.kind = Entry::Kind::Offset;
        e.offset = f2;
      } else if (type == 2) {
        e.kind = Entry::Kind::InStream;
        e.offset = f2;
        e.index_in_stream = static_cast<int>(f3);
      } else {
        continue;  // unknown types are treated as null per spec
      }
      entries_.emplace(num, e);
    }
  }

  merge_trailer(dict);
}

void DocumentReader::merge_trailer(const PdfDict& dict) {
  for (const auto& [key, value] : dict) {
    if (key == "Prev" || key == "XRefStm") {
      trailer_[key] = value;  // chain bookkeeping: newest section drives
    } else {
      trailer_.emplace(key, value);  // newest-first: keep the first one seen
    }
  }
}

void DocumentReader::reconstruct_by_scan() {
  // Linear scan for `N G obj`; the last occurrence of each object number in
  // file order wins (later bodies belong to newer incremental updates).
  const std::uint8_t* data = bytes_.data();
  const std::size_t n = bytes_.size();
  for (std::size_t i = 0; i + 3 <= n; ++i) {
    if (data[i] != 'o' || data[i + 1] != 'b' || data[i + 2] != 'j') continue;
    if (i + 3 < n && !is_pdf_whitespace(data[i + 3]) && !is_pdf_delimiter(data[i + 3])) continue;

    // Walk backwards over: whitespace, generation digits, whitespace, number digits.
    std::size_t p = i;
    auto skip_ws_back = [&](std::size_t q) {
      while (q > 0 && is_pdf_whitespace(data[q - 1])) --q;
      return q;
    };
    auto skip_digits_back = [&](std::size_t q) {
      while (q > 0 && std::isdigit(data[q - 1])) --q;
      return q;
    };
    p = skip_ws_back(p);
    std::size_t gen_end = p;
    p = skip_digits_back(p);
    std::size_t gen_start = p;
    if (gen_start == gen_end) continue;
    p = skip_ws_back(p);
    std::size_t num_end = p;
    p = skip_digits_back(p);
    std::size_t num_start = p;
    if (num_start == num_end) continue;
    if (num_start > 0 && !is_pdf_whitespace(data[num_start - 1]) &&
        !is_pdf_delimiter(data[num_start - 1]))
      continue;

    int num = 0;
    for (std::size_t q = num_start; q < num_end; ++q) num = num * 10 + (data[q] - '0');

    Entry e;
    e.kind = Entry::Kind::Offset;
    e.offset = num_start;
    entries_[num] = e;  // later occurrences overwrite
  }

  // Prefer an explicit trailer dictionary; otherwise locate the catalog.
  static constexpr char kTrailer[] = "trailer";
  for (std::size_t i = n; i >= 7; --i) {
    if (std::memcmp(data + i - 7, kTrailer, 7) != 0) continue;
    try {
      Tokenizer tok(bytes_, i);
      PdfObject obj = tok.parse_object();
      if (obj.is_dict() && dict_has(obj.dict(), "Root")) {
        merge_trailer(obj.dict());
        return;
      }
    } catch (const ParseFailure&) {
    }
    if (i == 7) break;
  }

  for (const auto& [num, entry] : entries_) {
    try {
      PdfObject obj = parse_indirect_at(entry.offset, num);
      if (obj.is_dict()) {
        const PdfObject& type = dict_get(obj.dict(), "Type");
        if (type.is_name() && type.name() == "Catalog") {
          trailer_["Root"] = PdfObject(PdfRef{num, 0});
          return;
        }
      }
    } catch (const ParseFailure&) {
    }
  }
}

PdfObject DocumentReader::parse_indirect_at(std::uint64_t offset, int expected_num) {
  if (offset >= bytes_.size()) throw ParseFailure("object offset past end of file");
  Tokenizer tok(bytes_, offset);
  auto num = tok.accept_int();
  auto gen = tok.accept_int();
  if (!num || !gen || !tok.accept_keyword("obj"))
    throw ParseFailure("expected `num gen obj` header");
  if (*num != expected_num)
    warn("object number mismatch at offset (expected " + std::to_string(expected_num) +
         ", found " + std::to_string(*num) + ")");

  PdfObject value = tok.parse_object();

  tok.skip_space();
  if (!tok.accept_keyword("stream")) return value;

  if (!value.is_dict()) throw ParseFailure("stream keyword after non-dictionary");

  // EOL after `stream`: CRLF or LF.
  std::size_t p = tok.pos();
  if (p < bytes_.size() && bytes_[p] == '\r') ++p;
  if (p < bytes_.size() && bytes_[p] == '\n') ++p;

  const PdfObject& len_obj = resolve(dict_get(value.dict(), "Length"));
  std::int64_t length = len_obj.is_number() ? len_obj.as_int() : -1;

  std::size_t data_end = 0;
  if (length >= 0 && p + static_cast<std::size_t>(length) <= bytes_.size()) {
    data_end = p + static_cast<std::size_t>(length);
    Tokenizer check(bytes_, data_end);
    if (!check.accept_keyword("endstream")) {
      length = -1;  // declared length does not line up; fall back to scanning
      warn("stream /Length inconsistent with endstream; scanning");
    }
  } else if (length >= 0) {
    length = -1;
    warn("stream /Length runs past end of file; scanning");
  }

  if (length < 0) {
    static constexpr char kEnd[] = "endstream";
    std::size_t found = std::string::npos;
    for (std::size_t i = p; i + 9 <= bytes_.size(); ++i) {
      if (std::memcmp(bytes_.data() + i, kEnd, 9) == 0) {
        found = i;
        break;
      }
    }
    if (found == std::string::npos) throw ParseFailure("unterminated stream");
    data_end = found;
    // Trim the EOL that precedes endstream.
    if (data_end > p && bytes_[data_end - 1] == '\n') --data_end;
    if (data_end > p && bytes_[data_end - 1] == '\r') --data_end;
  }

  auto stream = std::make_shared<PdfStream>();
  stream->dict = value.dict();
  stream->raw.assign(bytes_.begin() + p, bytes_.begin() + data_end);
  return PdfObject(std::move(stream));
}

const PdfObject& DocumentReader::get(PdfRef ref) {
  static const PdfObject kNull;
  if (auto it = cache_.find(ref.num); it != cache_.end()) return it->second;

  auto entry_it = entries_.find(ref.num);
  if (entry_it == entries_.end() || entry_it->second.kind == Entry::Kind::Free) return kNull;

  if (in_flight_.contains(ref.num)) {
    warn("reference cycle through object " + std::to_string(ref.num));
    return kNull;
  }
  in_flight_.insert(ref.num);

  PdfObject obj;
  try {
    const Entry& entry = entry_it->second;
    if (entry.kind == Entry::Kind::Offset) {
      obj = parse_indirect_at(entry.offset, ref.num);
    } else {
      in_flight_.erase(ref.num);
      return load_from_object_stream(entry, ref.num);
    }
  } catch (const UnsupportedFilterFailure& e) {
    warn("object " + std::to_string(ref.num) + " skipped: " + e.what());
    obj = PdfObject::null();
  } catch (const ParseFailure& e) {
    warn("object " + std::to_string(ref.num) + " unreadable: " + e.what());
    obj = PdfObject::null();
  }
  in_flight_.erase(ref.num);
  return cache_.emplace(ref.num, std::move(obj)).first->second;
}

const PdfObject& DocumentReader::load_from_object_stream(const Entry& entry, int num) {
  static const PdfObject kNull;
  const int container = static_cast<int>(entry.offset);

  auto it = objstm_cache_.find(container);
  if (it == objstm_cache_.end()) {
    std::map<int, PdfObject> parsed;
    try {
      const PdfObject& stm = get(PdfRef{container, 0});
      if (!stm.is_stream()) throw ParseFailure("object stream is not a stream");
      const PdfDict& dict = stm.stream().dict;
      const PdfObject& n_obj = dict_get(dict, "N");
      const PdfObject& first_obj = dict_get(dict, "First");
      if (!n_obj.is_number() || !first_obj.is_number())
        throw ParseFailure("object stream missing /N or /First");
      const auto n = static_cast<std::size_t>(n_obj.as_int());
      const auto first = static_cast<std::size_t>(first_obj.as_int());

      std::vector<std::uint8_t> data = decode_stream_data(dict, stm.stream().raw);
      Tokenizer header(data);
      std::vector<std::pair<int, std::size_t>> locations;
      for (std::size_t i = 0; i < n; ++i) {
        auto obj_num = header.accept_int();
        auto obj_off = header.accept_int();
        if (!obj_num || !obj_off) throw ParseFailure("object stream header truncated");
        locations.emplace_back(static_cast<int>(*obj_num),
                               first + static_cast<std::size_t>(*obj_off));
      }
      for (auto [obj_num, obj_off] : locations) {
        if (obj_off >= data.size()) throw ParseFailure("object stream offset out of range");
        Tokenizer tok(data, obj_off);
        parsed.emplace(obj_num, tok.parse_object());
      }
    } catch (const ParseFailure& e) {
      warn("object stream " + std::to_string(container) + " unusable: " + e.what());
      parsed.clear();
    }
    it = objstm_cache_.emplace(container, std::move(parsed)).first;
  }

  const auto& objects = it->second;
  auto found = objects.find(num);
  if (found == objects.end()) return kNull;
  return cache_.emplace(num, found->second).first->second;
}

const PdfObject& DocumentReader::resolve(const PdfObject& obj) {
  const PdfObject* cur = &obj;
  for (int depth = 0; depth < kMaxResolveDepth && cur->is_ref(); ++depth) cur = &get(cur->ref());
  return *cur;
}

std::vector<std::uint8_t> DocumentReader::decoded_stream(const PdfObject& obj) {
  const PdfObject& direct = resolve(obj);
  if (!direct.is_stream()) throw ParseFailure("expected a stream object");
  const PdfStream& stream = direct.stream();

  // Resolve indirect filter/parms before decoding.
  PdfDict dict = stream.dict;
  for (const char* key : {"Filter", "DecodeParms"}) {
    auto it = dict.find(key);
    if (it != dict.end() && it->second.is_ref()) it->second = resolve(it->second);
  }
  return decode_stream_data(dict, stream.raw);
}

std::vector<PageInfo> DocumentReader::pages() {
  std::vector<PageInfo> out;

  const PdfObject& root = resolve(dict_get(trailer_, "Root"));
  if (!root.is_dict()) throw Error(ErrorCode::CorruptXref, "document catalog not found");
  const PdfObject& pages_root = resolve(dict_get(root.dict(), "Pages"));
  if (!pages_root.is_dict()) throw Error(ErrorCode::CorruptXref, "page tree root not found");

  struct Inherited {
    PdfObject resources;
    std::optional<std::array<double, 4>> media_box;
    int rotate = 0;
  };

  std::set<const void*> visiting;
  auto walk = [&](auto&& self, const PdfDict& node, Inherited inherited, int depth) -> void {
    if (depth > kMaxPageTreeDepth || out.size() >= kMaxPages) return;

    const PdfObject& res = dict_get(node, "Resources");
    if (!res.is_null()) inherited.resources = resolve(res);
    const PdfObject& mb = resolve(dict_get(node, "MediaBox"));
    if (mb.is_array() && mb.array().size() == 4) {
      std::array<double, 4> box{};
      bool ok = true;
      for (int i = 0; i < 4; ++i) {
        const PdfObject& v = resolve(mb.array()[i]);
        if (!v.is_number()) ok = false;
        else box[i] = v.as_double();
      }
      if (ok) inherited.media_box = box;
    }
    const PdfObject& rot = resolve(dict_get(node, "Rotate"));
    if (rot.is_number()) inherited.rotate = static_cast<int>(rot.as_int());

    const PdfObject& type = dict_get(node, "Type");
    const bool is_leaf = type.is_name() ? type.name() == "Page" : !dict_has(node, "Kids");
    if (is_leaf) {
      PageInfo page;
      page.dict = node;
      page.resources = inherited.resources;
      if (inherited.media_box) {
        for (int i = 0; i < 4; ++i) page.media_box[i] = (*inherited.media_box)[i];
      } else {
        warn("page missing MediaBox; defaulting to Letter");
      }
      int rotate = inherited.rotate % 360;
      if (rotate < 0) rotate += 360;
      page.rotate = (rotate / 90) * 90 % 360;
      out.push_back(std::move(page));
      return;
    }

    const PdfObject& kids = resolve(dict_get(node, "Kids"));
    if (!kids.is_array()) {
      warn("page tree node without usable /Kids");
      return;
    }
    for (const PdfObject& kid : kids.array()) {
      const PdfObject& kid_node = resolve(kid);
      if (!kid_node.is_dict()) {
        warn("page tree kid is not a dictionary");
        continue;
      }
      const void* key = &kid_node;
      if (visiting.contains(key)) continue;
      visiting.insert(key);
      self(self, kid_node.dict(), inherited, depth + 1);
    }
  };

  walk(walk, pages_root.dict(), Inherited{}, 0);
  return out;
}

}  // namespace docforge::pdf

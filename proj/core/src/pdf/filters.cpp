#include "docforge/pdf/filters.hpp"

#include <zlib.h>

#include <cstring>

#include "docforge/pdf/tokenizer.hpp"

namespace docforge::pdf {

std::vector<std::uint8_t> flate_decode(std::span<const std::uint8_t> data) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw ParseFailure("inflateInit failed");

  std::vector<std::uint8_t> out;
  out.reserve(data.size() * 3 + 64);
  std::uint8_t buffer[16384];

  zs.next_in = const_cast<Bytef*>(data.data());
  zs.avail_in = static_cast<uInt>(data.size());

  int rc = Z_OK;
  do {
    zs.next_out = buffer;
    zs.avail_out = sizeof(buffer);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw ParseFailure("flate stream is corrupt");
    }
    out.insert(out.end(), buffer, buffer + (sizeof(buffer) - zs.avail_out));
  } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));

  inflateEnd(&zs);
  return out;
}

std::vector<std::uint8_t> flate_encode(std::span<const std::uint8_t> data) {
  uLongf bound = compressBound(static_cast<uLong>(data.size()));
  std::vector<std::uint8_t> out(bound);
  if (compress2(out.data(), &bound, data.data(), static_cast<uLong>(data.size()),
                Z_BEST_SPEED) != Z_OK)
    throw ParseFailure("deflate failed");
  out.resize(bound);
  return out;
}

std::vector<std::uint8_t> ascii_hex_decode(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> out;
  out.reserve(data.size() / 2);
  int hi = -1;
  for (std::uint8_t c : data) {
    if (c == '>') break;
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else if (is_pdf_whitespace(c)) continue;
    else throw ParseFailure("invalid byte in ASCIIHex data");
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<std::uint8_t>((hi << 4) | v));
      hi = -1;
    }
  }
  if (hi >= 0) out.push_back(static_cast<std::uint8_t>(hi << 4));
  return out;
}

std::vector<std::uint8_t> undo_predictor(std::span<const std::uint8_t> data, int predictor,
                                         int colors, int bits_per_component, int columns) {
  if (predictor <= 1) return {data.begin(), data.end()};

  const int bpp = std::max(1, (colors * bits_per_component + 7) / 8);
  const int row_len = (columns * colors * bits_per_component + 7) / 8;

  if (predictor == 2) {
    // TIFF predictor, 8-bit components only.
    if (bits_per_component != 8) throw ParseFailure("TIFF predictor needs 8-bit components");
    std::vector<std::uint8_t> out(data.begin(), data.end());
    for (std::size_t row = 0; row + row_len <= out.size(); row += row_len)
      for (int i = bpp; i < row_len; ++i) out[row + i] += out[row + i - bpp];
    return out;
  }

  if (predictor < 10 || predictor > 15) throw ParseFailure("unknown predictor");

  // PNG predictors: each row is prefixed with a filter-type byte.
  const std::size_t stride = static_cast<std::size_t>(row_len) + 1;
  std::vector<std::uint8_t> out;
  out.reserve(data.size());
  std::vector<std::uint8_t> prev(row_len, 0);

  for (std::size_t row_start = 0; row_start < data.size(); row_start += stride) {
    const std::uint8_t filter = data[row_start];
    const std::size_t avail = std::min<std::size_t>(row_len, data.size() - row_start - 1);
    std::vector<std::uint8_t> cur(data.begin() + row_start + 1,
                                  data.begin() + row_start + 1 + avail);
    cur.resize(row_len, 0);

    for (int i = 0; i < row_len; ++i) {
      const int left = i >= bpp ? cur[i - bpp] : 0;
      const int up = prev[i];
      const int up_left = i >= bpp ? prev[i - bpp] : 0;
      int x = cur[i];
      switch (filter) {
        case 0: break;
        case 1: x += left; break;
        case 2: x += up; break;
        case 3: x += (left + up) / 2; break;
        case 4: {
          const int p = left + up - up_left;
          const int pa = std::abs(p - left), pb = std::abs(p - up), pc = std::abs(p - up_left);
          x += (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : up_left);
          break;
        }
        default:
          throw ParseFailure("invalid PNG filter type");
      }
      cur[i] = static_cast<std::uint8_t>(x & 0xFF);
    }
    out.insert(out.end(), cur.begin(), cur.end());
    prev = std::move(cur);
  }
  return out;
}

namespace {

std::vector<std::uint8_t> apply_one_filter(const std::string& filter,
                                           const PdfObject& parms_obj,
                                           std::vector<std::uint8_t> data) {
  if (filter == "FlateDecode" || filter == "Fl") {
    auto decoded = flate_decode(data);
    if (parms_obj.is_dict()) {
      const PdfDict& parms = parms_obj.dict();
      const PdfObject& pred = dict_get(parms, "Predictor");
      if (pred.is_number() && pred.as_int() > 1) {
        const PdfObject& colors = dict_get(parms, "Colors");
        const PdfObject& bpc = dict_get(parms, "BitsPerComponent");
        const PdfObject& columns = dict_get(parms, "Columns");
        decoded = undo_predictor(decoded, static_cast<int>(pred.as_int()),
                                 colors.is_number() ? static_cast<int>(colors.as_int()) : 1,
                                 bpc.is_number() ? static_cast<int>(bpc.as_int()) : 8,
                                 columns.is_number() ? static_cast<int>(columns.as_int()) : 1);
      }
    }
    return decoded;
  }
  if (filter == "ASCIIHexDecode" || filter == "AHx") return ascii_hex_decode(data);
  throw UnsupportedFilterFailure("unsupported stream filter: " + filter);
}

}  // namespace

std::vector<std::uint8_t> decode_stream_data(const PdfDict& dict,
                                             std::span<const std::uint8_t> raw) {
  std::vector<std::uint8_t> data(raw.begin(), raw.end());

  const PdfObject& filter = dict_get(dict, "Filter");
  if (filter.is_null()) return data;

  const PdfObject& parms = dict_get(dict, "DecodeParms");
  if (filter.is_name()) return apply_one_filter(filter.name(), parms, std::move(data));

  if (filter.is_array()) {
    const PdfArray& filters = filter.array();
    for (std::size_t i = 0; i < filters.size(); ++i) {
      if (!filters[i].is_name()) throw ParseFailure("filter array entry must be a name");
      PdfObject entry_parms;
      if (parms.is_array() && i < parms.array().size()) entry_parms = parms.array()[i];
      else if (parms.is_dict() && filters.size() == 1) entry_parms = parms;
      data = apply_one_filter(filters[i].name(), entry_parms, std::move(data));
    }
    return data;
  }
  throw ParseFailure("malformed /Filter entry");
}

}  // namespace docforge::pdf

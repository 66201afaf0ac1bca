#include "docforge/serialization.hpp"

#include <json.hpp>

namespace docforge {

namespace {

using Json = nlohmann::ordered_json;

Json ref_to_json(const NodeRef& ref) {
  Json j;
  j["store"] = std::string(to_string(ref.store));
  j["index"] = ref.index;
  return j;
}

Json bbox_to_json(const BoundingBox& box) {
  Json j;
  j["l"] = box.l;
  j["t"] = box.t;
  j["r"] = box.r;
  j["b"] = box.b;
  j["origin"] = box.origin == CoordOrigin::TopLeft ? "top-left" : "bottom-left";
  return j;
}

Json prov_to_json(const std::vector<Provenance>& prov) {
  Json arr = Json::array();
  for (const Provenance& p : prov) {
    Json j;
    j["page_no"] = p.page_no;
    if (p.bbox) j["bbox"] = bbox_to_json(*p.bbox);
    if (p.charspan) j["charspan"] = Json::array({p.charspan->start, p.charspan->end});
    arr.push_back(std::move(j));
  }
  return arr;
}

Json table_data_to_json(const TableStructure& data) {
  Json j;
  j["num_rows"] = data.num_rows;
  j["num_cols"] = data.num_cols;
  Json cells = Json::array();
  for (const TableCellSpec& c : data.cells) {
    Json cj;
    cj["start_row"] = c.start_row;
    cj["start_col"] = c.start_col;
    cj["row_span"] = c.row_span;
    cj["col_span"] = c.col_span;
    cj["role"] = std::string(to_string(c.role));
    cj["text"] = c.text;
    if (c.bbox) cj["bbox"] = bbox_to_json(*c.bbox);
    cj["source_cells"] = c.source_cells;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

// --- reading -------------------------------------------------------------

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedPayload, what);
}

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing key: ") + key);
  return *it;
}

std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) malformed(std::string(key) + " must be a string");
  return v.get<std::string>();
}

std::int64_t require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    malformed(std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

double require_number(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number()) malformed(std::string(key) + " must be a number");
  return v.get<double>();
}

NodeRef ref_from_json(const Json& j) {
  if (!j.is_object()) malformed("ref must be an object");
  auto store = store_kind_from_string(require_string(j, "store"));
  if (!store) malformed("unknown store name");
  std::int64_t index = require_int(j, "index");
  if (index < 0) malformed("ref index must be non-negative");
  return NodeRef{*store, static_cast<std::size_t>(index)};
}

BoundingBox bbox_from_json(const Json& j) {
  if (!j.is_object()) malformed("bbox must be an object");
  std::string origin = require_string(j, "origin");
  CoordOrigin o;
  if (origin == "top-left") {
    o = CoordOrigin::TopLeft;
  } else if (origin == "bottom-left") {
    o = CoordOrigin::BottomLeft;
  } else {
    malformed("bbox origin must be top-left or bottom-left");
  }
  return BoundingBox::make(require_number(j, "l"), require_number(j, "t"),
                           require_number(j, "r"), require_number(j, "b"), o);
}

std::vector<Provenance> prov_from_json(const Json& j) {
  if (!j.is_array()) malformed("prov must be an array");
  std::vector<Provenance> out;
  for (const Json& pj : j) {
    Provenance p;
    std::int64_t page = require_int(pj, "page_no");
    if (page < 1) malformed("page_no must be >= 1");
    p.page_no = static_cast<int>(page);
    if (auto it = pj.find("bbox"); it != pj.end()) p.bbox = bbox_from_json(*it);
    if (auto it = pj.find("charspan"); it != pj.end()) {
      if (!it->is_array() || it->size() != 2) malformed("charspan must be [start, end]");
      std::int64_t s = (*it)[0].get<std::int64_t>();
      std::int64_t e = (*it)[1].get<std::int64_t>();
      if (s < 0 || e < s) malformed("charspan must satisfy 0 <= start <= end");
      p.charspan = CharSpan{static_cast<std::size_t>(s), static_cast<std::size_t>(e)};
    }
    out.push_back(std::move(p));
  }
  return out;
}

TableStructure table_data_from_json(const Json& j) {
  TableStructure data;
  std::int64_t rows = require_int(j, "num_rows");
  std::int64_t cols = require_int(j, "num_cols");
  if (rows < 0 || cols < 0) malformed("table dimensions must be non-negative");
  data.num_rows = static_cast<int>(rows);
  data.num_cols = static_cast<int>(cols);
  const Json& cells = require(j, "cells");
  if (!cells.is_array()) malformed("cells must be an array");
  for (const Json& cj : cells) {
    TableCellSpec c;
    c.start_row = static_cast<int>(require_int(cj, "start_row"));
    c.start_col = static_cast<int>(require_int(cj, "start_col"));
    c.row_span = static_cast<int>(require_int(cj, "row_span"));
    c.col_span = static_cast<int>(require_int(cj, "col_span"));
    if (c.start_row < 0 || c.start_col < 0 || c.row_span < 1 || c.col_span < 1)
      malformed("cell position/span out of range");
    if (c.start_row + c.row_span > data.num_rows || c.start_col + c.col_span > data.num_cols)
      malformed("cell rectangle outside grid");
    auto role = cell_role_from_string(require_string(cj, "role"));
    if (!role) malformed("unknown cell role");
    c.role = *role;
    c.text = require_string(cj, "text");
    if (auto it = cj.find("bbox"); it != cj.end()) c.bbox = bbox_from_json(*it);
    const Json& sc = require(cj, "source_cells");
    if (!sc.is_array()) malformed("source_cells must be an array");
    for (const Json& v : sc) c.source_cells.push_back(v.get<int>());
    data.cells.push_back(std::move(c));
  }
  return data;
}

}  // namespace

std::string to_json(const DoclingDocument& doc) {
  Json j;
  j["schema_version"] = std::string(kSchemaVersion);
  j["name"] = doc.name();

  Json origin;
  origin["mimetype"] = doc.origin().mimetype;
  origin["filename"] = doc.origin().filename;
  origin["binary_hash"] = doc.origin().binary_hash;
  j["origin"] = std::move(origin);

  Json body = Json::array();
  for (const NodeRef& ref : doc.body()) body.push_back(ref_to_json(ref));
  j["body"] = std::move(body);

  Json furniture = Json::array();
  for (const NodeRef& ref : doc.furniture()) furniture.push_back(ref_to_json(ref));
  j["furniture"] = std::move(furniture);

  Json texts = Json::array();
  for (const TextItem& t : doc.texts()) {
    Json tj;
    tj["label"] = std::string(to_string(t.label));
    if (t.label == ItemLabel::SectionHeader) tj["level"] = t.level;
    tj["text"] = t.text;
    tj["prov"] = prov_to_json(t.prov);
    texts.push_back(std::move(tj));
  }
  j["texts"] = std::move(texts);

  Json tables = Json::array();
  for (const TableItem& t : doc.tables()) {
    Json tj;
    tj["data"] = table_data_to_json(t.data);
    if (t.caption) tj["caption"] = ref_to_json(*t.caption);
    tj["prov"] = prov_to_json(t.prov);
    tables.push_back(std::move(tj));
  }
  j["tables"] = std::move(tables);

  Json pictures = Json::array();
  for (const PictureItem& p : doc.pictures()) {
    Json pj;
    if (p.caption) pj["caption"] = ref_to_json(*p.caption);
    if (p.classification) pj["classification"] = *p.classification;
    pj["prov"] = prov_to_json(p.prov);
    pictures.push_back(std::move(pj));
  }
  j["pictures"] = std::move(pictures);

  Json groups = Json::array();
  for (const GroupItem& g : doc.groups()) {
    Json gj;
    gj["label"] = std::string(to_string(g.label));
    gj["name"] = g.name;
    Json children = Json::array();
    for (const NodeRef& ref : g.children) children.push_back(ref_to_json(ref));
    gj["children"] = std::move(children);
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);

  return j.dump();
}

DoclingDocument document_from_json_impl(std::string_view payload) {
  Json j = Json::parse(payload, nullptr, false);
  if (j.is_discarded() || !j.is_object()) malformed("payload is not a JSON object");

  const std::string version = require_string(j, "schema_version");
  const auto dot = version.find('.');
  const std::string major = dot == std::string::npos ? version : version.substr(0, dot);
  if (major != "1")
    throw Error(ErrorCode::SchemaVersionMismatch, "unsupported schema version " + version);

  DoclingDocument doc;
  doc.name_ = require_string(j, "name");

  const Json& oj = require(j, "origin");
  doc.origin_.mimetype = require_string(oj, "mimetype");
  doc.origin_.filename = require_string(oj, "filename");
  const Json& hash = require(oj, "binary_hash");
  if (!hash.is_number_integer() && !hash.is_number_unsigned())
    malformed("binary_hash must be an integer");
  doc.origin_.binary_hash = hash.get<std::uint64_t>();

  for (const Json& tj : require(j, "texts")) {
    TextItem t;
    auto label = item_label_from_string(require_string(tj, "label"));
    if (!label) malformed("unknown item label");
    t.label = *label;
    if (t.label == ItemLabel::SectionHeader) {
      std::int64_t level = require_int(tj, "level");
      if (level < 1 || level > 6) malformed("section header level must be in 1..6");
      t.level = static_cast<int>(level);
    }
    t.text = require_string(tj, "text");
    t.prov = prov_from_json(require(tj, "prov"));
    doc.texts_.push_back(std::move(t));
  }

  for (const Json& tj : require(j, "tables")) {
    TableItem t;
    t.data = table_data_from_json(require(tj, "data"));
    if (auto it = tj.find("caption"); it != tj.end()) t.caption = ref_from_json(*it);
    t.prov = prov_from_json(require(tj, "prov"));
    doc.tables_.push_back(std::move(t));
  }

  for (const Json& pj : require(j, "pictures")) {
    PictureItem p;
    if (auto it = pj.find("caption"); it != pj.end()) p.caption = ref_from_json(*it);
    if (auto it = pj.find("classification"); it != pj.end()) {
      if (!it->is_string()) malformed("classification must be a string");
      p.classification = it->get<std::string>();
    }
    p.prov = prov_from_json(require(pj, "prov"));
    doc.pictures_.push_back(std::move(p));
  }

  for (const Json& gj : require(j, "groups")) {
    GroupItem g;
    auto label = item_label_from_string(require_string(gj, "label"));
    if (!label || (*label != ItemLabel::Group && *label != ItemLabel::List))
      malformed("group label must be group or list");
    g.label = *label;
    g.name = require_string(gj, "name");
    for (const Json& c : require(gj, "children")) g.children.push_back(ref_from_json(c));
    doc.groups_.push_back(std::move(g));
  }

  for (const Json& r : require(j, "body")) doc.body_.push_back(ref_from_json(r));
  for (const Json& r : require(j, "furniture")) doc.furniture_.push_back(ref_from_json(r));

  try {
    doc.validate();
  } catch (const Error& e) {
    // validate() reports placement problems with its own code; for payloads
    // everything except dangling refs is a malformed document.
    if (e.code() == ErrorCode::DanglingRef) throw;
    throw Error(ErrorCode::MalformedPayload, e.what());
  }
  return doc;
}

DoclingDocument from_json(std::string_view payload) {
  return document_from_json_impl(payload);
}

}  // namespace docforge

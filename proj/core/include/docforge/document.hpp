#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "docforge/errors.hpp"
#include "docforge/geometry.hpp"
#include "docforge/table_structure.hpp"

namespace docforge {

enum class ItemLabel {
  Title,
  SectionHeader,
  Text,
  ListItem,
  Caption,
  Footnote,
  Formula,
  Code,
  PageHeader,
  PageFooter,
  Table,
  Picture,
  Group,
  List,
};

std::string_view to_string(ItemLabel label);  // kebab-case spelling
std::optional<ItemLabel> item_label_from_string(std::string_view s);

inline bool is_furniture_label(ItemLabel label) {
  return label == ItemLabel::PageHeader || label == ItemLabel::PageFooter;
}

struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // half-open [start, end)

  bool operator==(const CharSpan&) const = default;
};

struct Provenance {
  int page_no = 1;
  std::optional<BoundingBox> bbox;      // absent for markup sources
  std::optional<CharSpan> charspan;

  bool operator==(const Provenance&) const = default;
};

enum class StoreKind { Texts, Tables, Pictures, Groups };

std::string_view to_string(StoreKind kind);
std::optional<StoreKind> store_kind_from_string(std::string_view s);

/// Reference into one of the document's flat item stores.
struct NodeRef {
  StoreKind store = StoreKind::Texts;
  std::size_t index = 0;

  bool operator==(const NodeRef&) const = default;
  auto operator<=>(const NodeRef&) const = default;
};

struct TextItem {
  ItemLabel label = ItemLabel::Text;
  std::string text;
  int level = 1;  // heading level; meaningful only for SectionHeader
  std::vector<Provenance> prov;

  bool operator==(const TextItem&) const = default;
};

struct TableItem {
  TableStructure data;
  std::optional<NodeRef> caption;  // resolves to a Caption TextItem when set
  std::vector<Provenance> prov;

  bool operator==(const TableItem&) const = default;
};

struct PictureItem {
  std::optional<NodeRef> caption;
  std::optional<std::string> classification;  // reserved, unset in v1
  std::vector<Provenance> prov;

  bool operator==(const PictureItem&) const = default;
};

struct GroupItem {
  ItemLabel label = ItemLabel::Group;  // Group or List
  std::string name;
  std::vector<NodeRef> children;  // reading order

  bool operator==(const GroupItem&) const = default;
};

using DocItem = std::variant<TextItem, TableItem, PictureItem, GroupItem>;

struct DocumentOrigin {
  std::string mimetype;
  std::string filename;
  std::uint64_t binary_hash = 0;

  bool operator==(const DocumentOrigin&) const = default;
};

/// Where add_item hooks the new item in.
///
/// CaptionOf is the odd one out: the caption item is owned by the target's
/// caption ref instead of a children list, so a captioned table contributes
/// one body slot, not two.
struct AttachPoint {
  enum class Kind { BodyRoot, FurnitureRoot, Group, CaptionOf };

  Kind kind = Kind::BodyRoot;
  NodeRef group{};

  static AttachPoint body() { return {}; }
  static AttachPoint furniture() { return {Kind::FurnitureRoot, {}}; }
  static AttachPoint under(NodeRef g) { return {Kind::Group, g}; }
  static AttachPoint caption_of(NodeRef target) { return {Kind::CaptionOf, target}; }
};

struct ItemVisit {
  NodeRef ref;
  int depth = 0;

  bool operator==(const ItemVisit&) const = default;
};

/// Unified document representation: flat per-kind item stores plus
/// reference-based body and furniture trees. Items are owned by the stores;
/// body/furniture roots and group children hold each item exactly once.
class DoclingDocument {
public:
  DoclingDocument() = default;
  DoclingDocument(std::string name, DocumentOrigin origin)
      : name_(std::move(name)), origin_(std::move(origin)) {}

  const std::string& name() const { return name_; }
  const DocumentOrigin& origin() const { return origin_; }

  const std::vector<NodeRef>& body() const { return body_; }
  const std::vector<NodeRef>& furniture() const { return furniture_; }
  const std::vector<TextItem>& texts() const { return texts_; }
  const std::vector<TableItem>& tables() const { return tables_; }
  const std::vector<PictureItem>& pictures() const { return pictures_; }
  const std::vector<GroupItem>& groups() const { return groups_; }

  /// Appends the item to its store and hooks it into the tree.
  /// Throws Error(UnresolvableParent) when `at` names a ref that does not
  /// resolve to a group, and Error(LabelPlacementViolation) when a furniture
  /// label targets body or vice versa.
  NodeRef add_item(DocItem item, AttachPoint at = AttachPoint::body());

  bool resolves(NodeRef ref) const;
  ItemLabel label_of(NodeRef ref) const;

  const TextItem& text(NodeRef ref) const;
  const TableItem& table(NodeRef ref) const;
  const PictureItem& picture(NodeRef ref) const;
  const GroupItem& group(NodeRef ref) const;

  TextItem& text_mut(NodeRef ref);
  TableItem& table_mut(NodeRef ref);
  PictureItem& picture_mut(NodeRef ref);
  GroupItem& group_mut(NodeRef ref);

  /// Plain text of a text item, empty string for other kinds.
  std::string_view text_of(NodeRef ref) const;

  /// Depth-first pre-order walk of the body trees; furniture roots are
  /// appended (depth 0 each) when include_furniture is set.
  std::vector<ItemVisit> iterate_items(bool include_furniture = false) const;

  std::size_t item_count() const {
    return texts_.size() + tables_.size() + pictures_.size() + groups_.size();
  }

  /// Full-scan consistency check: every ref resolves, each item has exactly
  /// one parent, caption refs point at Caption text items, furniture holds
  /// only furniture labels. Throws Error on the first violation.
  void validate() const;

  bool operator==(const DoclingDocument&) const = default;

private:
  friend DoclingDocument document_from_json_impl(std::string_view payload);

  std::string name_;
  DocumentOrigin origin_;
  std::vector<NodeRef> body_;
  std::vector<NodeRef> furniture_;
  std::vector<TextItem> texts_;
  std::vector<TableItem> tables_;
  std::vector<PictureItem> pictures_;
  std::vector<GroupItem> groups_;
};

inline DoclingDocument new_document(std::string name, DocumentOrigin origin) {
  return DoclingDocument(std::move(name), std::move(origin));
}

/// FNV-1a 64-bit content hash used for origin.binary_hash.
std::uint64_t fnv1a_hash(const void* data, std::size_t size);

}  // namespace docforge

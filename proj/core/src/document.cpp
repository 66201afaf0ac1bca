#include "docforge/document.hpp"

#include <stdexcept>

namespace docforge {

std::string_view to_string(ItemLabel label) {
  switch (label) {
    case ItemLabel::Title: return "title";
    case ItemLabel::SectionHeader: return "section-header";
    case ItemLabel::Text: return "text";
    case ItemLabel::ListItem: return "list-item";
    case ItemLabel::Caption: return "caption";
    case ItemLabel::Footnote: return "footnote";
    case ItemLabel::Formula: return "formula";
    case ItemLabel::Code: return "code";
    case ItemLabel::PageHeader: return "page-header";
    case ItemLabel::PageFooter: return "page-footer";
    case ItemLabel::Table: return "table";
    case ItemLabel::Picture: return "picture";
    case ItemLabel::Group: return "group";
    case ItemLabel::List: return "list";
  }
  return "text";
}

std::optional<ItemLabel> item_label_from_string(std::string_view s) {
  static constexpr ItemLabel kAll[] = {
      ItemLabel::Title,      ItemLabel::SectionHeader, ItemLabel::Text,
      ItemLabel::ListItem,   ItemLabel::Caption,       ItemLabel::Footnote,
      ItemLabel::Formula,    ItemLabel::Code,          ItemLabel::PageHeader,
      ItemLabel::PageFooter, ItemLabel::Table,         ItemLabel::Picture,
      ItemLabel::Group,      ItemLabel::List,
  };
  for (ItemLabel label : kAll) {
    if (to_string(label) == s) return label;
  }
  return std::nullopt;
}

std::string_view to_string(StoreKind kind) {
  switch (kind) {
    case StoreKind::Texts: return "texts";
    case StoreKind::Tables: return "tables";
    case StoreKind::Pictures: return "pictures";
    case StoreKind::Groups: return "groups";
  }
  return "texts";
}

std::optional<StoreKind> store_kind_from_string(std::string_view s) {
  if (s == "texts") return StoreKind::Texts;
  if (s == "tables") return StoreKind::Tables;
  if (s == "pictures") return StoreKind::Pictures;
  if (s == "groups") return StoreKind::Groups;
  return std::nullopt;
}

std::string_view to_string(CellRole role) {
  switch (role) {
    case CellRole::ColumnHeader: return "column-header";
    case CellRole::RowHeader: return "row-header";
    case CellRole::Body: return "body";
  }
  return "body";
}

std::optional<CellRole> cell_role_from_string(std::string_view s) {
  if (s == "column-header") return CellRole::ColumnHeader;
  if (s == "row-header") return CellRole::RowHeader;
  if (s == "body") return CellRole::Body;
  return std::nullopt;
}

namespace {

ItemLabel label_of_item(const DocItem& item) {
  if (const auto* t = std::get_if<TextItem>(&item)) return t->label;
  if (std::holds_alternative<TableItem>(item)) return ItemLabel::Table;
  if (std::holds_alternative<PictureItem>(item)) return ItemLabel::Picture;
  return std::get<GroupItem>(item).label;
}

}  // namespace

NodeRef DoclingDocument::add_item(DocItem item, AttachPoint at) {
  const ItemLabel label = label_of_item(item);

  if (at.kind == AttachPoint::Kind::FurnitureRoot) {
    if (!is_furniture_label(label))
      throw Error(ErrorCode::LabelPlacementViolation,
                  "only page-header/page-footer items may live under furniture");
  } else {
    if (is_furniture_label(label))
      throw Error(ErrorCode::LabelPlacementViolation,
                  std::string(to_string(label)) + " items must target furniture");
  }

  if (const auto* g = std::get_if<GroupItem>(&item)) {
    if (!g->children.empty())
      throw std::invalid_argument("group children are built through add_item");
    if (g->label != ItemLabel::Group && g->label != ItemLabel::List)
      throw std::invalid_argument("group label must be group or list");
  }

  if (at.kind == AttachPoint::Kind::Group &&
      (at.group.store != StoreKind::Groups || at.group.index >= groups_.size()))
    throw Error(ErrorCode::UnresolvableParent, "parent ref does not resolve to a group");

  if (at.kind == AttachPoint::Kind::CaptionOf) {
    const auto* t = std::get_if<TextItem>(&item);
    if (!t || t->label != ItemLabel::Caption)
      throw Error(ErrorCode::LabelPlacementViolation,
                  "caption_of accepts only caption text items");
    const NodeRef target = at.group;
    if (!resolves(target) ||
        (target.store != StoreKind::Tables && target.store != StoreKind::Pictures))
      throw Error(ErrorCode::UnresolvableParent,
                  "caption target must be an existing table or picture");
    const bool taken = target.store == StoreKind::Tables
                           ? tables_[target.index].caption.has_value()
                           : pictures_[target.index].caption.has_value();
    if (taken) throw std::invalid_argument("target already has a caption");
  }

  NodeRef ref;
  if (auto* t = std::get_if<TextItem>(&item)) {
    ref = NodeRef{StoreKind::Texts, texts_.size()};
    texts_.push_back(std::move(*t));
  } else if (auto* tb = std::get_if<TableItem>(&item)) {
    ref = NodeRef{StoreKind::Tables, tables_.size()};
    tables_.push_back(std::move(*tb));
  } else if (auto* p = std::get_if<PictureItem>(&item)) {
    ref = NodeRef{StoreKind::Pictures, pictures_.size()};
    pictures_.push_back(std::move(*p));
  } else {
    ref = NodeRef{StoreKind::Groups, groups_.size()};
    groups_.push_back(std::move(std::get<GroupItem>(item)));
  }

  // Resolve the sibling list only now: the store push above may reallocate.
  switch (at.kind) {
    case AttachPoint::Kind::BodyRoot: body_.push_back(ref); break;
    case AttachPoint::Kind::FurnitureRoot: furniture_.push_back(ref); break;
    case AttachPoint::Kind::Group: groups_[at.group.index].children.push_back(ref); break;
    case AttachPoint::Kind::CaptionOf:
      if (at.group.store == StoreKind::Tables) tables_[at.group.index].caption = ref;
      else pictures_[at.group.index].caption = ref;
      break;
  }
  return ref;
}

bool DoclingDocument::resolves(NodeRef ref) const {
  switch (ref.store) {
    case StoreKind::Texts: return ref.index < texts_.size();
    case StoreKind::Tables: return ref.index < tables_.size();
    case StoreKind::Pictures: return ref.index < pictures_.size();
    case StoreKind::Groups: return ref.index < groups_.size();
  }
  return false;
}

ItemLabel DoclingDocument::label_of(NodeRef ref) const {
  switch (ref.store) {
    case StoreKind::Texts: return texts_.at(ref.index).label;
    case StoreKind::Tables: return ItemLabel::Table;
    case StoreKind::Pictures: return ItemLabel::Picture;
    case StoreKind::Groups: return groups_.at(ref.index).label;
  }
  return ItemLabel::Text;
}

const TextItem& DoclingDocument::text(NodeRef ref) const { return texts_.at(ref.index); }
const TableItem& DoclingDocument::table(NodeRef ref) const { return tables_.at(ref.index); }
const PictureItem& DoclingDocument::picture(NodeRef ref) const { return pictures_.at(ref.index); }
const GroupItem& DoclingDocument::group(NodeRef ref) const { return groups_.at(ref.index); }

TextItem& DoclingDocument::text_mut(NodeRef ref) { return texts_.at(ref.index); }
TableItem& DoclingDocument::table_mut(NodeRef ref) { return tables_.at(ref.index); }
PictureItem& DoclingDocument::picture_mut(NodeRef ref) { return pictures_.at(ref.index); }
GroupItem& DoclingDocument::group_mut(NodeRef ref) { return groups_.at(ref.index); }

std::string_view DoclingDocument::text_of(NodeRef ref) const {
  if (ref.store == StoreKind::Texts && ref.index < texts_.size())
    return texts_[ref.index].text;
  return {};
}

std::vector<ItemVisit> DoclingDocument::iterate_items(bool include_furniture) const {
  std::vector<ItemVisit> out;
  out.reserve(item_count());

  auto walk = [&](auto&& self, NodeRef ref, int depth) -> void {
    out.push_back(ItemVisit{ref, depth});
    if (ref.store == StoreKind::Groups) {
      for (NodeRef child : groups_.at(ref.index).children) self(self, child, depth + 1);
    }
  };

  for (NodeRef root : body_) walk(walk, root, 0);
  if (include_furniture) {
    for (NodeRef root : furniture_) walk(walk, root, 0);
  }
  return out;
}

void DoclingDocument::validate() const {
  std::vector<int> seen_texts(texts_.size(), 0);
  std::vector<int> seen_tables(tables_.size(), 0);
  std::vector<int> seen_pictures(pictures_.size(), 0);
  std::vector<int> seen_groups(groups_.size(), 0);

  auto mark = [&](NodeRef ref) {
    if (!resolves(ref)) throw Error(ErrorCode::DanglingRef, "ref index out of range");
    int* slot = nullptr;
    switch (ref.store) {
      case StoreKind::Texts: slot = &seen_texts[ref.index]; break;
      case StoreKind::Tables: slot = &seen_tables[ref.index]; break;
      case StoreKind::Pictures: slot = &seen_pictures[ref.index]; break;
      case StoreKind::Groups: slot = &seen_groups[ref.index]; break;
    }
    if (++*slot > 1)
      throw Error(ErrorCode::MalformedPayload, "item referenced by more than one parent");
  };

  for (NodeRef ref : body_) {
    mark(ref);
    if (is_furniture_label(label_of(ref)))
      throw Error(ErrorCode::LabelPlacementViolation, "furniture label under body");
  }
  for (NodeRef ref : furniture_) {
    mark(ref);
    if (!is_furniture_label(label_of(ref)))
      throw Error(ErrorCode::LabelPlacementViolation, "body label under furniture");
  }
  for (const GroupItem& g : groups_) {
    for (NodeRef ref : g.children) {
      mark(ref);
      if (is_furniture_label(label_of(ref)))
        throw Error(ErrorCode::LabelPlacementViolation, "furniture label under group");
    }
  }

  // Caption refs are ownership links too: every stored item must end up with
  // exactly one parent across roots, children lists, and caption refs.
  auto check_caption = [&](const std::optional<NodeRef>& ref) {
    if (!ref) return;
    if (!resolves(*ref)) throw Error(ErrorCode::DanglingRef, "caption ref out of range");
    if (ref->store != StoreKind::Texts || label_of(*ref) != ItemLabel::Caption)
      throw Error(ErrorCode::MalformedPayload, "caption ref must name a caption text item");
    mark(*ref);
  };
  for (const TableItem& t : tables_) check_caption(t.caption);
  for (const PictureItem& p : pictures_) check_caption(p.caption);

  auto require_owned = [](const std::vector<int>& seen, const char* what) {
    for (int count : seen) {
      if (count == 0)
        throw Error(ErrorCode::MalformedPayload,
                    std::string("orphan ") + what + " item (no parent reference)");
    }
  };
  require_owned(seen_texts, "text");
  require_owned(seen_tables, "table");
  require_owned(seen_pictures, "picture");
  require_owned(seen_groups, "group");

  for (const TextItem& t : texts_) {
    for (const Provenance& prov : t.prov) {
      if (prov.page_no < 1) throw Error(ErrorCode::MalformedPayload, "page_no must be >= 1");
      if (prov.charspan) {
        if (prov.charspan->start > prov.charspan->end ||
            prov.charspan->end > t.text.size())
          throw Error(ErrorCode::MalformedPayload, "charspan outside item text");
      }
    }
  }
}

std::uint64_t fnv1a_hash(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace docforge

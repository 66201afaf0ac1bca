// Shared heading-hierarchy bookkeeping: each section header opens a group
// that contains subsequent content until a heading of equal or higher rank.
#pragma once

#include <vector>

#include "docforge/document.hpp"

namespace docforge::internal {

class SectionStack {
public:
  /// Attach point for regular content.
  AttachPoint current() const {
    return open_.empty() ? AttachPoint::body() : AttachPoint::under(open_.back().group);
  }

  /// Opens a section group holding `heading` (label SectionHeader, level set).
  NodeRef open_section(DoclingDocument& doc, TextItem heading) {
    const int level = heading.level;
    while (!open_.empty() && open_.back().level >= level) open_.pop_back();
    NodeRef group = doc.add_item(GroupItem{ItemLabel::Group, "section", {}}, current());
    NodeRef head_ref = doc.add_item(std::move(heading), AttachPoint::under(group));
    open_.push_back(Entry{level, group});
    return head_ref;
  }

  void reset() { open_.clear(); }

private:
  struct Entry {
    int level;
    NodeRef group;
  };
  std::vector<Entry> open_;
};

}  // namespace docforge::internal

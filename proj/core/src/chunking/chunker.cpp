#include "docforge/chunking.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "docforge/table_engine.hpp"

namespace docforge {

namespace {

bool is_heading(ItemLabel label) {
  return label == ItemLabel::Title || label == ItemLabel::SectionHeader;
}

std::set<NodeRef> claimed_captions(const DoclingDocument& doc) {
  std::set<NodeRef> out;
  for (const TableItem& table : doc.tables())
    if (table.caption) out.insert(*table.caption);
  for (const PictureItem& picture : doc.pictures())
    if (picture.caption) out.insert(*picture.caption);
  return out;
}

void collect_meta(const DoclingDocument& doc, NodeRef ref, ChunkMeta& meta) {
  meta.item_refs.push_back(ref);
  const std::vector<Provenance>* prov = nullptr;
  switch (ref.store) {
    case StoreKind::Texts: prov = &doc.text(ref).prov; break;
    case StoreKind::Tables: prov = &doc.table(ref).prov; break;
    case StoreKind::Pictures: prov = &doc.picture(ref).prov; break;
    case StoreKind::Groups: return;
  }
  for (const Provenance& p : *prov) {
    meta.pages.push_back(p.page_no);
    if (p.bbox) meta.bboxes.push_back(*p.bbox);
  }
}

void finish_meta(ChunkMeta& meta) {
  std::sort(meta.pages.begin(), meta.pages.end());
  meta.pages.erase(std::unique(meta.pages.begin(), meta.pages.end()), meta.pages.end());
}

class HierarchicalWalk {
public:
  HierarchicalWalk(const DoclingDocument& doc, std::size_t max_chars)
      : doc_(doc), max_chars_(max_chars), claimed_(claimed_captions(doc)) {}

  std::vector<Chunk> run() {
    for (NodeRef root : doc_.body()) walk(root);
    return std::move(chunks_);
  }

private:
  Chunk base_chunk() const {
    Chunk chunk;
    chunk.meta.doc_name = doc_.name();
    chunk.meta.headings = headings_;
    return chunk;
  }

  void emit(Chunk chunk) {
    if (chunk.meta.item_refs.empty()) return;
    finish_meta(chunk.meta);
    chunks_.push_back(std::move(chunk));
  }

  void walk(NodeRef ref) {
    switch (ref.store) {
      case StoreKind::Groups: {
        const GroupItem& group = doc_.group(ref);
        if (group.label == ItemLabel::List) {
          walk_list(group);
          return;
        }
        // Section groups carry their heading in the path for descendants.
        const bool is_section = !group.children.empty() &&
                                group.children[0].store == StoreKind::Texts &&
                                doc_.text(group.children[0]).label == ItemLabel::SectionHeader;
        if (is_section) {
          headings_.push_back(doc_.text(group.children[0]).text);
          for (std::size_t i = 1; i < group.children.size(); ++i) walk(group.children[i]);
          headings_.pop_back();
        } else {
          for (NodeRef child : group.children) walk(child);
        }
        return;
      }
      case StoreKind::Texts: {
        const TextItem& item = doc_.text(ref);
        if (is_heading(item.label)) return;        // metadata, not content
        if (claimed_.contains(ref)) return;        // folded into its target
        if (item.text.empty()) return;
        Chunk chunk = base_chunk();
        chunk.text = item.text;
        collect_meta(doc_, ref, chunk.meta);
        emit(std::move(chunk));
        return;
      }
      case StoreKind::Tables: {
        const TableItem& item = doc_.table(ref);
        Chunk chunk = base_chunk();
        std::string table_text = render_markdown_table(item.data);
        if (item.caption) {
          chunk.text = doc_.text(*item.caption).text;
          if (!table_text.empty()) chunk.text += '\n' + table_text;
          collect_meta(doc_, ref, chunk.meta);
          collect_meta(doc_, *item.caption, chunk.meta);
        } else {
          chunk.text = table_text;
          collect_meta(doc_, ref, chunk.meta);
        }
        if (chunk.text.empty()) chunk.text = "<!-- table -->";
        emit(std::move(chunk));
        return;
      }
      case StoreKind::Pictures: {
        const PictureItem& item = doc_.picture(ref);
        if (!item.caption) return;  // no text to retrieve
        Chunk chunk = base_chunk();
        chunk.text = doc_.text(*item.caption).text;
        collect_meta(doc_, ref, chunk.meta);
        collect_meta(doc_, *item.caption, chunk.meta);
        emit(std::move(chunk));
        return;
      }
    }
  }

  void walk_list(const GroupItem& group) {
    // Consecutive ListItems merge into one chunk; anything else (nested
    // lists) flushes the run and recurses.
    Chunk run = base_chunk();
    auto flush = [&]() {
      if (run.meta.item_refs.empty()) return;
      emit(std::move(run));
      run = base_chunk();
    };

    for (NodeRef child : group.children) {
      const bool is_item =
          child.store == StoreKind::Texts && doc_.text(child).label == ItemLabel::ListItem;
      if (!is_item) {
        flush();
        walk(child);
        continue;
      }
      const TextItem& item = doc_.text(child);
      if (max_chars_ > 0 && !run.meta.item_refs.empty() &&
          run.text.size() + 1 + item.text.size() > max_chars_) {
        flush();  // soft split at an item boundary
      }
      if (!run.meta.item_refs.empty()) run.text += '\n';
      run.text += item.text;
      collect_meta(doc_, child, run.meta);
    }
    flush();
  }

  const DoclingDocument& doc_;
  std::size_t max_chars_;
  std::set<NodeRef> claimed_;
  std::vector<std::string> headings_;
  std::vector<Chunk> chunks_;
};

}  // namespace

std::vector<NodeRef> chunkable_refs(const DoclingDocument& doc) {
  std::vector<NodeRef> out;
  for (const ItemVisit& visit : doc.iterate_items()) {
    const NodeRef ref = visit.ref;
    switch (ref.store) {
      case StoreKind::Groups:
        break;
      case StoreKind::Tables:
        out.push_back(ref);
        break;
      case StoreKind::Pictures:
        if (doc.picture(ref).caption) out.push_back(ref);
        break;
      case StoreKind::Texts: {
        const TextItem& item = doc.text(ref);
        if (is_heading(item.label)) break;
        if (item.text.empty()) break;
        // Claimed captions are covered through their target's chunk.
        out.push_back(ref);
        break;
      }
    }
  }
  return out;
}

std::vector<Chunk> HierarchicalChunker::chunk(const DoclingDocument& doc) const {
  return HierarchicalWalk(doc, max_chars_).run();
}

std::vector<Chunk> FlatChunker::chunk(const DoclingDocument& doc) const {
  std::vector<Chunk> out;
  const std::set<NodeRef> claimed = claimed_captions(doc);

  // Headings path bookkeeping mirrors the hierarchical walk. A frame holds
  // the depth of the heading's section *group*: the heading applies until
  // the walk returns to that depth.
  std::vector<std::pair<int, std::string>> heading_stack;  // (group depth, text)

  for (const ItemVisit& visit : doc.iterate_items()) {
    while (!heading_stack.empty() && visit.depth <= heading_stack.back().first)
      heading_stack.pop_back();

    const NodeRef ref = visit.ref;
    if (ref.store == StoreKind::Texts) {
      const TextItem& item = doc.text(ref);
      if (item.label == ItemLabel::SectionHeader) {
        heading_stack.emplace_back(visit.depth - 1, item.text);
        continue;
      }
    }

    Chunk chunk;
    chunk.meta.doc_name = doc.name();
    for (const auto& [depth, text] : heading_stack) chunk.meta.headings.push_back(text);

    switch (ref.store) {
      case StoreKind::Groups:
        continue;
      case StoreKind::Tables: {
        const TableItem& item = doc.table(ref);
        chunk.text = render_markdown_table(item.data);
        collect_meta(doc, ref, chunk.meta);
        if (item.caption) {
          chunk.text = doc.text(*item.caption).text +
                       (chunk.text.empty() ? "" : "\n" + chunk.text);
          collect_meta(doc, *item.caption, chunk.meta);
        }
        if (chunk.text.empty()) chunk.text = "<!-- table -->";
        break;
      }
      case StoreKind::Pictures: {
        const PictureItem& item = doc.picture(ref);
        if (!item.caption) continue;
        chunk.text = doc.text(*item.caption).text;
        collect_meta(doc, ref, chunk.meta);
        collect_meta(doc, *item.caption, chunk.meta);
        break;
      }
      case StoreKind::Texts: {
        const TextItem& item = doc.text(ref);
        if (is_heading(item.label) || item.text.empty()) continue;
        if (item.label == ItemLabel::Caption && claimed.contains(ref)) continue;
        chunk.text = item.text;
        collect_meta(doc, ref, chunk.meta);
        break;
      }
    }
    finish_meta(chunk.meta);
    out.push_back(std::move(chunk));
  }
  return out;
}

}  // namespace docforge

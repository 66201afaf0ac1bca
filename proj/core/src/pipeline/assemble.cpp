#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "docforge/pipeline.hpp"
#include "../markup/section_stack.hpp"

namespace docforge {

namespace {

double median_of(std::vector<double> v, double fallback) {
  if (v.empty()) return fallback;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Joins a cluster's cells into text: cells grouped into lines by baseline,
/// left-to-right within a line; lines joined with `line_sep`.
std::string cluster_text(const LayoutCluster& cluster, const std::vector<TextCell>& cells,
                         char line_sep) {
  std::map<int, const TextCell*> by_stream;
  for (const TextCell& cell : cells) by_stream[cell.stream_index] = &cell;

  std::vector<const TextCell*> members;
  for (int id : cluster.cells) {
    if (auto it = by_stream.find(id); it != by_stream.end()) members.push_back(it->second);
  }
  std::sort(members.begin(), members.end(), [](const TextCell* a, const TextCell* b) {
    if (a->bbox.b != b->bbox.b) return a->bbox.b < b->bbox.b;
    return a->bbox.l < b->bbox.l;
  });

  std::string out;
  double line_baseline = 0.0;
  bool first = true;
  for (const TextCell* cell : members) {
    const double tolerance = 0.4 * std::max(1.0, cell->font_size);
    if (first) {
      line_baseline = cell->bbox.b;
      first = false;
    } else if (std::abs(cell->bbox.b - line_baseline) > tolerance) {
      out += line_sep;
      line_baseline = cell->bbox.b;
    } else {
      out += ' ';
    }
    out += cell->text;
  }
  return out;
}

double cluster_font_size(const LayoutCluster& cluster, const std::vector<TextCell>& cells) {
  std::map<int, const TextCell*> by_stream;
  for (const TextCell& cell : cells) by_stream[cell.stream_index] = &cell;
  std::vector<double> sizes;
  for (int id : cluster.cells) {
    if (auto it = by_stream.find(id); it != by_stream.end())
      sizes.push_back(it->second->font_size);
  }
  return median_of(std::move(sizes), 10.0);
}

struct ListMarker {
  bool matched = false;
  bool ordered = false;
  std::size_t skip = 0;  // bytes to strip from the text
};

ListMarker detect_list_marker(std::string_view text) {
  ListMarker m;
  if (text.size() >= 2 && (text[0] == '-' || text[0] == '*') && text[1] == ' ') {
    m.matched = true;
    m.skip = 2;
    return m;
  }
  // U+2022 bullet.
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xE2 &&
      static_cast<unsigned char>(text[1]) == 0x80 &&
      static_cast<unsigned char>(text[2]) == 0xA2) {
    m.matched = true;
    m.skip = text.size() > 3 && text[3] == ' ' ? 4 : 3;
    return m;
  }
  std::size_t digits = 0;
  while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits])))
    ++digits;
  if (digits >= 1 && digits < text.size() && (text[digits] == '.' || text[digits] == ')')) {
    m.matched = true;
    m.ordered = true;
    m.skip = digits + 1;
    if (m.skip < text.size() && text[m.skip] == ' ') ++m.skip;
    return m;
  }
  return m;
}

}  // namespace

DoclingDocument assemble(const std::vector<PageResult>& pages, std::string name,
                         DocumentOrigin origin, std::vector<std::string>* warnings) {
  DoclingDocument doc(std::move(name), std::move(origin));

  // Header levels from the document-wide font-size ranking (desc -> 1..3).
  std::vector<double> header_sizes;
  for (const PageResult& page : pages) {
    for (const LayoutCluster& cluster : page.clusters) {
      if (cluster.label != ItemLabel::SectionHeader) continue;
      const double size = std::round(cluster_font_size(cluster, page.cells) * 10.0) / 10.0;
      header_sizes.push_back(size);
    }
  }
  std::sort(header_sizes.begin(), header_sizes.end(), std::greater<>());
  header_sizes.erase(std::unique(header_sizes.begin(), header_sizes.end()),
                     header_sizes.end());
  auto level_of = [&](double size) {
    const double rounded = std::round(size * 10.0) / 10.0;
    for (std::size_t i = 0; i < header_sizes.size(); ++i)
      if (header_sizes[i] == rounded) return std::min<int>(static_cast<int>(i) + 1, 3);
    return 3;
  };

  internal::SectionStack sections;
  std::optional<NodeRef> open_list;
  bool open_list_ordered = false;

  for (const PageResult& page : pages) {
    if (page.failed) continue;

    // Captions claimed by a target are emitted right after it.
    std::map<int, const LayoutCluster*> claimed;  // target id -> caption cluster
    std::set<int> claimed_ids;
    for (const auto& [caption_id, target_id] : page.caption_for) {
      for (const LayoutCluster& cluster : page.clusters) {
        if (cluster.id == caption_id) {
          claimed[target_id] = &cluster;
          claimed_ids.insert(caption_id);
        }
      }
    }

    auto provenance = [&](const LayoutCluster& cluster, std::size_t text_len,
                          bool with_span) {
      Provenance prov;
      prov.page_no = page.page_no;
      prov.bbox = cluster.bbox;
      if (with_span) prov.charspan = CharSpan{0, text_len};
      return prov;
    };

    auto emit_caption_for = [&](NodeRef target_ref, int target_id) {
      auto it = claimed.find(target_id);
      if (it == claimed.end()) return;
      const LayoutCluster& caption = *it->second;
      TextItem item;
      item.label = ItemLabel::Caption;
      item.text = cluster_text(caption, page.cells, ' ');
      item.prov.push_back(provenance(caption, item.text.size(), true));
      doc.add_item(std::move(item), AttachPoint::caption_of(target_ref));
    };

    for (const LayoutCluster& cluster : page.clusters) {
      const ItemLabel label = cluster.label;

      if (is_furniture_label(label)) {
        TextItem item;
        item.label = label;
        item.text = cluster_text(cluster, page.cells, ' ');
        if (item.text.empty()) continue;
        item.prov.push_back(provenance(cluster, item.text.size(), true));
        doc.add_item(std::move(item), AttachPoint::furniture());
        continue;
      }
      if (claimed_ids.contains(cluster.id)) continue;  // rendered with its target

      if (label != ItemLabel::ListItem) open_list.reset();

      switch (label) {
        case ItemLabel::SectionHeader: {
          TextItem heading;
          heading.label = ItemLabel::SectionHeader;
          heading.level = level_of(cluster_font_size(cluster, page.cells));
          heading.text = cluster_text(cluster, page.cells, ' ');
          heading.prov.push_back(provenance(cluster, heading.text.size(), true));
          sections.open_section(doc, std::move(heading));
          break;
        }
        case ItemLabel::Title: {
          TextItem item;
          item.label = ItemLabel::Title;
          item.text = cluster_text(cluster, page.cells, ' ');
          item.prov.push_back(provenance(cluster, item.text.size(), true));
          sections.reset();
          doc.add_item(std::move(item), AttachPoint::body());
          break;
        }
        case ItemLabel::ListItem: {
          std::string text = cluster_text(cluster, page.cells, ' ');
          const ListMarker marker = detect_list_marker(text);
          if (marker.matched) text.erase(0, marker.skip);
          if (!open_list || (marker.matched && marker.ordered != open_list_ordered)) {
            open_list_ordered = marker.ordered;
            open_list = doc.add_item(
                GroupItem{ItemLabel::List, marker.ordered ? "ordered-list" : "list", {}},
                sections.current());
          }
          TextItem item;
          item.label = ItemLabel::ListItem;
          item.prov.push_back(provenance(cluster, text.size(), true));
          item.text = std::move(text);
          doc.add_item(std::move(item), AttachPoint::under(*open_list));
          break;
        }
        case ItemLabel::Table: {
          TableItem item;
          if (auto it = page.tables.find(cluster.id); it != page.tables.end())
            item.data = it->second;
          item.prov.push_back(provenance(cluster, 0, false));
          NodeRef ref = doc.add_item(std::move(item), sections.current());
          emit_caption_for(ref, cluster.id);
          break;
        }
        case ItemLabel::Picture: {
          PictureItem item;
          item.prov.push_back(provenance(cluster, 0, false));
          NodeRef ref = doc.add_item(std::move(item), sections.current());
          emit_caption_for(ref, cluster.id);
          break;
        }
        default: {
          TextItem item;
          item.label = label;
          const char sep = label == ItemLabel::Code ? '\n' : ' ';
          item.text = cluster_text(cluster, page.cells, sep);
          if (item.text.empty() && label != ItemLabel::Formula) break;
          item.prov.push_back(provenance(cluster, item.text.size(), true));
          doc.add_item(std::move(item), sections.current());
          break;
        }
      }
    }
  }

  if (warnings) {
    for (const PageResult& page : pages) {
      if (page.failed)
        warnings->push_back("page " + std::to_string(page.page_no) +
                            " failed a pipeline stage; its items were omitted");
    }
  }
  return doc;
}

}  // namespace docforge

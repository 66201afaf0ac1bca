// Random builder programs: valid sequences of add_item calls used by the
// round-trip, traversal, and chunker property tests.
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "docforge/document.hpp"

namespace docforge::testsupport {

inline std::string random_text(std::mt19937& rng) {
  static const char* kWords[] = {"alpha", "beta",  "gamma", "delta", "epsilon",
                                 "zeta",  "eta",   "theta", "iota",  "kappa",
                                 "42",    "3.14",  "naïve", "√2",    "a<b&c"};
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_int_distribution<int> pick(0, 14);
  std::string out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += kWords[pick(rng)];
  }
  return out;
}

inline Provenance random_prov(std::mt19937& rng, std::size_t text_len) {
  std::uniform_int_distribution<int> page(1, 9);
  std::uniform_real_distribution<double> coord(0.0, 600.0);
  std::bernoulli_distribution has_bbox(0.7);
  std::bernoulli_distribution has_span(0.5);
  Provenance p;
  p.page_no = page(rng);
  if (has_bbox(rng)) {
    p.bbox = BoundingBox::make(coord(rng), coord(rng), coord(rng), coord(rng));
  }
  if (has_span(rng) && text_len > 0) {
    std::uniform_int_distribution<std::size_t> at(0, text_len);
    std::size_t a = at(rng), b = at(rng);
    p.charspan = CharSpan{std::min(a, b), std::max(a, b)};
  }
  return p;
}

inline TableStructure random_table_structure(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(1, 4);
  TableStructure data;
  data.num_rows = dim(rng);
  data.num_cols = dim(rng);
  for (int r = 0; r < data.num_rows; ++r) {
    for (int c = 0; c < data.num_cols; ++c) {
      TableCellSpec cell;
      cell.start_row = r;
      cell.start_col = c;
      cell.role = r == 0 ? CellRole::ColumnHeader : CellRole::Body;
      cell.text = random_text(rng);
      data.cells.push_back(std::move(cell));
    }
  }
  return data;
}

/// Builds a random but always-valid document with up to `max_items` items.
inline DoclingDocument random_document(std::mt19937& rng, int max_items = 24) {
  DocumentOrigin origin{"application/pdf", "random.pdf", fnv1a_hash("random", 6)};
  DoclingDocument doc("random", origin);

  std::uniform_int_distribution<int> item_count(0, max_items);
  std::uniform_int_distribution<int> kind_die(0, 99);
  std::bernoulli_distribution coin(0.5);

  std::vector<NodeRef> open_groups;

  // Captions are owned by their target's caption ref, as assembly emits them.
  auto maybe_caption = [&](NodeRef target, AttachPoint) {
    if (!coin(rng)) return;
    TextItem cap;
    cap.label = ItemLabel::Caption;
    cap.text = random_text(rng);
    cap.prov.push_back(random_prov(rng, cap.text.size()));
    doc.add_item(std::move(cap), AttachPoint::caption_of(target));
  };

  const int n = item_count(rng);
  for (int i = 0; i < n; ++i) {
    AttachPoint at = AttachPoint::body();
    if (!open_groups.empty() && coin(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, open_groups.size() - 1);
      at = AttachPoint::under(open_groups[pick(rng)]);
    }

    const int kind = kind_die(rng);
    if (kind < 40) {
      TextItem t;
      std::uniform_int_distribution<int> label_die(0, 6);
      static const ItemLabel kLabels[] = {ItemLabel::Text,     ItemLabel::Text,
                                          ItemLabel::SectionHeader, ItemLabel::ListItem,
                                          ItemLabel::Footnote, ItemLabel::Code,
                                          ItemLabel::Formula};
      t.label = kLabels[label_die(rng)];
      if (t.label == ItemLabel::SectionHeader) {
        std::uniform_int_distribution<int> lvl(1, 6);
        t.level = lvl(rng);
      }
      t.text = random_text(rng);
      t.prov.push_back(random_prov(rng, t.text.size()));
      doc.add_item(std::move(t), at);
    } else if (kind < 55) {
      GroupItem g;
      g.label = coin(rng) ? ItemLabel::Group : ItemLabel::List;
      g.name = g.label == ItemLabel::List ? "list" : "group";
      open_groups.push_back(doc.add_item(std::move(g), at));
    } else if (kind < 72) {
      TableItem t;
      t.data = random_table_structure(rng);
      t.prov.push_back(random_prov(rng, 0));
      NodeRef ref = doc.add_item(std::move(t), at);
      maybe_caption(ref, at);
    } else if (kind < 88) {
      PictureItem p;
      p.prov.push_back(random_prov(rng, 0));
      NodeRef ref = doc.add_item(std::move(p), at);
      maybe_caption(ref, at);
    } else {
      TextItem t;
      t.label = coin(rng) ? ItemLabel::PageHeader : ItemLabel::PageFooter;
      t.text = random_text(rng);
      t.prov.push_back(random_prov(rng, t.text.size()));
      doc.add_item(std::move(t), AttachPoint::furniture());
    }
  }
  return doc;
}

}  // namespace docforge::testsupport

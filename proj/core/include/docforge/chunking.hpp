#pragma once

#include <memory>
#include <string>
#include <vector>

#include "docforge/document.hpp"

namespace docforge {

struct ChunkMeta {
  std::string doc_name;
  std::vector<std::string> headings;  // enclosing section headers, outermost first
  std::vector<NodeRef> item_refs;     // nonempty; traversal order
  std::vector<int> pages;             // sorted, deduplicated
  std::vector<BoundingBox> bboxes;

  bool operator==(const ChunkMeta&) const = default;
};

struct Chunk {
  std::string text;
  ChunkMeta meta;

  bool operator==(const Chunk&) const = default;
};

/// Base chunker contract: a finite ordered chunk stream whose item_refs
/// cover every chunkable body item exactly once, in traversal order.
class Chunker {
public:
  virtual ~Chunker() = default;
  virtual std::vector<Chunk> chunk(const DoclingDocument& doc) const = 0;
};

/// Items the coverage law quantifies over: body leaves that carry content
/// text. Headings (Title/SectionHeader) surface through chunk metadata
/// instead; captions are covered through the chunk of their target.
std::vector<NodeRef> chunkable_refs(const DoclingDocument& doc);

/// One chunk per body leaf item, except: consecutive ListItems of one List
/// group merge (newline-joined), captions fold into their target's chunk,
/// tables serialize as Markdown pipe text.
class HierarchicalChunker : public Chunker {
public:
  /// max_chars > 0 enables a soft split of merged list chunks at item
  /// boundaries; single items are never split.
  explicit HierarchicalChunker(std::size_t max_chars = 0) : max_chars_(max_chars) {}

  std::vector<Chunk> chunk(const DoclingDocument& doc) const override;

private:
  std::size_t max_chars_;
};

/// One chunk per chunkable item, no merging. Mostly useful as a reference
/// implementation of the contract.
class FlatChunker : public Chunker {
public:
  std::vector<Chunk> chunk(const DoclingDocument& doc) const override;
};

}  // namespace docforge

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "acgraph/csr.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

// Binary edge-list file: magic "ACGE", u64 edge count, then (u32 src, u32 dst)
// pairs, all little-endian.
inline constexpr char kEdgeListMagic[4] = {'A', 'C', 'G', 'E'};

struct IngestResult {
  CsrGraph graph;
  // Dense id -> id as written in the source. Identity when the source already
  // used a contiguous [0, n) range.
  std::vector<VertexId> raw_of_dense;
};

/// Whitespace-separated "u v" records, '#' comment lines. Ids are compacted
/// to a dense range (sorted source-id order).
IngestResult ingest_edge_list_text(std::istream& in, bool symmetrize);
IngestResult ingest_edge_list_text(const std::filesystem::path& path,
                                   bool symmetrize);

IngestResult ingest_edge_list_binary(std::istream& in, bool symmetrize);
IngestResult ingest_edge_list_binary(const std::filesystem::path& path,
                                     bool symmetrize);

/// Sniffs the magic bytes and dispatches to the text or binary reader.
IngestResult ingest_edge_list(const std::filesystem::path& path,
                              bool symmetrize);

void write_edge_list_text(std::ostream& out, const CsrGraph& g);
void write_edge_list_binary(std::ostream& out, const CsrGraph& g);

}  // namespace acgraph

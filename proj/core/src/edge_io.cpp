#include "acgraph/edge_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "acgraph/detail/bytes.hpp"
#include "acgraph/error.hpp"

namespace acgraph {

namespace {

struct RawEdge {
  std::uint64_t src;
  std::uint64_t dst;
};

// Compacts arbitrary 32-bit ids to a dense [0, n) range in sorted id order
// and builds the CSR.
IngestResult compact_and_build(std::vector<RawEdge>& raw, bool symmetrize) {
  std::vector<VertexId> ids;
  ids.reserve(raw.size() * 2);
  for (const RawEdge& e : raw) {
    ids.push_back(static_cast<VertexId>(e.src));
    ids.push_back(static_cast<VertexId>(e.dst));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto dense = [&ids](VertexId v) {
    return static_cast<VertexId>(
        std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) {
    edges.push_back({dense(static_cast<VertexId>(e.src)),
                     dense(static_cast<VertexId>(e.dst))});
  }
  raw.clear();
  raw.shrink_to_fit();

  IngestResult result;
  result.graph = CsrGraph::from_edges(static_cast<std::uint32_t>(ids.size()),
                                      edges, symmetrize);
  result.raw_of_dense = std::move(ids);
  return result;
}

std::uint64_t parse_id(const char*& p, const char* end, std::size_t line) {
  while (p != end && (*p == ' ' || *p == '\t')) ++p;
  std::uint64_t value = 0;
  auto [next, ec] = std::from_chars(p, end, value);
  if (ec == std::errc::invalid_argument || next == p) {
    throw ParseError(line, "expected a vertex id");
  }
  if (ec == std::errc::result_out_of_range ||
      value > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(line, "vertex id overflows 32 bits");
  }
  p = next;
  return value;
}

}  // namespace

IngestResult ingest_edge_list_text(std::istream& in, bool symmetrize) {
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
    if (p == end || *p == '#') continue;

    RawEdge e;
    e.src = parse_id(p, end, lineno);
    e.dst = parse_id(p, end, lineno);
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p != end) throw ParseError(lineno, "trailing characters after edge");
    raw.push_back(e);
  }
  return compact_and_build(raw, symmetrize);
}

IngestResult ingest_edge_list_text(const std::filesystem::path& path,
                                   bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ingest_edge_list_text(in, symmetrize);
}

IngestResult ingest_edge_list_binary(std::istream& in, bool symmetrize) {
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kEdgeListMagic)) {
    throw ParseError(1, "bad edge-list magic, expected ACGE");
  }
  std::uint64_t count = 0;
  if (!detail::read_le64(in, count)) {
    throw ParseError(1, "truncated edge-list header");
  }
  std::vector<RawEdge> raw;
  raw.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t src, dst;
    if (!detail::read_le32(in, src) || !detail::read_le32(in, dst)) {
      throw ParseError(i + 1, "truncated edge record");
    }
    raw.push_back({src, dst});
  }
  return compact_and_build(raw, symmetrize);
}

IngestResult ingest_edge_list_binary(const std::filesystem::path& path,
                                     bool symmetrize) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ingest_edge_list_binary(in, symmetrize);
}

IngestResult ingest_edge_list(const std::filesystem::path& path,
                              bool symmetrize) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open " + path.string());
  char magic[4] = {};
  probe.read(magic, 4);
  probe.close();
  if (std::equal(magic, magic + 4, kEdgeListMagic)) {
    return ingest_edge_list_binary(path, symmetrize);
  }
  return ingest_edge_list_text(path, symmetrize);
}

void write_edge_list_text(std::ostream& out, const CsrGraph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId t : g.neighbors(v)) {
      out << v << ' ' << t << '\n';
    }
  }
}

void write_edge_list_binary(std::ostream& out, const CsrGraph& g) {
  out.write(kEdgeListMagic, 4);
  detail::write_le64(out, g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId t : g.neighbors(v)) {
      detail::write_le32(out, v);
      detail::write_le32(out, t);
    }
  }
}

}  // namespace acgraph

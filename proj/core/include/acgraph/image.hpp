#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "acgraph/image_format.hpp"
#include "acgraph/reorder.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

struct BlockRef {
  std::uint32_t block_id;
  std::uint16_t page_count;  // > 1 only for lists larger than one block

  friend bool operator==(const BlockRef&, const BlockRef&) = default;
};

/// Read side of a GraphImage. The index, theta table and mini edge region are
/// memory resident; block data is read on demand by the caller's I/O path and
/// handed to neighbors(). No per-vertex degree is stored anywhere: large
/// degrees come from masked offset differences, mini degrees and offsets from
/// the theta-table algebra.
class OpenImage {
 public:
  static OpenImage open(const std::filesystem::path& dir);

  const ImageHeader& header() const { return header_; }
  std::uint64_t n_original() const { return header_.n_original; }
  VertexId first_mini_id() const {
    return static_cast<VertexId>(header_.n_reordered);
  }
  std::uint64_t total_ids() const { return header_.total_ids(); }
  std::uint32_t delta_deg() const { return header_.delta_deg; }
  std::uint64_t block_count() const { return header_.block_count; }

  bool is_mini(VertexId v) const { return v >= first_mini_id(); }
  bool is_virtual(VertexId v) const;

  /// Degree of a real vertex; rejects virtual ids.
  std::uint64_t degree_of(VertexId v) const;

  /// Edge index of a mini vertex's list within the mini region.
  std::uint64_t mini_offset(VertexId v) const;

  /// Adjacency of a real vertex. Large vertices need block_data covering
  /// their BlockRef run (page_count * 4096 bytes, 4-byte aligned); mini
  /// vertices are served from the resident mini region.
  std::span<const VertexId> neighbors(
      VertexId v, std::span<const std::byte> block_data = {}) const;

  BlockRef block_of(VertexId v) const;

  /// Offset of a large vertex in edge units, virtual flag masked.
  std::uint64_t edge_offset(VertexId v) const;

  // Per-block tables derived from the index at open time.
  std::uint16_t block_pages(std::uint32_t block) const {
    return block_pages_[block];
  }
  VertexId block_v_start(std::uint32_t block) const {
    return block_v_start_[block];
  }
  std::uint16_t block_vertex_count(std::uint32_t block) const {
    return block_v_count_[block];
  }
  std::uint16_t max_block_vertex_count() const {
    return max_block_v_count_;
  }

  const std::filesystem::path& blocks_path() const { return blocks_path_; }
  const std::vector<std::uint64_t>& index() const { return index_; }
  const std::vector<std::uint64_t>& theta() const { return theta_; }
  std::span<const VertexId> mini_data() const { return mini_data_; }

  /// Loads v2id.bin (original ids, kInvalidVertex for virtual entries). Used
  /// only for id translation at run start and end.
  std::vector<VertexId> load_v2id() const;

 private:
  ImageHeader header_;
  std::filesystem::path dir_;
  std::filesystem::path blocks_path_;
  std::vector<std::uint64_t> index_;      // n_reordered + 1
  std::vector<std::uint64_t> theta_;      // delta_deg + 1
  std::vector<std::uint64_t> mini_skip_;  // S_d per degree class
  std::vector<VertexId> mini_data_;
  std::vector<std::uint16_t> block_pages_;   // 0 for run-continuation blocks
  std::vector<VertexId> block_v_start_;      // kInvalidVertex when empty
  std::vector<std::uint16_t> block_v_count_;
  std::uint16_t max_block_v_count_ = 0;

  std::uint64_t mini_degree(VertexId v) const;
  void check_real(VertexId v, const char* op) const;
};

}  // namespace acgraph

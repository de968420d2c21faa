#include "acgraph/image.hpp"

#include <cstring>
#include <fstream>
#include <string>

#include "acgraph/detail/bytes.hpp"
#include "acgraph/error.hpp"

namespace acgraph {

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<unsigned char> buf(size);
  if (size > 0 && !in.read(reinterpret_cast<char*>(buf.data()),
                           static_cast<std::streamsize>(size))) {
    throw IoError("short read on " + path.string());
  }
  return buf;
}

}  // namespace

OpenImage OpenImage::open(const std::filesystem::path& dir) {
  OpenImage img;
  img.dir_ = dir;
  img.blocks_path_ = dir / image_file::kBlocks;

  {
    auto buf = read_file(dir / image_file::kHeader);
    if (buf.size() < 52 || std::memcmp(buf.data(), kImageMagic, 4) != 0) {
      throw IoError("not a GraphImage: " + dir.string());
    }
    const unsigned char* p = buf.data() + 4;
    img.header_.version = detail::load_le32(p); p += 4;
    if (img.header_.version != kImageVersion) {
      throw IoError("unsupported image version " +
                    std::to_string(img.header_.version));
    }
    img.header_.n_original = detail::load_le64(p); p += 8;
    img.header_.n_reordered = detail::load_le64(p); p += 8;
    img.header_.n_mini = detail::load_le64(p); p += 8;
    img.header_.delta_deg = detail::load_le32(p); p += 4;
    img.header_.block_count = detail::load_le64(p); p += 8;
    img.header_.edge_count = detail::load_le64(p);
  }

  {
    auto buf = read_file(dir / image_file::kIndex);
    const std::size_t want = (img.header_.n_reordered + 1) * 8;
    if (buf.size() != want) {
      throw IoError("index.bin size mismatch in " + dir.string());
    }
    img.index_.resize(img.header_.n_reordered + 1);
    for (std::size_t i = 0; i < img.index_.size(); ++i) {
      img.index_[i] = detail::load_le64(buf.data() + i * 8);
    }
    const std::uint64_t sentinel = img.header_.block_count * kEdgesPerBlock;
    if (img.index_.back() != sentinel) {
      throw IoError("index sentinel mismatch in " + dir.string());
    }
  }

  {
    auto buf = read_file(dir / image_file::kTheta);
    if (buf.size() != (img.header_.delta_deg + 1) * 8ull) {
      throw IoError("theta.bin size mismatch in " + dir.string());
    }
    img.theta_.resize(img.header_.delta_deg + 1);
    for (std::size_t i = 0; i < img.theta_.size(); ++i) {
      img.theta_[i] = detail::load_le64(buf.data() + i * 8);
    }
  }

  // S_d = sum over classes above d of (class size * class degree); the skip
  // into the mini region taken by higher-degree classes.
  img.mini_skip_.assign(img.header_.delta_deg + 1, 0);
  for (std::uint32_t d = img.header_.delta_deg; d > 0; --d) {
    img.mini_skip_[d - 1] =
        img.mini_skip_[d] +
        (img.theta_[d - 1] - img.theta_[d]) * d;
  }

  {
    auto buf = read_file(dir / image_file::kMini);
    if (buf.size() % 4 != 0) {
      throw IoError("mini.bin size not a multiple of 4 in " + dir.string());
    }
    img.mini_data_.resize(buf.size() / 4);
    for (std::size_t i = 0; i < img.mini_data_.size(); ++i) {
      img.mini_data_[i] = detail::load_le32(buf.data() + i * 4);
    }
    if (img.mini_data_.size() != img.mini_skip_[0]) {
      throw IoError("mini region size disagrees with theta table in " +
                    dir.string());
    }
  }

  // Derive per-block tables from the index.
  img.block_pages_.assign(img.header_.block_count, 0);
  img.block_v_start_.assign(img.header_.block_count, kInvalidVertex);
  img.block_v_count_.assign(img.header_.block_count, 0);
  for (VertexId v = 0; v < img.first_mini_id(); ++v) {
    if (img.is_virtual(v)) continue;
    const std::uint64_t off = masked(img.index_[v]);
    const std::uint64_t deg = masked(img.index_[v + 1]) - off;
    const auto b = static_cast<std::uint32_t>(off / kEdgesPerBlock);
    const auto pages = static_cast<std::uint16_t>(
        deg == 0 ? 1 : (deg + kEdgesPerBlock - 1) / kEdgesPerBlock);
    if (img.block_pages_[b] < pages) img.block_pages_[b] = pages;
    if (img.block_v_start_[b] == kInvalidVertex) img.block_v_start_[b] = v;
    ++img.block_v_count_[b];
    if (img.block_v_count_[b] > img.max_block_v_count_) {
      img.max_block_v_count_ = img.block_v_count_[b];
    }
  }
  return img;
}

bool OpenImage::is_virtual(VertexId v) const {
  if (v >= total_ids()) {
    throw InvariantError("is_virtual: id " + std::to_string(v) +
                         " out of range");
  }
  return v < first_mini_id() && (index_[v] & kVirtualFlag) != 0;
}

void OpenImage::check_real(VertexId v, const char* op) const {
  if (is_virtual(v)) {
    throw InvariantError(std::string(op) + ": id " + std::to_string(v) +
                         " is virtual");
  }
}

std::uint64_t OpenImage::mini_degree(VertexId v) const {
  // Largest degree class whose id range still contains v: walk down from
  // delta_deg while the next-lower class boundary is at or below v.
  std::uint32_t d = header_.delta_deg;
  while (d > 0 && theta_[d - 1] <= v) --d;
  return d;
}

std::uint64_t OpenImage::degree_of(VertexId v) const {
  check_real(v, "degree_of");
  if (is_mini(v)) return mini_degree(v);
  return masked(index_[v + 1]) - masked(index_[v]);
}

std::uint64_t OpenImage::mini_offset(VertexId v) const {
  if (!is_mini(v)) {
    throw InvariantError("mini_offset: id " + std::to_string(v) +
                         " is not a mini vertex");
  }
  const std::uint64_t d = mini_degree(v);
  return (v - theta_[d]) * d + mini_skip_[d];
}

std::uint64_t OpenImage::edge_offset(VertexId v) const {
  check_real(v, "edge_offset");
  if (is_mini(v)) {
    throw InvariantError("edge_offset: id " + std::to_string(v) +
                         " is a mini vertex");
  }
  return masked(index_[v]);
}

BlockRef OpenImage::block_of(VertexId v) const {
  const std::uint64_t off = edge_offset(v);
  const std::uint64_t deg = masked(index_[v + 1]) - off;
  return {static_cast<std::uint32_t>(off / kEdgesPerBlock),
          static_cast<std::uint16_t>(
              deg == 0 ? 1 : (deg + kEdgesPerBlock - 1) / kEdgesPerBlock)};
}

std::span<const VertexId> OpenImage::neighbors(
    VertexId v, std::span<const std::byte> block_data) const {
  check_real(v, "neighbors");
  if (is_mini(v)) {
    return {mini_data_.data() + mini_offset(v), mini_degree(v)};
  }
  const std::uint64_t off = masked(index_[v]);
  const std::uint64_t deg = masked(index_[v + 1]) - off;
  const BlockRef ref = block_of(v);
  const std::size_t want = static_cast<std::size_t>(ref.page_count) *
                           kBlockBytes;
  if (block_data.size() != want) {
    throw InvariantError(
        "neighbors: block data for id " + std::to_string(v) + " covers " +
        std::to_string(block_data.size()) + " bytes, expected " +
        std::to_string(want));
  }
  if (reinterpret_cast<std::uintptr_t>(block_data.data()) % alignof(VertexId) !=
      0) {
    throw InvariantError("neighbors: block data misaligned");
  }
  const std::uint64_t within =
      off - static_cast<std::uint64_t>(ref.block_id) * kEdgesPerBlock;
  return {reinterpret_cast<const VertexId*>(block_data.data()) + within,
          deg};
}

std::vector<VertexId> OpenImage::load_v2id() const {
  auto buf = read_file(dir_ / image_file::kV2id);
  if (buf.size() != total_ids() * 4) {
    throw IoError("v2id.bin size mismatch in " + dir_.string());
  }
  std::vector<VertexId> v2id(total_ids());
  for (std::size_t i = 0; i < v2id.size(); ++i) {
    v2id[i] = detail::load_le32(buf.data() + i * 4);
  }
  return v2id;
}

}  // namespace acgraph

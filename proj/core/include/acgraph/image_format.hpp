#pragma once

#include <cstdint>
#include <filesystem>

namespace acgraph {

// GraphImage directory layout, all little-endian:
//   header     magic "ACG1", u32 version, u64 n_original, u64 n_reordered,
//              u64 n_mini, u32 delta_deg, u64 block_count, u64 edge_count
//   blocks.bin block_count x 4096 bytes of u32 reordered targets
//   index.bin  (n_reordered + 1) x u64 edge-unit offsets, bit 63 = virtual,
//              closing sentinel = block_count * 1024
//   theta.bin  (delta_deg + 1) x u64, indexed by degree 0..delta_deg
//   mini.bin   packed u32 targets of mini vertices in id order
//   v2id.bin   (n_reordered + n_mini) x u32 original ids, 0xFFFFFFFF for
//              virtual entries

inline constexpr char kImageMagic[4] = {'A', 'C', 'G', '1'};
inline constexpr std::uint32_t kImageVersion = 1;

struct ImageHeader {
  std::uint32_t version = kImageVersion;
  std::uint64_t n_original = 0;
  std::uint64_t n_reordered = 0;  // large + virtual entries
  std::uint64_t n_mini = 0;
  std::uint32_t delta_deg = 0;
  std::uint64_t block_count = 0;
  std::uint64_t edge_count = 0;

  std::uint64_t total_ids() const { return n_reordered + n_mini; }
};

namespace image_file {
inline constexpr const char* kHeader = "header";
inline constexpr const char* kBlocks = "blocks.bin";
inline constexpr const char* kIndex = "index.bin";
inline constexpr const char* kTheta = "theta.bin";
inline constexpr const char* kMini = "mini.bin";
inline constexpr const char* kV2id = "v2id.bin";
}  // namespace image_file

struct GraphImageDescriptor {
  std::filesystem::path dir;
  ImageHeader header;
};

}  // namespace acgraph

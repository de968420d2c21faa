#include "acgraph/image_write.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "acgraph/detail/bytes.hpp"
#include "acgraph/error.hpp"

namespace acgraph {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  return out;
}

void check_stream(const std::ofstream& out,
                  const std::filesystem::path& path) {
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

GraphImageDescriptor write_image(const std::filesystem::path& dir,
                                 const CsrGraph& g, const Placement& placement,
                                 const ReorderMap& map,
                                 const VertexIndexImage& index,
                                 const ThetaTable& theta) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  ImageHeader h;
  h.n_original = g.vertex_count();
  h.n_reordered = map.first_mini_id;
  h.n_mini = map.old_of_new.size() - map.first_mini_id;
  h.delta_deg = theta.delta_deg();
  h.block_count = placement.block_count();
  h.edge_count = g.edge_count();

  {
    auto path = dir / image_file::kHeader;
    auto out = open_out(path);
    out.write(kImageMagic, 4);
    detail::write_le32(out, h.version);
    detail::write_le64(out, h.n_original);
    detail::write_le64(out, h.n_reordered);
    detail::write_le64(out, h.n_mini);
    detail::write_le32(out, h.delta_deg);
    detail::write_le64(out, h.block_count);
    detail::write_le64(out, h.edge_count);
    check_stream(out, path);
  }

  {
    auto path = dir / image_file::kBlocks;
    auto out = open_out(path);
    // Per-block write list: (slot, first source edge, destination edge).
    struct Chunk {
      const VertexSlot* slot;
      std::uint64_t src_edge;
      std::uint32_t dst_edge;
    };
    std::vector<std::vector<Chunk>> by_block(placement.block_count());
    for (const VertexSlot& s : placement.slots) {
      const std::uint64_t deg = g.degree(s.vertex);
      for (std::uint32_t p = 0; p < s.page_count; ++p) {
        const std::uint64_t src = static_cast<std::uint64_t>(p) *
                                  kEdgesPerBlock;
        if (src >= deg) break;
        by_block[s.block_id + p].push_back(
            {&s, src, p == 0 ? s.slot_offset : 0});
      }
    }
    std::vector<unsigned char> page(kBlockBytes);
    for (std::uint32_t b = 0; b < placement.block_count(); ++b) {
      std::fill(page.begin(), page.end(), 0);
      for (const Chunk& c : by_block[b]) {
        auto nbrs = g.neighbors(c.slot->vertex);
        const std::uint64_t take =
            std::min<std::uint64_t>(nbrs.size() - c.src_edge,
                                    kEdgesPerBlock - c.dst_edge);
        for (std::uint64_t i = 0; i < take; ++i) {
          detail::store_le32(map.new_of_old[nbrs[c.src_edge + i]],
                             page.data() + (c.dst_edge + i) * 4);
        }
      }
      out.write(reinterpret_cast<const char*>(page.data()), kBlockBytes);
    }
    check_stream(out, path);
  }

  {
    auto path = dir / image_file::kIndex;
    auto out = open_out(path);
    for (std::uint64_t entry : index.index) detail::write_le64(out, entry);
    check_stream(out, path);
  }

  {
    auto path = dir / image_file::kTheta;
    auto out = open_out(path);
    for (std::uint64_t entry : theta.theta) detail::write_le64(out, entry);
    check_stream(out, path);
  }

  {
    auto path = dir / image_file::kMini;
    auto out = open_out(path);
    for (std::uint64_t id = map.first_mini_id; id < map.old_of_new.size();
         ++id) {
      for (VertexId t : g.neighbors(map.old_of_new[id])) {
        detail::write_le32(out, map.new_of_old[t]);
      }
    }
    check_stream(out, path);
  }

  {
    auto path = dir / image_file::kV2id;
    auto out = open_out(path);
    for (VertexId original : map.old_of_new) detail::write_le32(out, original);
    check_stream(out, path);
  }

  return {dir, h};
}

GraphImageDescriptor build_image(const CsrGraph& g, const PartitionPlan& plan,
                                 const std::filesystem::path& dir) {
  Classification cls = classify(g, plan.degree_threshold);
  Placement placement = partition_lplf(g, cls.large, plan);
  auto [map, index] = reorder_and_virtualize(placement, g, cls.mini);

  std::vector<std::uint32_t> mini_degrees;
  mini_degrees.reserve(map.old_of_new.size() - map.first_mini_id);
  for (std::uint64_t id = map.first_mini_id; id < map.old_of_new.size();
       ++id) {
    mini_degrees.push_back(
        static_cast<std::uint32_t>(g.degree(map.old_of_new[id])));
  }
  ThetaTable theta =
      build_theta(mini_degrees, plan.degree_threshold, map.first_mini_id);

  return write_image(dir, g, placement, map, index, theta);
}

}  // namespace acgraph

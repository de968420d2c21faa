#pragma once

#include <filesystem>

#include "acgraph/csr.hpp"
#include "acgraph/image_format.hpp"
#include "acgraph/partition.hpp"
#include "acgraph/reorder.hpp"

namespace acgraph {

/// Serializes preprocessed artifacts to a GraphImage directory. Block
/// padding is zeroed so identical inputs produce byte-identical images.
GraphImageDescriptor write_image(const std::filesystem::path& dir,
                                 const CsrGraph& g, const Placement& placement,
                                 const ReorderMap& map,
                                 const VertexIndexImage& index,
                                 const ThetaTable& theta);

/// Full preprocessing pipeline: classify, pack, reorder, build theta, write.
GraphImageDescriptor build_image(const CsrGraph& g, const PartitionPlan& plan,
                                 const std::filesystem::path& dir);

}  // namespace acgraph

#pragma once

#include <cstdint>
#include <functional>

#include "hgseg/graph.hpp"
#include "hgseg/image_io.hpp"

namespace hgseg {

/// Maps a squared RGB distance to an integer edge weight. An empty quantizer
/// selects round-half-up of the Euclidean distance, computed by the
/// vectorized kernels.
using WeightQuantizer = std::function<Weight(std::uint32_t squared_distance)>;

/// 4-adjacency graph of an image. Vertex index is row * width + col; edges
/// are created in row-major pixel order, right neighbour before the one
/// below.
EdgeWeightedGraph build_grid_graph(const RgbImage& image, const WeightQuantizer& quantizer = {});

}  // namespace hgseg

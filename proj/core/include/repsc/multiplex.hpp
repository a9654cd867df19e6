#pragma once

#include <string>
#include <utility>

#include "repsc/graph.hpp"

namespace repsc {

/// Weighted multiplex network in "layer i j w" text form (1-based layer and
/// node ids, '#' comments). Two disjoint inclusive layer ranges feed the
/// representation and similarity graphs.
struct MultiplexSpec {
  std::string path;
  std::pair<int, int> representation_layers{1, 1};
  std::pair<int, int> similarity_layers{2, 2};
  int knn = 5;
  int n_nodes = -1;  // inferred from the largest id when negative
  void validate() const;
};

struct MultiplexGraphs {
  Graph representation;  // self-loops added (every node represents itself)
  Graph similarity;      // no self-loops
  int empty_layers = 0;  // layers in a range that contributed no edge
};

/// Per layer, each node keeps directed edges to its knn heaviest neighbors
/// (weight ties broken toward the lower node id), the layer is symmetrized
/// by union, and layers in a range are OR-combined.
MultiplexGraphs ingest_multiplex(const MultiplexSpec& spec);

}  // namespace repsc

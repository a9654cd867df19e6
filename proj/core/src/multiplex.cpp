#include "repsc/multiplex.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "repsc/errors.hpp"

namespace repsc {

void MultiplexSpec::validate() const {
  if (knn < 1) throw InvalidConfigError("knn must be at least 1");
  auto check_range = [](std::pair<int, int> r, const char* name) {
    if (r.first < 1 || r.second < r.first)
      throw InvalidConfigError(std::string(name) + " layer range must satisfy 1 <= lo <= hi");
  };
  check_range(representation_layers, "representation");
  check_range(similarity_layers, "similarity");
  const bool overlap = representation_layers.first <= similarity_layers.second &&
                       similarity_layers.first <= representation_layers.second;
  if (overlap) throw InvalidConfigError("representation and similarity layer ranges must be disjoint");
}

namespace {

struct Record {
  int layer;
  int i;
  int j;
  double w;
};

std::vector<Record> parse_records(const std::string& path, int& max_node, int& max_layer) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open multiplex file: " + path);
  std::vector<Record> records;
  std::string line;
  int line_no = 0;
  max_node = 0;
  max_layer = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    Record rec{};
    if (!(ss >> rec.layer >> rec.i >> rec.j >> rec.w))
      throw ParseError("multiplex line " + std::to_string(line_no) + ": expected \"layer i j w\"");
    if (rec.layer < 1 || rec.i < 1 || rec.j < 1)
      throw ParseError("multiplex line " + std::to_string(line_no) + ": ids are 1-based positive integers");
    max_node = std::max(max_node, std::max(rec.i, rec.j));
    max_layer = std::max(max_layer, rec.layer);
    records.push_back(rec);
  }
  return records;
}

// Union over a layer range of per-layer kNN graphs.
void accumulate_range(const std::vector<std::vector<Record>>& by_layer, std::pair<int, int> range,
                      int knn, int n, Eigen::MatrixXd& adj, int& empty_layers) {
  for (int layer = range.first; layer <= range.second; ++layer) {
    // Undirected candidate weights; duplicate pairs keep the heavier weight.
    std::vector<std::map<int, double>> cand(n);
    bool any = false;
    if (layer - 1 < static_cast<int>(by_layer.size())) {
      for (const Record& rec : by_layer[layer - 1]) {
        if (rec.i == rec.j) continue;  // a node is never its own nearest neighbor
        const int a = rec.i - 1, b = rec.j - 1;
        auto keep_max = [&](int x, int y) {
          auto [it, inserted] = cand[x].try_emplace(y, rec.w);
          if (!inserted && rec.w > it->second) it->second = rec.w;
        };
        keep_max(a, b);
        keep_max(b, a);
        any = true;
      }
    }
    if (!any) {
      ++empty_layers;
      continue;
    }
    for (int u = 0; u < n; ++u) {
      std::vector<std::pair<int, double>> nb(cand[u].begin(), cand[u].end());
      std::stable_sort(nb.begin(), nb.end(), [](const auto& lhs, const auto& rhs) {
        if (lhs.second != rhs.second) return lhs.second > rhs.second;
        return lhs.first < rhs.first;
      });
      const int keep = std::min<int>(knn, static_cast<int>(nb.size()));
      for (int t = 0; t < keep; ++t) {
        adj(u, nb[t].first) = 1.0;
        adj(nb[t].first, u) = 1.0;  // symmetrize by union
      }
    }
  }
}

}  // namespace

MultiplexGraphs ingest_multiplex(const MultiplexSpec& spec) {
  spec.validate();
  int max_node = 0, max_layer = 0;
  auto records = parse_records(spec.path, max_node, max_layer);

  const int n = spec.n_nodes > 0 ? spec.n_nodes : max_node;
  if (n < max_node)
    throw ParseError("multiplex file references node " + std::to_string(max_node) +
                     " beyond declared count " + std::to_string(n));
  if (n == 0) throw ParseError("multiplex file contains no records and no node count was declared");

  std::vector<std::vector<Record>> by_layer(max_layer);
  for (const Record& rec : records) by_layer[rec.layer - 1].push_back(rec);

  int empty_layers = 0;
  Eigen::MatrixXd rep_adj = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sim_adj = Eigen::MatrixXd::Zero(n, n);
  accumulate_range(by_layer, spec.representation_layers, spec.knn, n, rep_adj, empty_layers);
  accumulate_range(by_layer, spec.similarity_layers, spec.knn, n, sim_adj, empty_layers);

  rep_adj.diagonal().setOnes();

  MultiplexGraphs out{Graph::from_adjacency(std::move(rep_adj), true),
                      Graph::from_adjacency(std::move(sim_adj), false), empty_layers};
  return out;
}

}  // namespace repsc

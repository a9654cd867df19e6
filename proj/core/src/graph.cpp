#include "repsc/graph.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "repsc/errors.hpp"

namespace repsc {

Graph::Graph(int n_nodes, bool allows_self_loops)
    : n_(n_nodes), allows_self_loops_(allows_self_loops), adj_(Eigen::MatrixXd::Zero(n_nodes, n_nodes)) {
  if (n_nodes <= 0) throw InvalidConfigError("graph needs at least one node");
}

Graph Graph::from_adjacency(Eigen::MatrixXd adjacency, bool allows_self_loops) {
  const auto n = adjacency.rows();
  if (n == 0 || adjacency.cols() != n) throw InvalidConfigError("adjacency matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = adjacency(i, j);
      if (v != 0.0 && v != 1.0) throw InvalidConfigError("adjacency entries must be exactly 0 or 1");
      if (adjacency(j, i) != v) throw InvalidConfigError("adjacency matrix must be symmetric");
    }
    if (!allows_self_loops && adjacency(i, i) != 0.0)
      throw InvalidConfigError("self-loop at node " + std::to_string(i + 1) + " in a graph that forbids them");
  }
  Graph g;
  g.n_ = static_cast<int>(n);
  g.allows_self_loops_ = allows_self_loops;
  g.adj_ = std::move(adjacency);
  return g;
}

std::vector<std::vector<int>> Graph::adjacency_sets() const {
  std::vector<std::vector<int>> sets(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (adj_(i, j) != 0.0) sets[i].push_back(j);
  return sets;
}

ClusterAssignment::ClusterAssignment(std::vector<int> labels_0based, int n_clusters)
    : labels_(std::move(labels_0based)), k_(n_clusters) {
  if (k_ < 1) throw InvalidConfigError("cluster count must be at least 1");
  if (labels_.empty()) throw InvalidConfigError("assignment needs at least one node");
  for (int l : labels_)
    if (l < 0 || l >= k_) throw InvalidConfigError("cluster label out of range [0, K)");
}

ClusterAssignment ClusterAssignment::from_labels_1based(const std::vector<int>& labels, int n_clusters) {
  std::vector<int> shifted(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) shifted[i] = labels[i] - 1;
  return ClusterAssignment(std::move(shifted), n_clusters);
}

std::vector<int> ClusterAssignment::labels_1based() const {
  std::vector<int> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[i] = labels_[i] + 1;
  return out;
}

std::vector<int> ClusterAssignment::cluster_sizes() const {
  std::vector<int> sizes(k_, 0);
  for (int l : labels_) ++sizes[l];
  return sizes;
}

ClusterAssignment ground_truth_assignment(int n_nodes, int n_clusters) {
  if (n_clusters < 2) throw InvalidConfigError("ground truth needs K >= 2");
  if (n_nodes <= 0 || n_nodes % n_clusters != 0)
    throw InvalidConfigError("K=" + std::to_string(n_clusters) + " does not divide N=" + std::to_string(n_nodes));
  const int block = n_nodes / n_clusters;
  std::vector<int> labels(n_nodes);
  for (int i = 0; i < n_nodes; ++i) labels[i] = i / block;
  return ClusterAssignment(std::move(labels), n_clusters);
}

ClusterAssignment near_equal_blocks(int n_nodes, int n_groups) {
  if (n_groups < 1 || n_groups > n_nodes)
    throw InvalidConfigError("group count must be in [1, N]");
  std::vector<int> labels(n_nodes);
  for (int g = 0; g < n_groups; ++g) {
    const int lo = static_cast<int>(static_cast<long long>(g) * n_nodes / n_groups);
    const int hi = static_cast<int>(static_cast<long long>(g + 1) * n_nodes / n_groups);
    for (int i = lo; i < hi; ++i) labels[i] = g;
  }
  return ClusterAssignment(std::move(labels), n_groups);
}

Eigen::MatrixXd indicator_matrix(const ClusterAssignment& assignment) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(assignment.n_nodes(), assignment.n_clusters());
  for (int i = 0; i < assignment.n_nodes(); ++i) theta(i, assignment.label(i)) = 1.0;
  return theta;
}

Eigen::MatrixXd h_matrix(const ClusterAssignment& assignment) {
  const auto sizes = assignment.cluster_sizes();
  for (int k = 0; k < assignment.n_clusters(); ++k)
    if (sizes[k] == 0) throw DegenerateClusterError("cluster " + std::to_string(k + 1) + " is empty");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(assignment.n_nodes(), assignment.n_clusters());
  for (int i = 0; i < assignment.n_nodes(); ++i) {
    const int k = assignment.label(i);
    h(i, k) = 1.0 / std::sqrt(static_cast<double>(sizes[k]));
  }
  return h;
}

Eigen::MatrixXd t_matrix(const ClusterAssignment& assignment, const Eigen::VectorXd& degrees) {
  const int n = assignment.n_nodes();
  if (degrees.size() != n) throw InvalidConfigError("degree vector length does not match assignment");
  Eigen::VectorXd volumes = Eigen::VectorXd::Zero(assignment.n_clusters());
  for (int i = 0; i < n; ++i) {
    if (degrees(i) < 0.0) throw InvalidConfigError("degrees must be nonnegative");
    volumes(assignment.label(i)) += degrees(i);
  }
  for (int k = 0; k < assignment.n_clusters(); ++k)
    if (volumes(k) <= 0.0) throw DegenerateClusterError("cluster " + std::to_string(k + 1) + " has zero volume");
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, assignment.n_clusters());
  for (int i = 0; i < n; ++i) {
    const int k = assignment.label(i);
    t(i, k) = 1.0 / std::sqrt(volumes(k));
  }
  return t;
}

namespace {

// "# nodes=N" comments pin the node count; other comments are skipped.
bool parse_nodes_directive(const std::string& line, int& n_out) {
  auto pos = line.find("nodes=");
  if (pos == std::string::npos) return false;
  try {
    n_out = std::stoi(line.substr(pos + 6));
  } catch (const std::exception&) {
    return false;
  }
  return n_out > 0;
}

}  // namespace

Graph read_edge_list(std::istream& in, bool allows_self_loops, int n_nodes_hint) {
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int line_no = 0;
  int n = n_nodes_hint;
  int max_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      int declared = 0;
      if (n < 0 && parse_nodes_directive(line, declared)) n = declared;
      continue;
    }
    std::istringstream ss(line);
    int i = 0, j = 0;
    if (!(ss >> i >> j))
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected \"i j\"");
    std::string rest;
    if (ss >> rest)
      throw ParseError("edge list line " + std::to_string(line_no) + ": trailing content \"" + rest + "\"");
    if (i < 1 || j < 1)
      throw ParseError("edge list line " + std::to_string(line_no) + ": node ids are 1-based positive integers");
    if (i == j && !allows_self_loops)
      throw ParseError("edge list line " + std::to_string(line_no) + ": self-loop not permitted for this graph");
    max_id = std::max(max_id, std::max(i, j));
    edges.emplace_back(i - 1, j - 1);
  }
  if (n < 0) n = max_id;
  if (n < max_id) throw ParseError("edge list references node " + std::to_string(max_id) +
                                   " beyond declared count " + std::to_string(n));
  if (n == 0) throw ParseError("edge list is empty and no node count was declared");
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : edges) {
    adj(i, j) = 1.0;
    adj(j, i) = 1.0;
  }
  return Graph::from_adjacency(std::move(adj), allows_self_loops);
}

Graph read_edge_list_file(const std::string& path, bool allows_self_loops, int n_nodes_hint) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list file: " + path);
  return read_edge_list(in, allows_self_loops, n_nodes_hint);
}

void write_edge_list(const Graph& graph, std::ostream& out) {
  out << "# nodes=" << graph.n_nodes() << "\n";
  for (int i = 0; i < graph.n_nodes(); ++i)
    for (int j = i; j < graph.n_nodes(); ++j)
      if (graph.has_edge(i, j)) out << (i + 1) << " " << (j + 1) << "\n";
}

void write_edge_list_file(const Graph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  write_edge_list(graph, out);
}

ClusterAssignment read_labels_file(const std::string& path, int n_clusters_hint) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open labels file: " + path);
  std::string line;
  int line_no = 0;
  std::vector<std::pair<int, int>> entries;
  int max_node = 0, max_label = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    int node = 0, label = 0;
    if (!(ss >> node >> label) || node < 1 || label < 1)
      throw ParseError("labels file line " + std::to_string(line_no) + ": expected 1-based \"node label\"");
    entries.emplace_back(node, label);
    max_node = std::max(max_node, node);
    max_label = std::max(max_label, label);
  }
  const int k = n_clusters_hint > 0 ? n_clusters_hint : max_label;
  std::vector<int> labels(max_node, -1);
  for (auto [node, label] : entries) labels[node - 1] = label - 1;
  for (int i = 0; i < max_node; ++i)
    if (labels[i] < 0) throw ParseError("labels file missing node " + std::to_string(i + 1));
  return ClusterAssignment(std::move(labels), k);
}

void write_labels_file(const ClusterAssignment& assignment, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  for (int i = 0; i < assignment.n_nodes(); ++i) out << (i + 1) << " " << (assignment.label(i) + 1) << "\n";
}

}  // namespace repsc

#include "repsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "repsc/errors.hpp"

namespace repsc {

namespace {

void require_matching(const Graph& g, const ClusterAssignment& a) {
  if (g.n_nodes() != a.n_nodes()) throw InvalidConfigError("graph and assignment disagree on N");
}

// Per-node representative counts per cluster (N x K, integer-valued).
Eigen::MatrixXi representative_counts(const Graph& representation, const ClusterAssignment& assignment) {
  const int n = representation.n_nodes();
  const int k = assignment.n_clusters();
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(n, k);
  const auto sets = representation.adjacency_sets();
  for (int i = 0; i < n; ++i)
    for (int j : sets[i]) ++counts(i, assignment.label(j));
  return counts;
}

std::vector<int> nonempty_cluster_sizes(const ClusterAssignment& assignment) {
  auto sizes = assignment.cluster_sizes();
  for (int k = 0; k < assignment.n_clusters(); ++k)
    if (sizes[k] == 0) throw DegenerateClusterError("cluster " + std::to_string(k + 1) + " is empty");
  return sizes;
}

// Crossing edge count per cluster: each edge with exactly one endpoint in
// C_k contributes once to cut[k] (and once to the other endpoint's cluster).
std::vector<double> crossing_edges(const Graph& similarity, const ClusterAssignment& assignment) {
  std::vector<double> cut(assignment.n_clusters(), 0.0);
  const auto sets = similarity.adjacency_sets();
  for (int i = 0; i < similarity.n_nodes(); ++i) {
    const int ci = assignment.label(i);
    for (int j : sets[i])
      if (assignment.label(j) != ci) cut[ci] += 1.0;
  }
  return cut;
}

// Minimum-cost perfect assignment on an n x n cost matrix via shortest
// augmenting paths with potentials (O(n^3)). Returns column -> row.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_to_row(n);
  for (int j = 1; j <= n; ++j) col_to_row[j - 1] = match[j] - 1;
  return col_to_row;
}

}  // namespace

BalanceReport node_balance(const Graph& representation, const ClusterAssignment& assignment) {
  require_matching(representation, assignment);
  const auto counts = representative_counts(representation, assignment);
  const int n = representation.n_nodes();

  BalanceReport report;
  report.per_node.resize(n);
  for (int i = 0; i < n; ++i) {
    const int lo = counts.row(i).minCoeff();
    const int hi = counts.row(i).maxCoeff();
    double rho;
    if (hi == 0)
      rho = 1.0;  // 0/0 convention: no representatives anywhere
    else if (lo == 0)
      rho = 0.0;
    else
      rho = static_cast<double>(lo) / static_cast<double>(hi);
    report.per_node(i) = rho;
  }
  report.average = report.per_node.mean();
  return report;
}

ConstraintCheck representation_constraint_satisfied(const Graph& representation,
                                                    const ClusterAssignment& assignment,
                                                    double tolerance) {
  require_matching(representation, assignment);
  const auto sizes = nonempty_cluster_sizes(assignment);
  const auto counts = representative_counts(representation, assignment);
  const int n = representation.n_nodes();
  const int k = assignment.n_clusters();

  double max_dev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double total = counts.row(i).sum();
    for (int c = 0; c < k; ++c) {
      const double dev = std::abs(static_cast<double>(counts(i, c)) / sizes[c] - total / n);
      max_dev = std::max(max_dev, dev);
    }
  }
  return ConstraintCheck{max_dev <= tolerance, max_dev};
}

double constraint_deviation_nodes(const Graph& representation, const ClusterAssignment& assignment) {
  require_matching(representation, assignment);
  const auto sizes = nonempty_cluster_sizes(assignment);
  const auto counts = representative_counts(representation, assignment);
  const int n = representation.n_nodes();

  double max_dev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double total = counts.row(i).sum();
    for (int c = 0; c < assignment.n_clusters(); ++c) {
      const double dev = std::abs(counts(i, c) - total * sizes[c] / n);
      max_dev = std::max(max_dev, dev);
    }
  }
  return max_dev;
}

double ratio_cut(const Graph& similarity, const ClusterAssignment& assignment) {
  require_matching(similarity, assignment);
  const auto sizes = nonempty_cluster_sizes(assignment);
  const auto cut = crossing_edges(similarity, assignment);
  double total = 0.0;
  for (int k = 0; k < assignment.n_clusters(); ++k) total += cut[k] / sizes[k];
  return total;
}

double normalized_cut(const Graph& similarity, const ClusterAssignment& assignment) {
  require_matching(similarity, assignment);
  const Eigen::VectorXd degrees = similarity.degrees();
  Eigen::VectorXd volumes = Eigen::VectorXd::Zero(assignment.n_clusters());
  for (int i = 0; i < similarity.n_nodes(); ++i) volumes(assignment.label(i)) += degrees(i);
  for (int k = 0; k < assignment.n_clusters(); ++k)
    if (volumes(k) <= 0.0) throw DegenerateClusterError("cluster " + std::to_string(k + 1) + " has zero volume");
  const auto cut = crossing_edges(similarity, assignment);
  double total = 0.0;
  for (int k = 0; k < assignment.n_clusters(); ++k) total += cut[k] / volumes(k);
  return total;
}

Misclustering misclustering(const ClusterAssignment& truth, const ClusterAssignment& predicted) {
  if (truth.n_nodes() != predicted.n_nodes())
    throw InvalidConfigError("partitions disagree on the number of nodes");
  if (truth.n_clusters() != predicted.n_clusters())
    throw InvalidConfigError("partitions disagree on the number of clusters");
  const int n = truth.n_nodes();
  const int k = truth.n_clusters();

  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < n; ++i) confusion(truth.label(i), predicted.label(i)) += 1.0;

  // Maximize the matched trace = minimize negated confusion.
  const auto col_to_row = min_cost_assignment(-confusion);

  double matched = 0.0;
  for (int j = 0; j < k; ++j) matched += confusion(col_to_row[j], j);
  const double mistakes = n - matched;

  Misclustering out;
  out.fraction = 2.0 * mistakes / n;
  out.accuracy = 1.0 - mistakes / n;
  out.best_permutation = col_to_row;
  return out;
}

}  // namespace repsc

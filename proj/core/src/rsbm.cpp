#include "repsc/rsbm.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "repsc/errors.hpp"
#include "repsc/rng.hpp"

namespace repsc {

void RsbmParams::validate() const {
  if (!(1.0 >= p && p >= q && q >= r && r >= s && s >= 0.0))
    throw InvalidConfigError("edge probabilities must satisfy 1 >= p >= q >= r >= s >= 0");
}

void ProtectedGroupParams::validate() const {
  if (n_groups < 1) throw InvalidConfigError("n_groups must be positive");
  if (!(0.0 <= p_out && p_out <= p_in && p_in <= 1.0))
    throw InvalidConfigError("group probabilities must satisfy 0 <= p_out <= p_in <= 1");
}

Graph make_d_regular_representation(int n_nodes, int n_clusters, int degree,
                                    const ClusterAssignment& ground_truth) {
  const int n = n_nodes, k = n_clusters, d = degree;
  if (ground_truth.n_nodes() != n || ground_truth.n_clusters() != k)
    throw InvalidConfigError("ground truth does not match (n_nodes, n_clusters)");
  if (k < 2) throw InvalidConfigError("d-regular construction needs K >= 2");
  if (n % k != 0) throw InvalidConfigError("K must divide N");
  if (d % k != 0) throw InvalidConfigError("K must divide the degree d");
  if (d < k || d > n) throw InvalidConfigError("degree must satisfy K <= d <= N");
  const int m = n / k;  // block size
  const int t = d / k;  // neighbors per cluster, self-loop included
  if (t > m) throw InvalidConfigError("d/K exceeds the cluster size N/K");
  if (t % 2 == 0 && m % 2 != 0)
    throw InvalidConfigError("even d/K requires an even block size N/K (antipodal offset)");

  const auto sizes = ground_truth.cluster_sizes();
  for (int c = 0; c < k; ++c)
    if (sizes[c] != m) throw InvalidConfigError("d-regular construction needs equal-sized clusters");

  // Symmetric base offset set: o in B <=> -o in B (mod m), 0 in B.
  std::vector<int> base;
  base.push_back(0);
  const int half = (t % 2 == 1) ? (t - 1) / 2 : t / 2 - 1;
  for (int o = 1; o <= half; ++o) {
    base.push_back(o);
    base.push_back(m - o);
  }
  if (t % 2 == 0) base.push_back(m / 2);

  // Strides for the cross-cluster blocks: units of Z_m, reused cyclically
  // when there are more cluster pairs than units. Dilation by a unit keeps
  // the set symmetric and its size t.
  std::vector<int> units;
  for (int g = 1; g < m; ++g)
    if (std::gcd(g, m) == 1) units.push_back(g);
  if (units.empty()) units.push_back(1);  // m == 1

  std::vector<std::vector<int>> members(k);
  for (int i = 0; i < n; ++i) members[ground_truth.label(i)].push_back(i);

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  int pair_index = 0;
  for (int c = 0; c < k; ++c) {
    for (int l = c; l < k; ++l) {
      const int stride = (c == l) ? 1 : units[pair_index++ % units.size()];
      for (int a = 0; a < m; ++a) {
        const int i = members[c][a];
        for (int o : base) {
          const int j = members[l][(a + static_cast<long long>(stride) * o) % m];
          adj(i, j) = 1.0;
          adj(j, i) = 1.0;
        }
      }
    }
  }
  return Graph::from_adjacency(std::move(adj), /*allows_self_loops=*/true);
}

Graph sample_rsbm(const Graph& representation, const ClusterAssignment& ground_truth,
                  const RsbmParams& params, std::uint64_t seed) {
  params.validate();
  const int n = representation.n_nodes();
  if (ground_truth.n_nodes() != n)
    throw InvalidConfigError("representation graph and assignment disagree on N");

  Rng rng(seed);
  const auto& rep = representation.adjacency();
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same = ground_truth.label(i) == ground_truth.label(j);
      const bool linked = rep(i, j) != 0.0;
      const double prob = same ? (linked ? params.p : params.r) : (linked ? params.q : params.s);
      // One draw per pair regardless of prob, so the stream layout is fixed.
      const double u = rng.uniform();
      if (u < prob) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
    }
  }
  return Graph::from_adjacency(std::move(adj), /*allows_self_loops=*/false);
}

Graph sample_group_representation(int n_nodes, const ClusterAssignment& ground_truth_groups,
                                  const ProtectedGroupParams& params, std::uint64_t seed) {
  params.validate();
  if (ground_truth_groups.n_nodes() != n_nodes)
    throw InvalidConfigError("group assignment does not match n_nodes");
  if (ground_truth_groups.n_clusters() != params.n_groups)
    throw InvalidConfigError("group assignment and params disagree on the number of groups");

  Rng rng(seed);
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    adj(i, i) = 1.0;  // every node represents itself
    for (int j = i + 1; j < n_nodes; ++j) {
      const bool same = ground_truth_groups.label(i) == ground_truth_groups.label(j);
      const double u = rng.uniform();
      if (u < (same ? params.p_in : params.p_out)) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
    }
  }
  return Graph::from_adjacency(std::move(adj), /*allows_self_loops=*/true);
}

Graph block_diagonal_representation(const ClusterAssignment& groups) {
  const int n = groups.n_nodes();
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (groups.label(i) == groups.label(j)) adj(i, j) = 1.0;
  return Graph::from_adjacency(std::move(adj), /*allows_self_loops=*/true);
}

}  // namespace repsc

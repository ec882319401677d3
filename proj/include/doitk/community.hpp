#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "doitk/convgraph.hpp"
#include "doitk/matrix.hpp"

namespace doitk::community {

/// Undirected weighted graph as a symmetric dense adjacency, zero diagonal.
struct UndirectedGraph {
  DenseMatrix adj;
  std::size_t size() const { return adj.rows(); }
  std::size_t edge_count() const;
  double total_weight() const;  // sum over i<j
};

/// w(i-j) = w(i->j) + w(j->i).
UndirectedGraph symmetrize(const convgraph::ConversationGraph& g);
UndirectedGraph from_edges(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges);

struct SpinglassConfig {
  double gamma = 1.0;
  std::size_t spins_max = 25;
  double start_temp = 1.0;
  double stop_temp = 0.01;
  double cooling = 0.99;
  std::size_t sweeps_per_temp = 50;
  std::size_t restarts = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Partition {
  std::vector<std::size_t> membership;  // node -> dense community id
  std::size_t count = 0;
  double hamiltonian = 0.0;             // in the graph's weight units
  std::uint64_t seed = 0;               // seed of the selected restart
  std::size_t final_sweep_uphill_moves = 0;
  std::vector<double> final_sweep_energy;  // energy after each greedy pass
};

/// Reichardt-Bornholdt energy -sum_{i<j} (A_ij - gamma s_i s_j / 2S) delta(c_i, c_j).
double hamiltonian(const UndirectedGraph& g, const std::vector<std::size_t>& membership, double gamma);

/// Heat-bath annealing of single-node spin flips, then a greedy sweep that
/// accepts only strictly improving moves. Isolated nodes get singleton
/// communities. Throws DataError on an edgeless graph.
Partition spinglass(const UndirectedGraph& g, const SpinglassConfig& config);

/// Newman-Girvan Q = sum_c (w_cc / S - (s_c / 2S)^2), w_cc the intra weight.
double modularity(const UndirectedGraph& g, const std::vector<std::size_t>& membership);

/// Relabel to dense ids in order of first appearance.
std::vector<std::size_t> compact(const std::vector<std::size_t>& membership);

std::string partition_tsv(const Partition& p);
Partition read_partition_tsv(std::string_view text);

}  // namespace doitk::community

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <tuple>
#include <vector>

#include "casevo/core/json.hpp"

namespace casevo {

class Rng;

struct Neighbor {
  std::size_t id = 0;
  double weight = 0.0;
  bool operator==(const Neighbor&) const = default;
};

struct Edge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  double weight = 0.0;
  bool operator==(const Edge&) const = default;
};

inline constexpr double kDefaultMaxWeight = 5.0;

// Weighted undirected graph over nodes 0..n-1 (node i is agent_i). Topology
// is fixed after generation; only weights change.
class SocialGraph {
 public:
  explicit SocialGraph(std::size_t n = 0, std::uint64_t seed = 0);

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // Builder use only. Throws ParamError on self-loops, duplicates, or w <= 0.
  void add_edge(std::size_t u, std::size_t v, double weight = 1.0);

  bool has_edge(std::size_t u, std::size_t v) const;
  std::optional<double> weight(std::size_t u, std::size_t v) const;
  std::size_t degree(std::size_t node) const;

  // Ascending neighbour id. Throws UnknownNodeError.
  std::vector<Neighbor> neighbors(std::size_t node) const;

  // weight += delta, capped at w_max. Throws NoEdgeError / ParamError.
  void reinforce(std::size_t u, std::size_t v, double delta, double w_max = kDefaultMaxWeight);

  // Sorted by (u, v).
  std::vector<Edge> edges() const;

 private:
  void check_node(std::size_t node) const;

  std::vector<std::map<std::size_t, double>> adjacency_;
  std::size_t edges_ = 0;
  std::uint64_t seed_;
};

enum class NetworkKind { SmallWorld, Random };

struct NetworkSpec {
  NetworkKind kind = NetworkKind::SmallWorld;
  std::size_t k = 4;      // small world: even mean degree
  double p = 0.1;         // small world: rewiring probability
  double p_edge = 0.05;   // random: edge probability
  std::optional<std::uint64_t> seed;  // defaults to the run seed

  static NetworkSpec from_json(const Json& j);
};

// Watts–Strogatz: ring lattice of degree k, each lattice edge rewired with
// probability p to a uniformly chosen non-neighbour. Requires n > k >= 2,
// k even, p in [0, 1]. Throws ParamError.
SocialGraph generate_small_world(std::size_t n, std::size_t k, double p, std::uint64_t seed);

// Erdős–Rényi G(n, p). Requires n >= 1, p in [0, 1]. Throws ParamError.
SocialGraph generate_random(std::size_t n, double p_edge, std::uint64_t seed);

SocialGraph build_network(const NetworkSpec& spec, std::size_t n, std::uint64_t run_seed);

// Neighbour drawn with probability proportional to edge weight.
// Throws IsolatedNodeError.
std::size_t select_partner(const SocialGraph& graph, std::size_t node, Rng& rng);

// "agent_u agent_v weight" per line, edges in (u, v) order.
void write_edge_list(const SocialGraph& graph, std::ostream& out);

}  // namespace casevo

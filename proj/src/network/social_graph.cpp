#include "casevo/network/social_graph.hpp"

#include <cmath>
#include <iomanip>

#include "casevo/core/errors.hpp"
#include "casevo/core/log_record.hpp"
#include "casevo/util/random.hpp"

namespace casevo {

SocialGraph::SocialGraph(std::size_t n, std::uint64_t seed) : adjacency_(n), seed_(seed) {}

void SocialGraph::check_node(std::size_t node) const {
  if (node >= adjacency_.size()) {
    throw UnknownNodeError("unknown node " + std::to_string(node) + " (graph has " +
                           std::to_string(adjacency_.size()) + " nodes)");
  }
}

void SocialGraph::add_edge(std::size_t u, std::size_t v, double weight) {
  check_node(u);
  check_node(v);
  if (u == v) throw ParamError("self-loop on node " + std::to_string(u));
  if (!(weight > 0.0)) throw ParamError("edge weight must be positive");
  if (adjacency_[u].count(v)) throw ParamError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  adjacency_[u][v] = weight;
  adjacency_[v][u] = weight;
  ++edges_;
}

bool SocialGraph::has_edge(std::size_t u, std::size_t v) const {
  return u < adjacency_.size() && adjacency_[u].count(v) > 0;
}

std::optional<double> SocialGraph::weight(std::size_t u, std::size_t v) const {
  if (u >= adjacency_.size()) return std::nullopt;
  auto it = adjacency_[u].find(v);
  if (it == adjacency_[u].end()) return std::nullopt;
  return it->second;
}

std::size_t SocialGraph::degree(std::size_t node) const {
  check_node(node);
  return adjacency_[node].size();
}

std::vector<Neighbor> SocialGraph::neighbors(std::size_t node) const {
  check_node(node);
  std::vector<Neighbor> out;
  out.reserve(adjacency_[node].size());
  for (const auto& [id, w] : adjacency_[node]) out.push_back({id, w});
  return out;
}

void SocialGraph::reinforce(std::size_t u, std::size_t v, double delta, double w_max) {
  if (!(delta > 0.0)) throw ParamError("reinforcement delta must be positive");
  if (!has_edge(u, v)) throw NoEdgeError("no edge between " + agent_id(u) + " and " + agent_id(v));
  const double w = std::min(adjacency_[u][v] + delta, std::max(w_max, adjacency_[u][v]));
  adjacency_[u][v] = w;
  adjacency_[v][u] = w;
}

std::vector<Edge> SocialGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (auto it = adjacency_[u].upper_bound(u); it != adjacency_[u].end(); ++it) {
      out.push_back({u, it->first, it->second});
    }
  }
  return out;
}

NetworkSpec NetworkSpec::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("network needs a string 'kind'");
  }
  NetworkSpec spec;
  const auto kind = j["kind"].get<std::string>();
  try {
    if (kind == "small_world") {
      spec.kind = NetworkKind::SmallWorld;
      spec.k = j.value("k", std::size_t{4});
      spec.p = j.value("p", 0.1);
      if (j.contains("p_edge")) throw ConfigError("small_world network does not take 'p_edge'");
    } else if (kind == "random") {
      spec.kind = NetworkKind::Random;
      spec.p_edge = j.value("p_edge", 0.05);
      if (j.contains("k") || j.contains("p")) throw ConfigError("random network takes 'p_edge', not 'k'/'p'");
    } else {
      throw ConfigError("unknown network kind '" + kind + "'");
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("network: ") + e.what());
  }
  return spec;
}

SocialGraph generate_small_world(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (k < 2 || k % 2 != 0) throw ParamError("small world needs an even k >= 2");
  if (n <= k) throw ParamError("small world needs n > k");
  if (!(p >= 0.0 && p <= 1.0)) throw ParamError("rewiring probability must be in [0, 1]");

  SocialGraph g(n, seed);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= k / 2; ++j) g.add_edge(u, (u + j) % n);
  }
  if (p == 0.0) return g;

  // Rewiring keeps u and replaces the far end, so the edge count is
  // unchanged. Weights are all 1.0 at this point.
  std::vector<std::map<std::size_t, double>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u][e.v] = 1.0;
    adj[e.v][e.u] = 1.0;
  }
  Rng rng(seed);
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t v = (u + j) % n;
      if (!rng.bernoulli(p)) continue;
      if (!adj[u].count(v)) continue;  // already rewired away
      if (adj[u].size() >= n - 1) continue;
      std::size_t w;
      do {
        w = static_cast<std::size_t>(rng.below(n));
      } while (w == u || adj[u].count(w));
      adj[u].erase(v);
      adj[v].erase(u);
      adj[u][w] = 1.0;
      adj[w][u] = 1.0;
    }
  }

  SocialGraph out(n, seed);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto it = adj[u].upper_bound(u); it != adj[u].end(); ++it) out.add_edge(u, it->first);
  }
  return out;
}

SocialGraph generate_random(std::size_t n, double p_edge, std::uint64_t seed) {
  if (n < 1) throw ParamError("random graph needs n >= 1");
  if (!(p_edge >= 0.0 && p_edge <= 1.0)) throw ParamError("edge probability must be in [0, 1]");
  SocialGraph g(n, seed);
  Rng rng(seed);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p_edge)) g.add_edge(u, v);
    }
  }
  return g;
}

SocialGraph build_network(const NetworkSpec& spec, std::size_t n, std::uint64_t run_seed) {
  const auto seed = spec.seed.value_or(run_seed);
  if (spec.kind == NetworkKind::SmallWorld) return generate_small_world(n, spec.k, spec.p, seed);
  return generate_random(n, spec.p_edge, seed);
}

std::size_t select_partner(const SocialGraph& graph, std::size_t node, Rng& rng) {
  const auto nbrs = graph.neighbors(node);
  if (nbrs.empty()) throw IsolatedNodeError(agent_id(node) + " has no neighbours");
  if (nbrs.size() == 1) return nbrs.front().id;
  double total = 0.0;
  for (const auto& n : nbrs) total += n.weight;
  const double target = rng.uniform01() * total;
  double acc = 0.0;
  for (const auto& n : nbrs) {
    acc += n.weight;
    if (target < acc) return n.id;
  }
  return nbrs.back().id;
}

void write_edge_list(const SocialGraph& graph, std::ostream& out) {
  for (const auto& e : graph.edges()) {
    out << agent_id(e.u) << ' ' << agent_id(e.v) << ' ' << std::setprecision(6) << e.weight << '\n';
  }
}

}  // namespace casevo

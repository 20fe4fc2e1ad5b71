#include "kgs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <utility>

#include "kgs/errors.hpp"

namespace kgs {

WeightedGraph::WeightedGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges) {
  if (vertices.empty()) {
    throw ValidationError("nonempty_graph", "graph has no vertices");
  }

  ids_.reserve(vertices.size());
  measure_.reserve(vertices.size());
  min_measure_ = std::numeric_limits<double>::infinity();
  for (auto& v : vertices) {
    if (v.id.empty()) {
      throw ValidationError("vertex_id", "empty vertex id");
    }
    if (!(std::isfinite(v.mu) && v.mu > 0.0)) {
      throw ValidationError("positive_measure",
                            "vertex '" + v.id + "' has mu = " + std::to_string(v.mu));
    }
    auto [it, inserted] = index_.emplace(v.id, ids_.size());
    if (!inserted) {
      throw ValidationError("vertex_id", "duplicate vertex id '" + v.id + "'");
    }
    min_measure_ = std::min(min_measure_, v.mu);
    ids_.push_back(std::move(v.id));
    measure_.push_back(v.mu);
  }

  // Unordered storage: key (min, max). A repeated edge must carry the same weight.
  std::map<std::pair<std::size_t, std::size_t>, double> unique;
  for (const auto& e : edges) {
    auto ia = index_.find(e.a);
    auto ib = index_.find(e.b);
    if (ia == index_.end() || ib == index_.end()) {
      throw ValidationError("known_vertex", "edge {" + e.a + ", " + e.b + "} names an unknown vertex");
    }
    if (ia->second == ib->second) {
      throw ValidationError("no_self_loop", "self-loop at '" + e.a + "'");
    }
    if (!(std::isfinite(e.w) && e.w > 0.0)) {
      throw ValidationError("positive_weight",
                            "edge {" + e.a + ", " + e.b + "} has w = " + std::to_string(e.w));
    }
    auto key = std::minmax(ia->second, ib->second);
    auto [it, inserted] = unique.emplace(std::pair{key.first, key.second}, e.w);
    if (!inserted && it->second != e.w) {
      throw ValidationError("symmetric_weight", "edge {" + e.a + ", " + e.b +
                                                    "} listed with weights " +
                                                    std::to_string(it->second) + " and " +
                                                    std::to_string(e.w));
    }
  }

  adjacency_.assign(ids_.size(), {});
  for (const auto& [key, w] : unique) {
    adjacency_[key.first].push_back({key.second, w});
    adjacency_[key.second].push_back({key.first, w});
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.index < y.index; });
  }
  edge_count_ = unique.size();

  std::vector<char> seen(ids_.size(), 0);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    auto x = frontier.front();
    frontier.pop();
    for (const auto& nb : adjacency_[x]) {
      if (!seen[nb.index]) {
        seen[nb.index] = 1;
        ++reached;
        frontier.push(nb.index);
      }
    }
  }
  if (reached != ids_.size()) {
    auto missing = std::find(seen.begin(), seen.end(), 0) - seen.begin();
    throw ValidationError("connected", "vertex '" + ids_[static_cast<std::size_t>(missing)] +
                                           "' is not reachable from '" + ids_[0] + "'");
  }
}

std::size_t WeightedGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw InputError("unknown vertex id '" + std::string(id) + "'");
  }
  return it->second;
}

bool WeightedGraph::contains(std::string_view id) const {
  return index_.contains(std::string(id));
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
  for (const auto& nb : adjacency_.at(i)) {
    if (nb.index == j) return nb.weight;
  }
  return 0.0;
}

std::vector<VertexSpec> WeightedGraph::vertex_specs() const {
  std::vector<VertexSpec> out;
  out.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) out.push_back({ids_[i], measure_[i]});
  return out;
}

std::vector<EdgeSpec> WeightedGraph::edge_specs() const {
  std::vector<EdgeSpec> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (const auto& nb : adjacency_[i]) {
      if (i < nb.index) out.push_back({ids_[i], ids_[nb.index], nb.weight});
    }
  }
  return out;
}

}  // namespace kgs

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgs {

struct Neighbor {
  std::size_t index;
  double weight;
};

struct VertexSpec {
  std::string id;
  double mu;
};

struct EdgeSpec {
  std::string a;
  std::string b;
  double w;
};

/// A finite, connected, weighted graph G = (V, E) with vertex measure mu and
/// symmetric positive edge weights.
///
/// Edges are stored unordered, so omega_xy = omega_yx holds by construction.
/// The constructor rejects anything else with a ValidationError whose
/// invariant() is one of: "vertex_id", "positive_measure", "known_vertex",
/// "no_self_loop", "positive_weight", "symmetric_weight", "nonempty_graph",
/// "connected".
class WeightedGraph {
 public:
  WeightedGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const std::string& id(std::size_t i) const { return ids_.at(i); }
  double measure(std::size_t i) const { return measure_.at(i); }
  std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_.at(i); }

  /// Throws InputError for an unknown id.
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Weight of edge {i, j}, or 0 when the vertices are not adjacent.
  double weight(std::size_t i, std::size_t j) const;

  /// mu_0 = min_x mu(x).
  double min_measure() const noexcept { return min_measure_; }

  std::vector<VertexSpec> vertex_specs() const;
  std::vector<EdgeSpec> edge_specs() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> measure_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t edge_count_ = 0;
  double min_measure_ = 0.0;
};

}  // namespace kgs

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgs/graph.hpp"

namespace kgs {

/// A vertex set Omega, its vertex boundary
///   dOmega = { y not in Omega : y ~ x for some x in Omega },
/// and the subgraph induced on the working set Omega u dOmega.
///
/// Every operator of the library acts on functions that vanish outside the
/// working set, so edges leaving dOmega never contribute and the induced
/// subgraph is all that is kept.
///
/// Local indices: [0, #Omega) enumerate Omega sorted by vertex id,
/// [#Omega, #Omega + #dOmega) enumerate dOmega sorted by vertex id.
class Domain {
 public:
  /// Throws InputError for an empty Omega, an unknown or repeated id.
  Domain(std::shared_ptr<const WeightedGraph> graph, std::span<const std::string> omega);

  const WeightedGraph& graph() const noexcept { return *graph_; }
  std::shared_ptr<const WeightedGraph> graph_ptr() const noexcept { return graph_; }

  std::size_t interior_size() const noexcept { return interior_size_; }
  std::size_t boundary_size() const noexcept { return ids_.size() - interior_size_; }
  std::size_t working_size() const noexcept { return ids_.size(); }
  bool is_interior(std::size_t local) const noexcept { return local < interior_size_; }

  const std::string& id(std::size_t local) const { return ids_.at(local); }
  double measure(std::size_t local) const { return measure_.at(local); }
  std::size_t global_index(std::size_t local) const { return global_.at(local); }
  /// Neighbors inside the working set, in local indices.
  std::span<const Neighbor> neighbors(std::size_t local) const { return adjacency_.at(local); }

  /// Throws InputError when the id is not in Omega u dOmega.
  std::size_t local_index(std::string_view id) const;
  bool contains(std::string_view id) const;

  std::vector<std::string> omega_ids() const;
  std::vector<std::string> boundary_ids() const;

  /// sum_{x in Omega} mu(x)
  double interior_measure() const noexcept { return interior_measure_; }
  /// mu_min,Omega
  double min_interior_measure() const noexcept { return min_interior_measure_; }

 private:
  std::shared_ptr<const WeightedGraph> graph_;
  std::size_t interior_size_ = 0;
  std::vector<std::string> ids_;
  std::vector<std::size_t> global_;
  std::vector<double> measure_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<std::string, std::size_t> local_;
  double interior_measure_ = 0.0;
  double min_interior_measure_ = 0.0;
};

Domain compute_boundary(std::shared_ptr<const WeightedGraph> graph,
                        std::span<const std::string> omega);

}  // namespace kgs

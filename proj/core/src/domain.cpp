#include "kgs/domain.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "kgs/errors.hpp"

namespace kgs {

Domain::Domain(std::shared_ptr<const WeightedGraph> graph, std::span<const std::string> omega)
    : graph_(std::move(graph)) {
  if (!graph_) throw InputError("domain requires a graph");
  if (omega.empty()) throw InputError("Omega must be nonempty");

  std::set<std::size_t> inside;
  for (const auto& id : omega) {
    auto g = graph_->index_of(id);
    if (!inside.insert(g).second) {
      throw InputError("vertex '" + id + "' listed twice in Omega");
    }
  }

  std::set<std::size_t> boundary;
  for (auto x : inside) {
    for (const auto& nb : graph_->neighbors(x)) {
      if (!inside.contains(nb.index)) boundary.insert(nb.index);
    }
  }

  auto by_id = [this](std::size_t a, std::size_t b) { return graph_->id(a) < graph_->id(b); };
  std::vector<std::size_t> interior(inside.begin(), inside.end());
  std::vector<std::size_t> rim(boundary.begin(), boundary.end());
  std::sort(interior.begin(), interior.end(), by_id);
  std::sort(rim.begin(), rim.end(), by_id);

  interior_size_ = interior.size();
  global_ = interior;
  global_.insert(global_.end(), rim.begin(), rim.end());

  std::unordered_map<std::size_t, std::size_t> to_local;
  for (std::size_t i = 0; i < global_.size(); ++i) {
    to_local.emplace(global_[i], i);
    ids_.push_back(graph_->id(global_[i]));
    measure_.push_back(graph_->measure(global_[i]));
    local_.emplace(ids_.back(), i);
  }

  adjacency_.resize(global_.size());
  for (std::size_t i = 0; i < global_.size(); ++i) {
    for (const auto& nb : graph_->neighbors(global_[i])) {
      auto it = to_local.find(nb.index);
      if (it != to_local.end()) adjacency_[i].push_back({it->second, nb.weight});
    }
  }

  min_interior_measure_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < interior_size_; ++i) {
    interior_measure_ += measure_[i];
    min_interior_measure_ = std::min(min_interior_measure_, measure_[i]);
  }
}

std::size_t Domain::local_index(std::string_view id) const {
  auto it = local_.find(std::string(id));
  if (it == local_.end()) {
    throw InputError("vertex '" + std::string(id) + "' is not in Omega u dOmega");
  }
  return it->second;
}

bool Domain::contains(std::string_view id) const { return local_.contains(std::string(id)); }

std::vector<std::string> Domain::omega_ids() const {
  return {ids_.begin(), ids_.begin() + static_cast<std::ptrdiff_t>(interior_size_)};
}

std::vector<std::string> Domain::boundary_ids() const {
  return {ids_.begin() + static_cast<std::ptrdiff_t>(interior_size_), ids_.end()};
}

Domain compute_boundary(std::shared_ptr<const WeightedGraph> graph,
                        std::span<const std::string> omega) {
  return Domain(std::move(graph), omega);
}

}  // namespace kgs

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kgs/domain.hpp"
#include "kgs/graph.hpp"
#include "kgs/instance.hpp"

namespace kgs::bench {

// n x n lattice with unit weights; Omega is every vertex off the outer ring.
inline std::shared_ptr<const Domain> lattice(int n) {
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  std::vector<std::string> omega;
  auto id = [n](int i, int j) { return "x" + std::to_string(i * n + j); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      vs.push_back({id(i, j), 1.0});
      if (i + 1 < n) es.push_back({id(i, j), id(i + 1, j), 1.0});
      if (j + 1 < n) es.push_back({id(i, j), id(i, j + 1), 1.0});
      if (i > 0 && j > 0 && i + 1 < n && j + 1 < n) omega.push_back(id(i, j));
    }
  }
  return std::make_shared<const Domain>(std::make_shared<const WeightedGraph>(vs, es), omega);
}

inline KirchhoffInstance lattice_instance(std::shared_ptr<const Domain> d) {
  const auto m = static_cast<Eigen::Index>(d->interior_size());
  KirchhoffParams P;
  P.p = 2.5;
  P.q = 3.0;
  Coefficients c{Eigen::VectorXd::Ones(m), Eigen::VectorXd::Ones(m), Eigen::VectorXd::Ones(m),
                 Eigen::VectorXd::Constant(m, 0.1), Eigen::VectorXd::Zero(m)};
  return KirchhoffInstance(d, P, c);
}

}  // namespace kgs::bench

#pragma once

#include <Eigen/Core>

#include "tzvar/market.hpp"

namespace tzvar {

// Signed directed network. Entry (i, j) is the edge from source i to target j.
// support(weights) == support(adjacency) and sign(weights) == adjacency.
struct SignedNetwork {
  MarketSet markets;
  Eigen::MatrixXi adjacency;
  Eigen::MatrixXd weights;

  std::size_t size() const { return markets.size(); }
  // Throws std::logic_error when the sign/support invariant is broken.
  void validate() const;
};

SignedNetwork make_network(MarketSet markets, Eigen::MatrixXi adjacency, Eigen::MatrixXd weights);

}  // namespace tzvar

#include "tzvar/network.hpp"

#include <stdexcept>
#include <string>

namespace tzvar {

void SignedNetwork::validate() const {
  const auto n = static_cast<Eigen::Index>(markets.size());
  if (adjacency.rows() != n || adjacency.cols() != n || weights.rows() != n || weights.cols() != n) {
    throw std::logic_error("network matrices do not match the market roster");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const int a = adjacency(i, j);
      const double w = weights(i, j);
      const int sign_w = (w > 0.0) - (w < 0.0);
      if (a < -1 || a > 1 || a != sign_w) {
        throw std::logic_error("sign(W) != A at (" + markets[static_cast<std::size_t>(i)].id + ", " +
                               markets[static_cast<std::size_t>(j)].id + ")");
      }
    }
  }
}

SignedNetwork make_network(MarketSet markets, Eigen::MatrixXi adjacency, Eigen::MatrixXd weights) {
  SignedNetwork net{std::move(markets), std::move(adjacency), std::move(weights)};
  net.validate();
  return net;
}

}  // namespace tzvar

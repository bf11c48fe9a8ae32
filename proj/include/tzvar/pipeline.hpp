#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tzvar/network.hpp"
#include "tzvar/panel.hpp"
#include "tzvar/selection.hpp"
#include "tzvar/var_model.hpp"

namespace tzvar {

struct PipelineOptions {
  LagStructure structure = LagStructure::time_zone();
  SelectionOptions selection;
  std::uint64_t seed = 20070801;
  int threads = 1;
};

// Static estimate for one period: repeated CV per equation, then the signed
// network from the selected penalties.
struct StaticEstimate {
  std::vector<LambdaSelection> selections;  // MarketSet order
  CoefficientMatrix coefficients;
  SignedNetwork network;
  std::vector<std::string> skipped_markets;  // zero-variance response
  std::vector<std::string> warnings;
};

std::uint64_t equation_seed(std::uint64_t seed, std::size_t equation);

StaticEstimate estimate_network(const ReturnsPanel& panel, const PipelineOptions& opts);

}  // namespace tzvar

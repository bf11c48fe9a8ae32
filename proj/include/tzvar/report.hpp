#pragma once

#include <Eigen/Core>
#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "tzvar/compare.hpp"
#include "tzvar/market.hpp"
#include "tzvar/metrics.hpp"
#include "tzvar/network.hpp"
#include "tzvar/rolling.hpp"
#include "tzvar/selection.hpp"
#include "tzvar/synth.hpp"
#include "tzvar/var_model.hpp"

namespace tzvar::report {

using Json = nlohmann::ordered_json;

// Square matrix CSV: header "id,<ids...>", then one "<id>,<values...>" row per
// market. Floats use shortest round-trip formatting.
std::string matrix_csv(const MarketSet& markets, const Eigen::MatrixXd& m);
std::string matrix_csv(const MarketSet& markets, const Eigen::MatrixXi& m);
Eigen::MatrixXd parse_matrix_csv(std::string_view text, const MarketSet& markets);

SignedNetwork network_from_csv(const MarketSet& markets, std::string_view adjacency_csv,
                               std::string_view weights_csv);

Json coefficients_json(const CoefficientMatrix& b);
std::string ar_diagonal_csv(const CoefficientMatrix& b);

Json selections_json(const MarketSet& markets, const std::vector<LambdaSelection>& selections);

Json metrics_json(const MarketSet& markets, const MetricsReport& m, std::string_view period);
std::string metrics_csv(const MarketSet& markets, const MetricsReport& m, std::string_view period);

std::string stability_csv(const std::vector<StabilityPoint>& points);
std::string rolling_csv(const RollingResult& r);
std::string comparison_csv(const ComparisonReport& r);

Json truth_json(const GroundTruth& g);

std::string dump(const Json& j);  // 2-space indent, trailing newline

}  // namespace tzvar::report

#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tzvar/lasso.hpp"
#include "tzvar/market.hpp"
#include "tzvar/panel.hpp"

namespace tzvar {

enum class LagKind { TimeZone, Classic };

// Lag (0 or 1) of a source market's return in a target market's equation.
// TimeZone: same-day terms for sources whose continent closes earlier in the
// trading day (Europe <- Asia, Americas <- Asia/Europe); lag 1 otherwise.
// Classic: lag 1 throughout.
class LagStructure {
 public:
  constexpr LagStructure() = default;
  constexpr explicit LagStructure(LagKind kind) : kind_(kind) {}

  static constexpr LagStructure time_zone() { return LagStructure(LagKind::TimeZone); }
  static constexpr LagStructure classic() { return LagStructure(LagKind::Classic); }

  constexpr LagKind kind() const { return kind_; }
  constexpr int lag(Continent target, Continent source) const {
    if (kind_ == LagKind::Classic) return 1;
    return static_cast<int>(source) < static_cast<int>(target) ? 0 : 1;
  }
  std::string_view name() const { return kind_ == LagKind::TimeZone ? "timezone" : "classic"; }

  friend constexpr bool operator==(LagStructure a, LagStructure b) { return a.kind_ == b.kind_; }

 private:
  LagKind kind_ = LagKind::TimeZone;
};

LagStructure parse_structure(std::string_view token);  // throws ConfigError

// Raw regression rows for one equation: y_t = r_{target,t}, column l holds
// r_{l,t-lag}, for t = 2..T (T-1 rows). Columns follow MarketSet order.
struct RegressionData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

RegressionData regression_data(const ReturnsPanel& panel, std::size_t target, LagStructure s);
DesignMatrix build_design(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                          bool standardize = true);

struct EquationFit {
  Eigen::VectorXd row;  // B[target][.] on the return scale
  double intercept = 0.0;
  bool converged = true;
  bool low_sample = false;  // fewer than two usable rows
  bool zero_variance_response = false;
  std::vector<std::string> excluded_sources;
};

EquationFit estimate_equation(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                              double lambda, const LassoOptions& opts = {});

// B(target, source) with the intercepts absorbed by centering.
struct CoefficientMatrix {
  MarketSet markets;
  LagStructure structure;
  Eigen::MatrixXd B;
  Eigen::VectorXd intercepts;
  std::vector<bool> converged;
  std::vector<std::string> warnings;

  std::size_t size() const { return markets.size(); }
  bool all_converged() const;
};

CoefficientMatrix estimate_system(const ReturnsPanel& panel, LagStructure s,
                                  const std::map<std::string, double>& lambdas,
                                  const LassoOptions& opts = {}, int threads = 1);

// Own-lag coefficients in MarketSet order.
std::vector<std::pair<std::string, double>> ar_diagonal(const CoefficientMatrix& b);

// Fitted values for rows t = 2..T, (T-1) x N.
Eigen::MatrixXd fitted_values(const ReturnsPanel& panel, const CoefficientMatrix& b);

}  // namespace tzvar

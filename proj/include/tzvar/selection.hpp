#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tzvar/lasso.hpp"
#include "tzvar/network.hpp"
#include "tzvar/panel.hpp"
#include "tzvar/var_model.hpp"

namespace tzvar {

struct SelectionOptions {
  int grid_points = 100;
  double min_ratio = 1e-3;
  int replications = 100;  // R: fold plans per equation
  int top_m = 5;           // M: most frequent penalties kept
  int min_fold_size = 30;  // K = floor(T / min_fold_size)
  LassoOptions lasso;
};

// Random partition of the T-1 usable regression rows into K folds whose sizes
// differ by at most one. assignment[i] is the 0-based fold of row i.
struct FoldPlan {
  int folds = 0;
  std::vector<int> assignment;
  std::uint64_t seed = 0;
};

// K = floor(sample_size / 30) over sample_size - 1 usable rows.
FoldPlan partition_folds(std::size_t sample_size, std::uint64_t seed, int min_fold_size = 30);
FoldPlan partition_rows(std::size_t rows, int folds, std::uint64_t seed);

int fold_count(std::size_t sample_size, int min_fold_size = 30);  // throws EstimationError

// Penalty grid for one equation, from the full-sample design.
LambdaGrid equation_grid(const DesignMatrix& d, const SelectionOptions& opts);

// K-fold evaluation of a lambda grid for one equation. Training statistics are
// derived from full-sample sums minus held-out sums, so a plan costs O(n p^2)
// plus the path fits.
class EquationCv {
 public:
  EquationCv(const RegressionData& data, const LassoOptions& opts);

  struct Outcome {
    std::size_t index = 0;       // argmin, ties toward the larger lambda
    std::vector<double> errors;  // summed held-out squared error per grid point
    int skipped_folds = 0;
  };

  Outcome evaluate(const LambdaGrid& grid, const FoldPlan& plan) const;
  Eigen::Index rows() const { return x_.rows(); }

 private:
  LassoOptions opts_;
  Eigen::MatrixXd x_;  // shifted by the full-sample mean when standardizing
  Eigen::VectorXd y_;
  Eigen::VectorXd sum_x_;
  Eigen::MatrixXd sum_xx_;
  Eigen::VectorXd sum_xy_;
  double sum_y_ = 0.0;
  double sum_yy_ = 0.0;
  Eigen::VectorXd column_ss_;  // full-sample centered sums of squares
  double response_ss_ = 0.0;
};

double cv_select(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                 const LambdaGrid& grid, const FoldPlan& plan, const LassoOptions& opts = {},
                 std::vector<std::string>* warnings = nullptr);

struct LambdaCount {
  double lambda = 0.0;
  int frequency = 0;
};

struct LambdaSelection {
  double lambda_star = 0.0;     // max of the lambdas in `top`
  std::vector<LambdaCount> top;  // frequency-descending, ties toward larger lambda
  int replications = 0;
  int top_m = 0;
  std::vector<std::string> notes;
};

LambdaSelection tabulate_selection(std::span<const double> chosen, int top_m);

LambdaSelection repeated_cv(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                            const LambdaGrid& grid, int replications, int top_m,
                            std::uint64_t seed, const LassoOptions& opts = {},
                            int min_fold_size = 30);

struct NetworkEstimate {
  SignedNetwork network;
  CoefficientMatrix coefficients;  // fits at lambda_star
  std::vector<std::string> warnings;
};

// selections are in MarketSet order.
NetworkEstimate build_network(const ReturnsPanel& panel, LagStructure s,
                              const std::vector<LambdaSelection>& selections,
                              const LassoOptions& opts = {}, int threads = 1);
Eigen::MatrixXi build_adjacency(const ReturnsPanel& panel, LagStructure s,
                                const std::vector<LambdaSelection>& selections,
                                const LassoOptions& opts = {});
Eigen::MatrixXd build_weights(const ReturnsPanel& panel, LagStructure s,
                              const std::vector<LambdaSelection>& selections,
                              const LassoOptions& opts = {});

enum class CvVariant { Classic, Improved };

struct StabilityPoint {
  int replication = 0;  // 1-based
  std::size_t edges = 0;
  double density = 0.0;
  double mutual_proportion = 0.0;
};

std::vector<StabilityPoint> stability_diagnostics(const ReturnsPanel& panel, LagStructure s,
                                                  int reps, CvVariant variant, std::uint64_t seed,
                                                  const SelectionOptions& opts, int threads = 1);

// Running intersection of edge supports, normalized by N(N-1).
std::vector<StabilityPoint> stability_trace(const std::vector<Eigen::MatrixXi>& networks);

}  // namespace tzvar

#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace tzvar {

struct LassoOptions {
  double tolerance = 1e-7;    // max absolute coefficient change per sweep
  int max_iterations = 10000; // full coordinate sweeps
  bool standardize = true;    // center y, center and unit-scale columns of X
  bool record_objective = false;
};

// Regression data prepared for the penalized fit. With standardization every
// non-excluded column of x has mean 0 and sample standard deviation 1 and y
// has mean 0; without it x and y are the raw inputs.
struct DesignMatrix {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd column_means;
  Eigen::VectorXd column_scales;
  double response_mean = 0.0;
  std::vector<bool> excluded;  // zero-variance columns; coefficient fixed at 0
  bool standardized = false;

  Eigen::Index rows() const { return x.rows(); }
  Eigen::Index cols() const { return x.cols(); }
  bool any_excluded() const;

  Eigen::VectorXd to_original(const Eigen::VectorXd& standardized_beta) const;
  Eigen::VectorXd to_standardized(const Eigen::VectorXd& original_beta) const;
  // Intercept implied by centering, for coefficients on the original scale.
  double intercept(const Eigen::VectorXd& original_beta) const;
  Eigen::VectorXd predict_raw(const Eigen::MatrixXd& x_raw, const Eigen::VectorXd& original_beta) const;
};

DesignMatrix make_design(const Eigen::MatrixXd& x_raw, const Eigen::VectorXd& y_raw,
                         bool standardize = true);

// Sufficient statistics of a design: X'X, X'y, y'y.
struct GramSystem {
  Eigen::MatrixXd gram;
  Eigen::VectorXd xty;
  double yty = 0.0;
  std::vector<bool> excluded;

  static GramSystem from_design(const DesignMatrix& d);
};

double soft_threshold(double z, double gamma);

// (1/2)||y - X b||^2 + lambda ||b||_1 evaluated from the Gram form.
double lasso_objective(const GramSystem& g, const Eigen::VectorXd& beta, double lambda);

struct CoordinateDescentResult {
  Eigen::VectorXd beta;
  bool converged = false;
  int sweeps = 0;
  std::vector<double> objective_trace;  // after each sweep, if requested
};

// Cyclic coordinate descent on the Gram form. Stops when the largest
// coefficient change in a sweep is below the tolerance and the KKT conditions
// hold within 1e-5 * max(1, lambda), or when a sweep changes nothing.
CoordinateDescentResult coordinate_descent(const GramSystem& g, double lambda,
                                           Eigen::VectorXd start, const LassoOptions& opts);

// Largest |c_j| violation of the KKT conditions for c = X'(y - Xb).
double kkt_violation(const GramSystem& g, const Eigen::VectorXd& beta, double lambda);

double lambda_max(const DesignMatrix& d);

struct LambdaGrid {
  std::vector<double> values;  // strictly decreasing
  double min_ratio = 0.0;

  std::size_t size() const { return values.size(); }
};

LambdaGrid lambda_grid(double lmax, int n, double min_ratio);

struct LassoFit {
  Eigen::VectorXd coefficients;               // original scale
  Eigen::VectorXd standardized_coefficients;  // scale of d.x
  double intercept = 0.0;
  bool converged = false;
  int sweeps = 0;
  std::vector<double> objective_trace;
};

// `init` is on the original scale.
LassoFit lasso_fit(const DesignMatrix& d, double lambda,
                   const std::optional<Eigen::VectorXd>& init = std::nullopt,
                   const LassoOptions& opts = {});

// Fits along the grid in decreasing-lambda order with warm starts.
std::vector<LassoFit> lasso_path(const DesignMatrix& d, const LambdaGrid& grid,
                                 const LassoOptions& opts = {});

}  // namespace tzvar

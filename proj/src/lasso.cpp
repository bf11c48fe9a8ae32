#include "tzvar/lasso.hpp"

#include <algorithm>
#include <cmath>

#include "tzvar/errors.hpp"

namespace tzvar {

bool DesignMatrix::any_excluded() const {
  return std::find(excluded.begin(), excluded.end(), true) != excluded.end();
}

Eigen::VectorXd DesignMatrix::to_original(const Eigen::VectorXd& standardized_beta) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cols());
  for (Eigen::Index j = 0; j < cols(); ++j) {
    if (!excluded[static_cast<std::size_t>(j)]) out(j) = standardized_beta(j) / column_scales(j);
  }
  return out;
}

Eigen::VectorXd DesignMatrix::to_standardized(const Eigen::VectorXd& original_beta) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cols());
  for (Eigen::Index j = 0; j < cols(); ++j) {
    if (!excluded[static_cast<std::size_t>(j)]) out(j) = original_beta(j) * column_scales(j);
  }
  return out;
}

double DesignMatrix::intercept(const Eigen::VectorXd& original_beta) const {
  return response_mean - column_means.dot(original_beta);
}

Eigen::VectorXd DesignMatrix::predict_raw(const Eigen::MatrixXd& x_raw,
                                          const Eigen::VectorXd& original_beta) const {
  Eigen::VectorXd out = x_raw * original_beta;
  out.array() += intercept(original_beta);
  return out;
}

DesignMatrix make_design(const Eigen::MatrixXd& x_raw, const Eigen::VectorXd& y_raw,
                         bool standardize) {
  if (x_raw.rows() != y_raw.size()) throw EstimationError("design rows do not match response");
  DesignMatrix d;
  const Eigen::Index n = x_raw.rows();
  const Eigen::Index p = x_raw.cols();
  d.standardized = standardize;
  d.excluded.assign(static_cast<std::size_t>(p), false);
  d.column_means = Eigen::VectorXd::Zero(p);
  d.column_scales = Eigen::VectorXd::Ones(p);
  d.x = x_raw;
  d.y = y_raw;

  if (!standardize) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (x_raw.col(j).squaredNorm() == 0.0) d.excluded[static_cast<std::size_t>(j)] = true;
    }
    return d;
  }

  if (n > 0) {
    d.response_mean = y_raw.mean();
    d.y.array() -= d.response_mean;
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = n > 0 ? x_raw.col(j).mean() : 0.0;
    d.column_means(j) = mean;
    d.x.col(j).array() -= mean;
    const double sd = n > 1 ? std::sqrt(d.x.col(j).squaredNorm() / static_cast<double>(n - 1)) : 0.0;
    if (!(sd > 1e-12 * std::abs(mean)) || sd == 0.0) {
      d.excluded[static_cast<std::size_t>(j)] = true;
      d.x.col(j).setZero();
      continue;
    }
    d.column_scales(j) = sd;
    d.x.col(j) /= sd;
  }
  return d;
}

GramSystem GramSystem::from_design(const DesignMatrix& d) {
  GramSystem g;
  g.gram = d.x.transpose() * d.x;
  g.xty = d.x.transpose() * d.y;
  g.yty = d.y.squaredNorm();
  g.excluded = d.excluded;
  return g;
}

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

double lasso_objective(const GramSystem& g, const Eigen::VectorXd& beta, double lambda) {
  const double rss = g.yty - 2.0 * beta.dot(g.xty) + beta.dot(g.gram * beta);
  return 0.5 * rss + lambda * beta.lpNorm<1>();
}

double kkt_violation(const GramSystem& g, const Eigen::VectorXd& beta, double lambda) {
  const Eigen::VectorXd c = g.xty - g.gram * beta;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (g.excluded[static_cast<std::size_t>(j)]) continue;
    const double v = beta(j) != 0.0 ? std::abs(std::abs(c(j)) - lambda)
                                    : std::max(0.0, std::abs(c(j)) - lambda);
    worst = std::max(worst, v);
  }
  return worst;
}

CoordinateDescentResult coordinate_descent(const GramSystem& g, double lambda,
                                           Eigen::VectorXd start, const LassoOptions& opts) {
  const Eigen::Index p = g.xty.size();
  CoordinateDescentResult res;
  if (start.size() != p) start = Eigen::VectorXd::Zero(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    if (g.excluded[static_cast<std::size_t>(j)] || g.gram(j, j) <= 0.0) start(j) = 0.0;
  }
  res.beta = std::move(start);
  Eigen::VectorXd& beta = res.beta;
  Eigen::VectorXd c = g.xty - g.gram * beta;
  const double kkt_eps = 1e-5 * std::max(1.0, lambda);

  for (int sweep = 1; sweep <= opts.max_iterations; ++sweep) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double gjj = g.gram(j, j);
      if (g.excluded[static_cast<std::size_t>(j)] || gjj <= 0.0) continue;
      const double old = beta(j);
      const double updated = soft_threshold(c(j) + gjj * old, lambda) / gjj;
      if (updated == old) continue;
      const double delta = updated - old;
      c.noalias() -= g.gram.col(j) * delta;
      beta(j) = updated;
      max_delta = std::max(max_delta, std::abs(delta));
    }
    res.sweeps = sweep;
    if (opts.record_objective) res.objective_trace.push_back(lasso_objective(g, beta, lambda));
    if (max_delta == 0.0) {
      res.converged = true;
      break;
    }
    if (max_delta < opts.tolerance) {
      c = g.xty - g.gram * beta;
      if (kkt_violation(g, beta, lambda) <= kkt_eps) {
        res.converged = true;
        break;
      }
    }
  }
  return res;
}

double lambda_max(const DesignMatrix& d) {
  const Eigen::VectorXd xty = d.x.transpose() * d.y;
  double out = 0.0;
  for (Eigen::Index j = 0; j < xty.size(); ++j) {
    if (!d.excluded[static_cast<std::size_t>(j)]) out = std::max(out, std::abs(xty(j)));
  }
  return out;
}

LambdaGrid lambda_grid(double lmax, int n, double min_ratio) {
  LambdaGrid grid;
  grid.min_ratio = min_ratio;
  if (lmax == 0.0) {
    grid.values = {0.0};
    return grid;
  }
  if (!(lmax > 0.0) || n < 2 || !(min_ratio > 0.0 && min_ratio < 1.0)) {
    throw ConfigError("lambda grid needs lmax > 0, n >= 2 and 0 < min_ratio < 1");
  }
  grid.values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
    grid.values.push_back(lmax * std::pow(min_ratio, frac));
  }
  return grid;
}

namespace {

LassoFit finish(const DesignMatrix& d, CoordinateDescentResult cd) {
  LassoFit fit;
  fit.coefficients = d.to_original(cd.beta);
  fit.standardized_coefficients = std::move(cd.beta);
  fit.intercept = d.intercept(fit.coefficients);
  fit.converged = cd.converged;
  fit.sweeps = cd.sweeps;
  fit.objective_trace = std::move(cd.objective_trace);
  return fit;
}

}  // namespace

LassoFit lasso_fit(const DesignMatrix& d, double lambda, const std::optional<Eigen::VectorXd>& init,
                   const LassoOptions& opts) {
  if (!(lambda >= 0.0)) throw EstimationError("lambda must be non-negative");
  const GramSystem g = GramSystem::from_design(d);
  Eigen::VectorXd start = init ? d.to_standardized(*init) : Eigen::VectorXd::Zero(d.cols());
  return finish(d, coordinate_descent(g, lambda, std::move(start), opts));
}

std::vector<LassoFit> lasso_path(const DesignMatrix& d, const LambdaGrid& grid,
                                 const LassoOptions& opts) {
  const GramSystem g = GramSystem::from_design(d);
  std::vector<LassoFit> out;
  out.reserve(grid.size());
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(d.cols());
  for (double lambda : grid.values) {
    auto cd = coordinate_descent(g, lambda, warm, opts);
    warm = cd.beta;
    out.push_back(finish(d, std::move(cd)));
  }
  return out;
}

}  // namespace tzvar

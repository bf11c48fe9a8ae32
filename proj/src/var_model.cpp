#include "tzvar/var_model.hpp"

#include "tzvar/errors.hpp"
#include "tzvar/parallel.hpp"

namespace tzvar {

LagStructure parse_structure(std::string_view token) {
  if (token == "timezone" || token == "time-zone" || token == "tz") return LagStructure::time_zone();
  if (token == "classic") return LagStructure::classic();
  throw ConfigError("unknown structure '" + std::string(token) + "' (expected timezone|classic)");
}

RegressionData regression_data(const ReturnsPanel& panel, std::size_t target, LagStructure s) {
  const auto& r = panel.values();
  const auto& ms = panel.markets();
  const Eigen::Index T = r.rows();
  const Eigen::Index n = r.cols();
  RegressionData data;
  data.y = r.col(static_cast<Eigen::Index>(target)).tail(T - 1);
  data.x.resize(T - 1, n);
  const Continent tc = ms.continent(target);
  for (Eigen::Index l = 0; l < n; ++l) {
    const int lag = s.lag(tc, ms.continent(static_cast<std::size_t>(l)));
    data.x.col(l) = lag == 0 ? r.col(l).tail(T - 1) : r.col(l).head(T - 1);
  }
  return data;
}

DesignMatrix build_design(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                          bool standardize) {
  const auto idx = panel.markets().require_index(target);
  auto data = regression_data(panel, idx, s);
  return make_design(data.x, data.y, standardize);
}

EquationFit estimate_equation(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                              double lambda, const LassoOptions& opts) {
  const auto idx = panel.markets().require_index(target);
  const auto data = regression_data(panel, idx, s);
  const DesignMatrix d = make_design(data.x, data.y, opts.standardize);
  EquationFit out;
  out.low_sample = d.rows() < 2;
  out.zero_variance_response = d.y.squaredNorm() == 0.0;
  for (std::size_t j = 0; j < d.excluded.size(); ++j) {
    if (d.excluded[j]) out.excluded_sources.push_back(panel.markets()[j].id);
  }
  const LassoFit fit = lasso_fit(d, lambda, std::nullopt, opts);
  out.row = fit.coefficients;
  out.intercept = fit.intercept;
  out.converged = fit.converged;
  return out;
}

bool CoefficientMatrix::all_converged() const {
  for (bool c : converged) {
    if (!c) return false;
  }
  return true;
}

CoefficientMatrix estimate_system(const ReturnsPanel& panel, LagStructure s,
                                  const std::map<std::string, double>& lambdas,
                                  const LassoOptions& opts, int threads) {
  const auto& ms = panel.markets();
  for (const auto& m : ms) {
    if (!lambdas.count(m.id)) throw ConfigError("no penalty given for market '" + m.id + "'");
  }
  const std::size_t n = ms.size();
  std::vector<EquationFit> fits(n);
  parallel_for(n, threads, [&](std::size_t k) {
    fits[k] = estimate_equation(panel, ms[k].id, s, lambdas.at(ms[k].id), opts);
  });

  CoefficientMatrix out;
  out.markets = ms;
  out.structure = s;
  out.B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.intercepts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  out.converged.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    out.B.row(row) = fits[k].row.transpose();
    out.intercepts(row) = fits[k].intercept;
    out.converged[k] = fits[k].converged;
    if (!fits[k].converged) out.warnings.push_back(ms[k].id + ": solver did not converge");
    if (fits[k].low_sample) out.warnings.push_back(ms[k].id + ": fewer than two usable rows");
    for (const auto& src : fits[k].excluded_sources) {
      out.warnings.push_back(ms[k].id + ": zero-variance regressor " + src + " fixed at 0");
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> ar_diagonal(const CoefficientMatrix& b) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    out.emplace_back(b.markets[k].id, b.B(i, i));
  }
  return out;
}

Eigen::MatrixXd fitted_values(const ReturnsPanel& panel, const CoefficientMatrix& b) {
  if (!(panel.markets() == b.markets)) throw EstimationError("coefficient roster does not match panel");
  const auto n = static_cast<Eigen::Index>(panel.cols());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(panel.rows()) - 1, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto data = regression_data(panel, static_cast<std::size_t>(k), b.structure);
    out.col(k) = data.x * b.B.row(k).transpose();
    out.col(k).array() += b.intercepts(k);
  }
  return out;
}

}  // namespace tzvar

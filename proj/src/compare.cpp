#include "tzvar/compare.hpp"

#include "tzvar/errors.hpp"
#include "tzvar/rng.hpp"

namespace tzvar {

std::vector<MetricValue> r2_ratio(const ReturnsPanel& panel, const CoefficientMatrix& tz_fit,
                                  const CoefficientMatrix& cls_fit, std::size_t first_row) {
  if (tz_fit.structure.kind() != LagKind::TimeZone || cls_fit.structure.kind() != LagKind::Classic) {
    throw EstimationError("comparison needs a time-zone fit and a classic fit");
  }
  const Eigen::MatrixXd tz_hat = fitted_values(panel, tz_fit);
  const Eigen::MatrixXd cls_hat = fitted_values(panel, cls_fit);
  const Eigen::Index rows = tz_hat.rows();
  if (static_cast<Eigen::Index>(first_row) >= rows) throw EstimationError("no rows to score");
  const Eigen::Index count = rows - static_cast<Eigen::Index>(first_row);
  const Eigen::MatrixXd actual = panel.values().bottomRows(count);

  std::vector<MetricValue> out;
  for (Eigen::Index k = 0; k < tz_hat.cols(); ++k) {
    const double rss_tz = (actual.col(k) - tz_hat.col(k).tail(count)).squaredNorm();
    const double rss_cls = (actual.col(k) - cls_hat.col(k).tail(count)).squaredNorm();
    if (rss_cls == 0.0) {
      out.push_back(MetricValue::undefined("classic residual sum is zero"));
    } else {
      out.push_back(MetricValue::of(1.0 - rss_tz / rss_cls));
    }
  }
  return out;
}

std::vector<MetricValue> in_sample_r2(const ReturnsPanel& panel, const CoefficientMatrix& tz_fit,
                                      const CoefficientMatrix& cls_fit) {
  return r2_ratio(panel, tz_fit, cls_fit, 0);
}

std::uint64_t classic_seed(std::uint64_t seed) { return derive_seed(seed, 0xc1a551cULL); }

namespace {

std::pair<StaticEstimate, StaticEstimate> fit_both(const ReturnsPanel& panel, const PipelineOptions& opts) {
  PipelineOptions tz = opts;
  tz.structure = LagStructure::time_zone();
  PipelineOptions cls = opts;
  cls.structure = LagStructure::classic();
  cls.seed = classic_seed(opts.seed);
  return {estimate_network(panel, tz), estimate_network(panel, cls)};
}

}  // namespace

ComparisonReport compare_models(const ReturnsPanel& panel, const PipelineOptions& opts,
                                bool out_of_sample) {
  ComparisonReport report;
  const auto [tz, cls] = fit_both(panel, opts);
  const auto r2 = in_sample_r2(panel, tz.coefficients, cls.coefficients);
  for (const auto& w : tz.warnings) report.warnings.push_back("timezone: " + w);
  for (const auto& w : cls.warnings) report.warnings.push_back("classic: " + w);

  std::vector<MetricValue> oos;
  if (out_of_sample) {
    const std::size_t train_rows = panel.rows() * 4 / 5;
    const auto [tz_train, cls_train] = fit_both(panel.rows_slice(0, train_rows), opts);
    // regression row i predicts date i + 1; hold out dates >= train_rows
    oos = r2_ratio(panel, tz_train.coefficients, cls_train.coefficients, train_rows - 1);
  }

  const auto& ms = panel.markets();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    ComparisonRow row{ms[k].id, ms[k].continent, r2[k], std::nullopt};
    if (out_of_sample) row.r2_oos = oos[k];
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace tzvar

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tzvar/metrics.hpp"
#include "tzvar/panel.hpp"
#include "tzvar/pipeline.hpp"
#include "tzvar/var_model.hpp"

namespace tzvar {

// R2 = 1 - RSS(time-zone) / RSS(classic) per market over t = 2..T; positive
// when the time-zone fit is better. Undefined when the classic RSS is zero.
std::vector<MetricValue> in_sample_r2(const ReturnsPanel& panel, const CoefficientMatrix& tz_fit,
                                      const CoefficientMatrix& cls_fit);

// Same ratio on a subset of regression rows (0-based, row i predicts date i+1).
std::vector<MetricValue> r2_ratio(const ReturnsPanel& panel, const CoefficientMatrix& tz_fit,
                                  const CoefficientMatrix& cls_fit, std::size_t first_row);

struct ComparisonRow {
  std::string id;
  Continent continent = Continent::Asia;
  MetricValue r2_is;
  std::optional<MetricValue> r2_oos;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  std::vector<std::string> warnings;
};

// Independent selection streams for the two models.
std::uint64_t classic_seed(std::uint64_t seed);

// Runs the full pipeline under both lag structures. With out_of_sample, both
// are refit on the first 80% of rows and scored on the remaining 20%.
ComparisonReport compare_models(const ReturnsPanel& panel, const PipelineOptions& opts,
                                bool out_of_sample = false);

}  // namespace tzvar

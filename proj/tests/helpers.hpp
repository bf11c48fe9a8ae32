#pragma once

#include <Eigen/Core>

#include <array>
#include <chrono>
#include <random>

#include "tzvar/panel.hpp"
#include "tzvar/synth.hpp"

namespace testing {

// Panel on the synthetic roster with business-day dates.
inline tzvar::ReturnsPanel make_panel(const Eigen::MatrixXd& values, std::array<int, 3> per_continent) {
  using namespace std::chrono;
  auto markets = tzvar::synthetic_markets(per_continent);
  auto dates = tzvar::business_days(year{2001} / January / 8, static_cast<std::size_t>(values.rows()));
  return tzvar::ReturnsPanel(dates, markets, values);
}

inline Eigen::MatrixXd gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = n(rng);
  return m;
}

}  // namespace testing

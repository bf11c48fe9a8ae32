#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>

#include "tzvar/date.hpp"
#include "tzvar/market.hpp"
#include "tzvar/metrics.hpp"
#include "tzvar/network.hpp"
#include "tzvar/panel.hpp"
#include "tzvar/var_model.hpp"

namespace tzvar {

struct TzVarSpec {
  std::array<int, 3> n_per_continent{4, 4, 4};  // Asia, Europe, Americas
  double sparsity = 0.12;                      // activation probability per off-diagonal pair
  double coef_low = 0.2;                       // |coef| ~ U[low, high], random sign
  double coef_high = 0.5;
  double noise_sd = 1.0;
  bool ar_on_diag = false;  // diagonal always active when true, empty otherwise
  std::uint64_t seed = 1;
  LagStructure structure = LagStructure::time_zone();
};

// Known sparse system x_t = C x_t + D x_{t-1} + e_t, where C holds the
// same-day terms and D the lagged ones, stacked into B(target, source).
struct GroundTruth {
  MarketSet markets;
  LagStructure structure;
  Eigen::MatrixXd B;
  Eigen::VectorXd noise_sd;
  std::uint64_t seed = 0;
  double spectral_radius = 0.0;  // of (I - C)^{-1} D
};

MarketSet synthetic_markets(const std::array<int, 3>& n_per_continent);

// Spectral radius of the reduced-form transition (I - C)^{-1} D.
double implied_spectral_radius(const Eigen::MatrixXd& B, const MarketSet& markets, LagStructure s);

// Rejection-samples until the implied system is stationary (at most 1000 draws).
GroundTruth random_tz_var(const TzVarSpec& spec);

// Weekdays starting at `first` (first itself is skipped if it is a weekend).
std::vector<Date> business_days(Date first, std::size_t count);

// Simulates day by day in Asia -> Europe -> Americas order with Gaussian noise
// and discards the first burn_in rows.
ReturnsPanel simulate_panel(const GroundTruth& truth, int T, int burn_in = 200);

// As simulate_panel, with `before` driving rows < switch_row and `after` the rest.
ReturnsPanel simulate_switch(const GroundTruth& before, const GroundTruth& after, int T,
                             int switch_row, int burn_in = 200);

struct RecoveryScore {
  MetricValue precision;
  MetricValue recall;
  MetricValue sign_accuracy;  // on edges present in both
  std::size_t true_edges = 0;
  std::size_t predicted_edges = 0;
  std::size_t true_positives = 0;
};

// Off-diagonal support recovery of `estimate` against the generating system.
RecoveryScore recovery_score(const GroundTruth& truth, const SignedNetwork& estimate);

}  // namespace tzvar

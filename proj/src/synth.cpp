#include "tzvar/synth.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <random>
#include <string>

#include "tzvar/errors.hpp"
#include "tzvar/rng.hpp"

namespace tzvar {

namespace {

const char* kPrefix[3] = {"AS", "EU", "AM"};
const char* kClose[3] = {"1.00a", "11.30a", "4.00p"};

}  // namespace

MarketSet synthetic_markets(const std::array<int, 3>& n_per_continent) {
  std::vector<Market> markets;
  for (int c = 0; c < 3; ++c) {
    if (n_per_continent[static_cast<std::size_t>(c)] < 0) throw ConfigError("negative market count");
    for (int i = 1; i <= n_per_continent[static_cast<std::size_t>(c)]; ++i) {
      Market m;
      m.id = std::string(kPrefix[c]) + std::to_string(i);
      m.name = "Synthetic " + m.id;
      m.continent = kContinents[static_cast<std::size_t>(c)];
      m.close_minutes = *parse_close_time(kClose[c]);
      m.index_code = "SYN" + m.id;
      markets.push_back(std::move(m));
    }
  }
  if (markets.empty()) throw ConfigError("synthetic system needs at least one market");
  return MarketSet(std::move(markets));
}

double implied_spectral_radius(const Eigen::MatrixXd& B, const MarketSet& markets, LagStructure s) {
  const Eigen::Index n = B.rows();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const int lag = s.lag(markets.continent(static_cast<std::size_t>(k)),
                            markets.continent(static_cast<std::size_t>(l)));
      (lag == 0 ? C : D)(k, l) = B(k, l);
    }
  }
  const Eigen::MatrixXd transition =
      (Eigen::MatrixXd::Identity(n, n) - C).partialPivLu().solve(D);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(transition, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

GroundTruth random_tz_var(const TzVarSpec& spec) {
  if (!(spec.sparsity >= 0.0 && spec.sparsity <= 1.0)) throw ConfigError("sparsity must lie in [0, 1]");
  if (!(spec.coef_low >= 0.0 && spec.coef_low <= spec.coef_high)) {
    throw ConfigError("coef_range must satisfy 0 <= low <= high");
  }
  if (!(spec.noise_sd > 0.0)) throw ConfigError("noise_sd must be positive");

  GroundTruth g;
  g.markets = synthetic_markets(spec.n_per_continent);
  g.structure = spec.structure;
  g.seed = spec.seed;
  const auto n = static_cast<Eigen::Index>(g.markets.size());
  g.noise_sd = Eigen::VectorXd::Constant(n, spec.noise_sd);

  Engine engine = make_engine(derive_seed(spec.seed, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(spec.coef_low, spec.coef_high);
  auto draw = [&] { return (unit(engine) < 0.5 ? -1.0 : 1.0) * magnitude(engine); };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index l = 0; l < n; ++l) {
        const bool active = k == l ? spec.ar_on_diag : unit(engine) < spec.sparsity;
        if (active) B(k, l) = draw();
      }
    }
    const double rho = implied_spectral_radius(B, g.markets, g.structure);
    if (rho < 1.0) {
      g.B = std::move(B);
      g.spectral_radius = rho;
      return g;
    }
  }
  throw EstimationError("no stationary system found in 1000 draws; use smaller coefficients");
}

std::vector<Date> business_days(Date first, std::size_t count) {
  using namespace std::chrono;
  std::vector<Date> out;
  out.reserve(count);
  sys_days day{first};
  while (out.size() < count) {
    const weekday wd{day};
    if (wd != Saturday && wd != Sunday) out.emplace_back(day);
    day += days{1};
  }
  return out;
}

namespace {

ReturnsPanel simulate(const GroundTruth& before, const GroundTruth* after, int T, int switch_row,
                      int burn_in) {
  if (T < 60) throw ConfigError("simulation needs T >= 60");
  if (burn_in < 0) throw ConfigError("burn_in must be non-negative");
  const MarketSet& ms = before.markets;
  const auto n = static_cast<Eigen::Index>(ms.size());
  Engine engine = make_engine(derive_seed(before.seed, 1));
  std::normal_distribution<double> normal(0.0, 1.0);

  const int total = T + burn_in;
  Eigen::MatrixXd out(T, n);
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd cur(n);
  for (int t = 0; t < total; ++t) {
    const int row = t - burn_in;
    const GroundTruth& g = (after && row >= switch_row) ? *after : before;
    // MarketSet order is Asia, Europe, Americas, so same-day sources are ready
    for (Eigen::Index k = 0; k < n; ++k) {
      double v = g.noise_sd(k) * normal(engine);
      for (Eigen::Index l = 0; l < n; ++l) {
        const double b = g.B(k, l);
        if (b == 0.0) continue;
        const int lag = g.structure.lag(ms.continent(static_cast<std::size_t>(k)),
                                        ms.continent(static_cast<std::size_t>(l)));
        v += b * (lag == 0 ? cur(l) : prev(l));
      }
      cur(k) = v;
    }
    if (!cur.allFinite()) throw EstimationError("simulation produced non-finite values");
    if (row >= 0) out.row(row) = cur.transpose();
    prev = cur;
  }
  using namespace std::chrono;
  return ReturnsPanel(business_days(Date{year{2001}, January, day{8}}, static_cast<std::size_t>(T)),
                      ms, std::move(out));
}

}  // namespace

ReturnsPanel simulate_panel(const GroundTruth& truth, int T, int burn_in) {
  return simulate(truth, nullptr, T, 0, burn_in);
}

ReturnsPanel simulate_switch(const GroundTruth& before, const GroundTruth& after, int T,
                             int switch_row, int burn_in) {
  if (!(before.markets == after.markets)) throw ConfigError("switch regimes need the same markets");
  return simulate(before, &after, T, switch_row, burn_in);
}

RecoveryScore recovery_score(const GroundTruth& truth, const SignedNetwork& estimate) {
  if (!(truth.markets == estimate.markets)) throw ConfigError("recovery needs the same market roster");
  RecoveryScore s;
  std::size_t sign_hits = 0;
  const auto n = static_cast<Eigen::Index>(truth.markets.size());
  for (Eigen::Index source = 0; source < n; ++source) {
    for (Eigen::Index target = 0; target < n; ++target) {
      if (source == target) continue;
      const double b = truth.B(target, source);
      const int a = estimate.adjacency(source, target);
      const bool is_true = b != 0.0;
      const bool predicted = a != 0;
      s.true_edges += is_true;
      s.predicted_edges += predicted;
      if (is_true && predicted) {
        ++s.true_positives;
        if ((b > 0.0) == (a > 0)) ++sign_hits;
      }
    }
  }
  const auto ratio = [](std::size_t num, std::size_t den, const char* why) {
    return den == 0 ? MetricValue::undefined(why)
                    : MetricValue::of(static_cast<double>(num) / static_cast<double>(den));
  };
  s.precision = ratio(s.true_positives, s.predicted_edges, "no predicted edges");
  s.recall = ratio(s.true_positives, s.true_edges, "no true edges");
  s.sign_accuracy = ratio(sign_hits, s.true_positives, "no recovered edges");
  return s;
}

}  // namespace tzvar

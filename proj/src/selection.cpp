#include "tzvar/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "tzvar/errors.hpp"
#include "tzvar/parallel.hpp"
#include "tzvar/rng.hpp"

namespace tzvar {

int fold_count(std::size_t sample_size, int min_fold_size) {
  const int k = static_cast<int>(sample_size / static_cast<std::size_t>(min_fold_size));
  if (k < 2) throw EstimationError("sample too short for CV");
  return k;
}

FoldPlan partition_rows(std::size_t rows, int folds, std::uint64_t seed) {
  if (folds < 2 || rows < static_cast<std::size_t>(folds)) {
    throw EstimationError("sample too short for CV");
  }
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Engine engine = make_engine(seed);
  std::shuffle(order.begin(), order.end(), engine);

  FoldPlan plan;
  plan.folds = folds;
  plan.seed = seed;
  plan.assignment.assign(rows, 0);
  for (std::size_t pos = 0; pos < rows; ++pos) {
    plan.assignment[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(folds));
  }
  return plan;
}

FoldPlan partition_folds(std::size_t sample_size, std::uint64_t seed, int min_fold_size) {
  return partition_rows(sample_size - 1, fold_count(sample_size, min_fold_size), seed);
}

LambdaGrid equation_grid(const DesignMatrix& d, const SelectionOptions& opts) {
  return lambda_grid(lambda_max(d), opts.grid_points, opts.min_ratio);
}

EquationCv::EquationCv(const RegressionData& data, const LassoOptions& opts)
    : opts_(opts), x_(data.x), y_(data.y) {
  const Eigen::Index n = x_.rows();
  if (opts_.standardize && n > 0) {
    const Eigen::RowVectorXd mx = x_.colwise().mean();
    x_.rowwise() -= mx;
    y_.array() -= y_.mean();
  }
  sum_x_ = x_.colwise().sum().transpose();
  sum_xx_ = x_.transpose() * x_;
  sum_xy_ = x_.transpose() * y_;
  sum_y_ = y_.sum();
  sum_yy_ = y_.squaredNorm();
  const double nn = static_cast<double>(std::max<Eigen::Index>(n, 1));
  column_ss_ = sum_xx_.diagonal() - sum_x_.cwiseAbs2() / nn;
  response_ss_ = sum_yy_ - sum_y_ * sum_y_ / nn;
}

EquationCv::Outcome EquationCv::evaluate(const LambdaGrid& grid, const FoldPlan& plan) const {
  const Eigen::Index n = x_.rows();
  const Eigen::Index p = x_.cols();
  if (static_cast<Eigen::Index>(plan.assignment.size()) != n) {
    throw EstimationError("fold plan does not match the regression sample");
  }
  Outcome out;
  out.errors.assign(grid.size(), 0.0);

  std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(plan.folds));
  for (Eigen::Index i = 0; i < n; ++i) {
    members[static_cast<std::size_t>(plan.assignment[static_cast<std::size_t>(i)])].push_back(i);
  }

  GramSystem g;
  g.excluded.assign(static_cast<std::size_t>(p), false);
  Eigen::VectorXd scale(p);
  Eigen::VectorXd beta(p);

  for (const auto& rows : members) {
    const auto nf = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index ntr = n - nf;
    if (nf == 0 || ntr < 2) {
      ++out.skipped_folds;
      continue;
    }
    Eigen::MatrixXd xf(nf, p);
    Eigen::VectorXd yf(nf);
    for (Eigen::Index r = 0; r < nf; ++r) {
      xf.row(r) = x_.row(rows[static_cast<std::size_t>(r)]);
      yf(r) = y_(rows[static_cast<std::size_t>(r)]);
    }
    const double dn = static_cast<double>(ntr);
    const Eigen::VectorXd sx = sum_x_ - xf.colwise().sum().transpose();
    const double sy = sum_y_ - yf.sum();
    Eigen::MatrixXd sxx = sum_xx_;
    sxx.noalias() -= xf.transpose() * xf;
    Eigen::VectorXd sxy = sum_xy_;
    sxy.noalias() -= xf.transpose() * yf;
    const double syy = sum_yy_ - yf.squaredNorm();

    Eigen::VectorXd mean_x = Eigen::VectorXd::Zero(p);
    double mean_y = 0.0;
    if (opts_.standardize) {
      mean_x = sx / dn;
      mean_y = sy / dn;
      const double cyy = syy - dn * mean_y * mean_y;
      if (!(cyy > 1e-12 * response_ss_) || response_ss_ <= 0.0) {
        ++out.skipped_folds;
        continue;
      }
      g.gram = sxx - dn * mean_x * mean_x.transpose();
      g.xty = sxy - dn * mean_y * mean_x;
      g.yty = cyy;
      for (Eigen::Index j = 0; j < p; ++j) {
        const double css = g.gram(j, j);
        const bool zero = !(css > 1e-12 * column_ss_(j)) || column_ss_(j) <= 0.0;
        g.excluded[static_cast<std::size_t>(j)] = zero;
        scale(j) = zero ? 1.0 : std::sqrt(css / (dn - 1.0));
      }
      for (Eigen::Index j = 0; j < p; ++j) {
        g.xty(j) /= scale(j);
        for (Eigen::Index k = 0; k < p; ++k) g.gram(j, k) /= scale(j) * scale(k);
      }
    } else {
      if (syy <= 0.0) {
        ++out.skipped_folds;
        continue;
      }
      g.gram = std::move(sxx);
      g.xty = std::move(sxy);
      g.yty = syy;
      for (Eigen::Index j = 0; j < p; ++j) {
        g.excluded[static_cast<std::size_t>(j)] = !(g.gram(j, j) > 0.0);
        scale(j) = 1.0;
      }
    }

    // held-out rows in the training frame
    Eigen::MatrixXd xc = xf.rowwise() - mean_x.transpose();
    const Eigen::VectorXd yc = yf.array() - mean_y;
    for (Eigen::Index j = 0; j < p; ++j) xc.col(j) /= scale(j);

    beta.setZero();
    for (std::size_t li = 0; li < grid.size(); ++li) {
      auto cd = coordinate_descent(g, grid.values[li], beta, opts_);
      beta = std::move(cd.beta);
      out.errors[li] += (yc - xc * beta).squaredNorm();
    }
  }

  for (std::size_t li = 1; li < grid.size(); ++li) {
    if (out.errors[li] < out.errors[out.index]) out.index = li;
  }
  return out;
}

double cv_select(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                 const LambdaGrid& grid, const FoldPlan& plan, const LassoOptions& opts,
                 std::vector<std::string>* warnings) {
  if (grid.size() == 0) throw ConfigError("empty lambda grid");
  const auto idx = panel.markets().require_index(target);
  const EquationCv cv(regression_data(panel, idx, s), opts);
  const auto outcome = cv.evaluate(grid, plan);
  if (warnings && outcome.skipped_folds > 0) {
    warnings->push_back(std::string(target) + ": " + std::to_string(outcome.skipped_folds) +
                        " fold(s) skipped (zero-variance training response)");
  }
  return grid.values[outcome.index];
}

LambdaSelection tabulate_selection(std::span<const double> chosen, int top_m) {
  if (top_m < 1) throw ConfigError("M must be at least 1");
  std::map<double, int, std::greater<>> counts;
  for (double v : chosen) ++counts[v];

  std::vector<LambdaCount> table;
  for (const auto& [lambda, freq] : counts) table.push_back({lambda, freq});
  // counts iterate in decreasing lambda, so a stable sort keeps larger lambdas first on ties
  std::stable_sort(table.begin(), table.end(),
                   [](const LambdaCount& a, const LambdaCount& b) { return a.frequency > b.frequency; });

  LambdaSelection sel;
  sel.replications = static_cast<int>(chosen.size());
  sel.top_m = top_m;
  if (table.size() < static_cast<std::size_t>(top_m)) {
    sel.notes.push_back("only " + std::to_string(table.size()) + " distinct penalties selected; M reduced");
  }
  table.resize(std::min(table.size(), static_cast<std::size_t>(top_m)));
  sel.top = std::move(table);
  for (const auto& entry : sel.top) sel.lambda_star = std::max(sel.lambda_star, entry.lambda);
  return sel;
}

namespace {

LambdaSelection repeated_cv_impl(const EquationCv& cv, const LambdaGrid& grid, int replications,
                                 int folds, int top_m, std::uint64_t seed) {
  std::vector<double> chosen;
  chosen.reserve(static_cast<std::size_t>(replications));
  int skipped = 0;
  for (int r = 0; r < replications; ++r) {
    const auto plan = partition_rows(static_cast<std::size_t>(cv.rows()), folds,
                                     derive_seed(seed, static_cast<std::uint64_t>(r)));
    const auto outcome = cv.evaluate(grid, plan);
    skipped += outcome.skipped_folds;
    chosen.push_back(grid.values[outcome.index]);
  }
  auto sel = tabulate_selection(chosen, top_m);
  if (skipped > 0) {
    sel.notes.push_back(std::to_string(skipped) + " fold fit(s) skipped (zero-variance training response)");
  }
  return sel;
}

}  // namespace

LambdaSelection repeated_cv(const ReturnsPanel& panel, std::string_view target, LagStructure s,
                            const LambdaGrid& grid, int replications, int top_m,
                            std::uint64_t seed, const LassoOptions& opts, int min_fold_size) {
  if (replications < 1) throw ConfigError("R must be at least 1");
  if (grid.size() == 0) throw ConfigError("empty lambda grid");
  const auto idx = panel.markets().require_index(target);
  const EquationCv cv(regression_data(panel, idx, s), opts);
  return repeated_cv_impl(cv, grid, replications, fold_count(panel.rows(), min_fold_size), top_m, seed);
}

NetworkEstimate build_network(const ReturnsPanel& panel, LagStructure s,
                              const std::vector<LambdaSelection>& selections,
                              const LassoOptions& opts, int threads) {
  const auto& ms = panel.markets();
  const std::size_t n = ms.size();
  if (selections.size() != n) throw ConfigError("selections must cover every market");

  struct Column {
    LassoFit star;
    Eigen::VectorXd averaged;
  };
  std::vector<Column> columns(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const auto data = regression_data(panel, k, s);
    const DesignMatrix d = make_design(data.x, data.y, opts.standardize);
    const auto& sel = selections[k];
    Column col;
    col.star = lasso_fit(d, sel.lambda_star, std::nullopt, opts);
    col.averaged = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    double total = 0.0;
    for (const auto& entry : sel.top) total += entry.frequency;
    for (const auto& entry : sel.top) {
      const LassoFit fit = entry.lambda == sel.lambda_star
                               ? col.star
                               : lasso_fit(d, entry.lambda, std::nullopt, opts);
      col.averaged += (entry.frequency / total) * fit.coefficients;
    }
    columns[k] = std::move(col);
  });

  NetworkEstimate out;
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(N, N);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(N, N);
  out.coefficients.markets = ms;
  out.coefficients.structure = s;
  out.coefficients.B = Eigen::MatrixXd::Zero(N, N);
  out.coefficients.intercepts = Eigen::VectorXd::Zero(N);
  out.coefficients.converged.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    const auto target = static_cast<Eigen::Index>(k);
    const auto& col = columns[k];
    out.coefficients.B.row(target) = col.star.coefficients.transpose();
    out.coefficients.intercepts(target) = col.star.intercept;
    out.coefficients.converged[k] = col.star.converged;
    if (!col.star.converged) out.warnings.push_back(ms[k].id + ": solver did not converge");
    for (Eigen::Index source = 0; source < N; ++source) {
      const double beta = col.star.coefficients(source);
      const int sign = (beta > 0.0) - (beta < 0.0);
      if (sign == 0) continue;
      const double avg = col.averaged(source);
      const int avg_sign = (avg > 0.0) - (avg < 0.0);
      if (avg_sign != sign) {
        out.warnings.push_back("sign conflict on " + ms[static_cast<std::size_t>(source)].id + " -> " +
                               ms[k].id + ": averaged weight disagrees with the adjacency sign; edge dropped");
        continue;
      }
      a(source, target) = sign;
      w(source, target) = avg;
    }
  }
  out.coefficients.warnings = out.warnings;
  out.network = make_network(ms, std::move(a), std::move(w));
  return out;
}

Eigen::MatrixXi build_adjacency(const ReturnsPanel& panel, LagStructure s,
                                const std::vector<LambdaSelection>& selections,
                                const LassoOptions& opts) {
  return build_network(panel, s, selections, opts).network.adjacency;
}

Eigen::MatrixXd build_weights(const ReturnsPanel& panel, LagStructure s,
                              const std::vector<LambdaSelection>& selections,
                              const LassoOptions& opts) {
  return build_network(panel, s, selections, opts).network.weights;
}

std::vector<StabilityPoint> stability_trace(const std::vector<Eigen::MatrixXi>& networks) {
  std::vector<StabilityPoint> out;
  if (networks.empty()) return out;
  const Eigen::Index n = networks.front().rows();
  const double denom = static_cast<double>(n) * static_cast<double>(n - 1);
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> shared =
      Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, true);
  for (std::size_t r = 0; r < networks.size(); ++r) {
    const auto support = networks[r].array() != 0;
    shared = shared && support;
    StabilityPoint pt;
    pt.replication = static_cast<int>(r + 1);
    pt.edges = static_cast<std::size_t>(support.count());
    pt.density = static_cast<double>(pt.edges) / denom;
    pt.mutual_proportion = static_cast<double>(shared.count()) / denom;
    out.push_back(pt);
  }
  return out;
}

std::vector<StabilityPoint> stability_diagnostics(const ReturnsPanel& panel, LagStructure s,
                                                  int reps, CvVariant variant, std::uint64_t seed,
                                                  const SelectionOptions& opts, int threads) {
  if (reps < 1) throw ConfigError("stability needs at least one replication");
  const std::size_t n = panel.cols();
  const int folds = fold_count(panel.rows(), opts.min_fold_size);

  std::vector<DesignMatrix> designs;
  std::vector<EquationCv> cvs;
  std::vector<LambdaGrid> grids;
  for (std::size_t k = 0; k < n; ++k) {
    const auto data = regression_data(panel, k, s);
    designs.push_back(make_design(data.x, data.y, opts.lasso.standardize));
    cvs.emplace_back(data, opts.lasso);
    grids.push_back(equation_grid(designs.back(), opts));
  }

  const auto N = static_cast<Eigen::Index>(n);
  std::vector<Eigen::MatrixXi> networks(static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    const std::uint64_t rep_seed = derive_seed(seed, r);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(N, N);
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t eq_seed = derive_seed(rep_seed, k);
      double lambda = 0.0;
      if (variant == CvVariant::Classic) {
        const auto plan = partition_rows(static_cast<std::size_t>(cvs[k].rows()), folds, eq_seed);
        lambda = grids[k].values[cvs[k].evaluate(grids[k], plan).index];
      } else {
        lambda = repeated_cv_impl(cvs[k], grids[k], opts.replications, folds, opts.top_m, eq_seed)
                     .lambda_star;
      }
      const auto fit = lasso_fit(designs[k], lambda, std::nullopt, opts.lasso);
      for (Eigen::Index source = 0; source < N; ++source) {
        const double b = fit.coefficients(source);
        a(source, static_cast<Eigen::Index>(k)) = (b > 0.0) - (b < 0.0);
      }
    }
    networks[r] = std::move(a);
  });
  return stability_trace(networks);
}

}  // namespace tzvar

#include "tzvar/pipeline.hpp"

#include "tzvar/parallel.hpp"
#include "tzvar/rng.hpp"

namespace tzvar {

std::uint64_t equation_seed(std::uint64_t seed, std::size_t equation) {
  return derive_seed(seed, static_cast<std::uint64_t>(equation));
}

StaticEstimate estimate_network(const ReturnsPanel& panel, const PipelineOptions& opts) {
  const auto& ms = panel.markets();
  const std::size_t n = ms.size();
  const auto& sel_opts = opts.selection;
  fold_count(panel.rows(), sel_opts.min_fold_size);  // fail early on short samples

  StaticEstimate out;
  out.selections.resize(n);
  std::vector<bool> skipped(n, false);
  parallel_for(n, opts.threads, [&](std::size_t k) {
    const auto data = regression_data(panel, k, opts.structure);
    const DesignMatrix d = make_design(data.x, data.y, sel_opts.lasso.standardize);
    if (d.y.squaredNorm() == 0.0 || d.rows() < 2) {
      skipped[k] = true;
      LambdaSelection sel;
      sel.replications = sel_opts.replications;
      sel.top_m = sel_opts.top_m;
      sel.notes.push_back("zero-variance response; equation skipped");
      out.selections[k] = std::move(sel);
      return;
    }
    const LambdaGrid grid = equation_grid(d, sel_opts);
    out.selections[k] = repeated_cv(panel, ms[k].id, opts.structure, grid, sel_opts.replications,
                                    sel_opts.top_m, equation_seed(opts.seed, k), sel_opts.lasso,
                                    sel_opts.min_fold_size);
  });

  for (std::size_t k = 0; k < n; ++k) {
    if (skipped[k]) {
      out.skipped_markets.push_back(ms[k].id);
      out.warnings.push_back(ms[k].id + ": zero-variance response; equation skipped");
    }
    for (const auto& note : out.selections[k].notes) {
      if (!skipped[k]) out.warnings.push_back(ms[k].id + ": " + note);
    }
  }

  auto net = build_network(panel, opts.structure, out.selections, sel_opts.lasso, opts.threads);
  out.coefficients = std::move(net.coefficients);
  out.network = std::move(net.network);
  for (auto& w : net.warnings) out.warnings.push_back(std::move(w));
  for (const auto& w : ms.close_order_warnings()) out.warnings.push_back("close order: " + w);
  return out;
}

}  // namespace tzvar

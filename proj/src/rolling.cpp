#include "tzvar/rolling.hpp"

#include <exception>
#include <set>

#include "tzvar/errors.hpp"
#include "tzvar/parallel.hpp"

namespace tzvar {

WindowPlan rolling_windows(const ReturnsPanel& panel, std::size_t length, std::size_t step) {
  if (length < 60) throw ConfigError("rolling window length must be at least 60 rows");
  if (step < 1) throw ConfigError("rolling step must be at least 1");
  if (panel.rows() < length) throw DataError("panel is shorter than one rolling window");

  WindowPlan plan;
  plan.length = length;
  plan.step = step;
  std::set<int> labelled;
  for (std::size_t first = 0; first + length <= panel.rows(); first += step) {
    Window w;
    w.first = first;
    w.last = first + length - 1;
    w.start_date = panel.dates()[w.first];
    w.end_date = panel.dates()[w.last];
    const int year = static_cast<int>(w.start_date.year());
    if (labelled.insert(year).second) w.year_label = year;
    plan.windows.push_back(w);
  }
  return plan;
}

std::uint64_t window_seed(std::uint64_t seed, std::size_t window_index) {
  return seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(window_index);
}

RollingResult rolling_flows(const ReturnsPanel& panel, const PipelineOptions& opts,
                            std::size_t length, std::size_t step) {
  RollingResult out;
  out.plan = rolling_windows(panel, length, step);
  out.windows.resize(out.plan.windows.size());

  PipelineOptions inner = opts;
  inner.threads = 1;
  parallel_for(out.plan.windows.size(), opts.threads, [&](std::size_t w) {
    WindowResult res;
    res.window = out.plan.windows[w];
    try {
      PipelineOptions local = inner;
      local.seed = window_seed(opts.seed, w);
      const auto estimate = estimate_network(panel.rows_slice(res.window.first, length), local);
      res.positive = continent_flows(estimate.network, FlowBasis::Strengths, SignClass::Positive);
      res.negative = continent_flows(estimate.network, FlowBasis::Strengths, SignClass::Negative);
      res.skipped_markets = estimate.skipped_markets;
      res.partial = !res.skipped_markets.empty();
      res.ok = true;
    } catch (const std::exception& e) {
      res.error = e.what();
    }
    out.windows[w] = std::move(res);
  });
  return out;
}

}  // namespace tzvar

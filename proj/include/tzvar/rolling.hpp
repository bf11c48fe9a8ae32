#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tzvar/date.hpp"
#include "tzvar/metrics.hpp"
#include "tzvar/panel.hpp"
#include "tzvar/pipeline.hpp"

namespace tzvar {

struct Window {
  std::size_t first = 0;  // row index of the first day
  std::size_t last = 0;   // row index of the last day, inclusive
  Date start_date;
  Date end_date;
  std::optional<int> year_label;  // set on the first window starting in each year
};

struct WindowPlan {
  std::size_t length = 150;
  std::size_t step = 5;
  std::vector<Window> windows;
};

WindowPlan rolling_windows(const ReturnsPanel& panel, std::size_t length = 150, std::size_t step = 5);

// Window 0 uses the run seed itself, so a one-window run matches the static
// pipeline on the same slice and seed.
std::uint64_t window_seed(std::uint64_t seed, std::size_t window_index);

struct WindowResult {
  Window window;
  bool ok = false;
  std::string error;
  bool partial = false;  // at least one equation skipped
  std::vector<std::string> skipped_markets;
  ContinentFlow positive;  // strengths basis
  ContinentFlow negative;
};

struct RollingResult {
  WindowPlan plan;
  std::vector<WindowResult> windows;  // window order
};

RollingResult rolling_flows(const ReturnsPanel& panel, const PipelineOptions& opts,
                            std::size_t length = 150, std::size_t step = 5);

}  // namespace tzvar

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tzvar/date.hpp"
#include "tzvar/market.hpp"

namespace tzvar {

using GapMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Dates x markets as read from disk; gap(t, j) marks an empty cell.
struct RawPanel {
  std::vector<Date> dates;
  MarketSet markets;
  Eigen::MatrixXd values;
  GapMask gaps;

  std::size_t rows() const { return dates.size(); }
  std::size_t cols() const { return markets.size(); }
};

enum class AlignmentPolicy { Intersect, ZeroFill, ForwardFill };

std::string_view policy_name(AlignmentPolicy p);
AlignmentPolicy parse_policy(std::string_view token);  // throws ConfigError

// Sidecar produced by align_panel.
struct AlignmentReport {
  AlignmentPolicy policy = AlignmentPolicy::Intersect;
  std::size_t raw_rows = 0;
  std::size_t dropped_rows = 0;  // Intersect only
  std::size_t filled_cells = 0;  // ZeroFill / ForwardFill
  GapMask filled;                // aligned rows x markets; empty under Intersect
};

// Rectangular T x N panel of daily returns. Dates strictly increase, T >= 2,
// and column j belongs to markets[j].
class ReturnsPanel {
 public:
  ReturnsPanel() = default;
  ReturnsPanel(std::vector<Date> dates, MarketSet markets, Eigen::MatrixXd values);

  std::size_t rows() const { return dates_.size(); }
  std::size_t cols() const { return markets_.size(); }
  const std::vector<Date>& dates() const { return dates_; }
  const MarketSet& markets() const { return markets_; }
  const Eigen::MatrixXd& values() const { return values_; }

  // Contiguous rows [first, first + count).
  ReturnsPanel rows_slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const ReturnsPanel& a, const ReturnsPanel& b);

 private:
  std::vector<Date> dates_;
  MarketSet markets_;
  Eigen::MatrixXd values_;
};

struct AlignedPanel {
  ReturnsPanel panel;
  AlignmentReport report;
};

RawPanel load_returns_csv(const std::filesystem::path& path, const MarketSet& markets);
RawPanel parse_returns_csv(std::string_view csv_text, const MarketSet& markets);

AlignedPanel align_panel(const RawPanel& raw, AlignmentPolicy policy = AlignmentPolicy::Intersect);

// Rows with start <= date <= end.
ReturnsPanel slice_period(const ReturnsPanel& panel, const Date& start, const Date& end);

std::string returns_to_csv(const ReturnsPanel& panel);
void write_returns_csv(const std::filesystem::path& path, const ReturnsPanel& panel);

}  // namespace tzvar

#include "tzvar/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "tzvar/csv.hpp"
#include "tzvar/errors.hpp"

namespace tzvar {

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, auto& out) {
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return std::nullopt;
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

std::string_view policy_name(AlignmentPolicy p) {
  switch (p) {
    case AlignmentPolicy::Intersect:
      return "intersect";
    case AlignmentPolicy::ZeroFill:
      return "zerofill";
    case AlignmentPolicy::ForwardFill:
      return "forwardfill";
  }
  return "?";
}

AlignmentPolicy parse_policy(std::string_view token) {
  if (token == "intersect") return AlignmentPolicy::Intersect;
  if (token == "zerofill") return AlignmentPolicy::ZeroFill;
  if (token == "forwardfill") return AlignmentPolicy::ForwardFill;
  throw ConfigError("unknown alignment policy '" + std::string(token) + "'");
}

ReturnsPanel::ReturnsPanel(std::vector<Date> dates, MarketSet markets, Eigen::MatrixXd values)
    : dates_(std::move(dates)), markets_(std::move(markets)), values_(std::move(values)) {
  if (dates_.size() < 2) throw DataError("insufficient aligned sample (T < 2)");
  if (static_cast<std::size_t>(values_.rows()) != dates_.size() ||
      static_cast<std::size_t>(values_.cols()) != markets_.size()) {
    throw DataError("panel shape does not match dates x markets");
  }
  for (std::size_t t = 1; t < dates_.size(); ++t) {
    if (!(dates_[t - 1] < dates_[t])) throw DataError("panel dates must strictly increase");
  }
  if (!values_.allFinite()) throw DataError("panel contains non-finite returns");
}

ReturnsPanel ReturnsPanel::rows_slice(std::size_t first, std::size_t count) const {
  if (first + count > rows()) throw DataError("row slice out of range");
  std::vector<Date> d(dates_.begin() + static_cast<std::ptrdiff_t>(first),
                      dates_.begin() + static_cast<std::ptrdiff_t>(first + count));
  return ReturnsPanel(std::move(d), markets_,
                      values_.middleRows(static_cast<Eigen::Index>(first),
                                         static_cast<Eigen::Index>(count)));
}

bool operator==(const ReturnsPanel& a, const ReturnsPanel& b) {
  return a.dates_ == b.dates_ && a.markets_ == b.markets_ && a.values_ == b.values_;
}

RawPanel parse_returns_csv(std::string_view csv_text, const MarketSet& markets) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) throw DataError("returns file is empty");
  const auto& header = rows[0];
  if (header.empty() || header[0] != "date") throw DataError("returns header must start with 'date'");

  // file column -> market index
  std::vector<std::size_t> column_market;
  std::vector<bool> covered(markets.size(), false);
  for (std::size_t c = 1; c < header.size(); ++c) {
    auto idx = markets.index_of(header[c]);
    if (!idx) throw DataError("schema error: column '" + header[c] + "' is not in the market set");
    if (covered[*idx]) throw DataError("schema error: duplicate column '" + header[c] + "'");
    covered[*idx] = true;
    column_market.push_back(*idx);
  }
  for (std::size_t j = 0; j < markets.size(); ++j) {
    if (!covered[j]) throw DataError("schema error: market '" + markets[j].id + "' has no column");
  }

  struct Line {
    Date date;
    std::size_t source_row;
  };
  std::vector<Line> lines;
  const std::size_t n = markets.size();
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size() - 1), static_cast<Eigen::Index>(n));
  GapMask gaps = GapMask::Constant(values.rows(), values.cols(), false);

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "returns row " + std::to_string(r + 1);
    if (row.size() != header.size()) throw DataError(where + ": wrong number of fields");
    auto date = parse_date(row[0]);
    if (!date) throw DataError(where + ": bad date '" + row[0] + "'");
    const auto out = static_cast<Eigen::Index>(r - 1);
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto j = static_cast<Eigen::Index>(column_market[c - 1]);
      if (row[c].empty()) {
        values(out, j) = 0.0;
        gaps(out, j) = true;
        continue;
      }
      double v = 0.0;
      if (!csv::parse_double(row[c], v) || !std::isfinite(v)) {
        throw DataError(where + ", column '" + header[c] + "': non-numeric value '" + row[c] + "'");
      }
      values(out, j) = v;
    }
    lines.push_back({*date, r - 1});
  }

  std::stable_sort(lines.begin(), lines.end(),
                   [](const Line& a, const Line& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].date == lines[i - 1].date) {
      throw DataError("duplicate date " + format_date(lines[i].date));
    }
  }

  RawPanel raw;
  raw.markets = markets;
  raw.values.resize(values.rows(), values.cols());
  raw.gaps.resize(values.rows(), values.cols());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(lines[i].source_row);
    raw.values.row(static_cast<Eigen::Index>(i)) = values.row(src);
    raw.gaps.row(static_cast<Eigen::Index>(i)) = gaps.row(src);
    raw.dates.push_back(lines[i].date);
  }
  return raw;
}

RawPanel load_returns_csv(const std::filesystem::path& path, const MarketSet& markets) {
  return parse_returns_csv(csv::read_text(path), markets);
}

AlignedPanel align_panel(const RawPanel& raw, AlignmentPolicy policy) {
  if (raw.rows() == 0) throw DataError("raw panel is empty");
  AlignmentReport report;
  report.policy = policy;
  report.raw_rows = raw.rows();

  if (policy == AlignmentPolicy::Intersect) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index t = 0; t < raw.values.rows(); ++t) {
      if (!raw.gaps.row(t).any()) keep.push_back(t);
    }
    if (keep.size() < 2) throw DataError("insufficient aligned sample");
    std::vector<Date> dates;
    Eigen::MatrixXd values(static_cast<Eigen::Index>(keep.size()), raw.values.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      values.row(static_cast<Eigen::Index>(i)) = raw.values.row(keep[i]);
      dates.push_back(raw.dates[static_cast<std::size_t>(keep[i])]);
    }
    report.dropped_rows = raw.rows() - keep.size();
    return {ReturnsPanel(std::move(dates), raw.markets, std::move(values)), std::move(report)};
  }

  if (raw.rows() < 2) throw DataError("insufficient aligned sample");
  Eigen::MatrixXd values = raw.values;
  for (Eigen::Index t = 0; t < values.rows(); ++t) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (raw.gaps(t, j)) values(t, j) = 0.0;
    }
  }
  report.filled = raw.gaps;
  report.filled_cells = static_cast<std::size_t>(raw.gaps.count());
  return {ReturnsPanel(raw.dates, raw.markets, std::move(values)), std::move(report)};
}

ReturnsPanel slice_period(const ReturnsPanel& panel, const Date& start, const Date& end) {
  if (end < start) throw DataError("slice start is after end");
  const auto& dates = panel.dates();
  const auto first = std::lower_bound(dates.begin(), dates.end(), start);
  const auto last = std::upper_bound(dates.begin(), dates.end(), end);
  const auto count = static_cast<std::size_t>(std::distance(first, last));
  if (count < 2) {
    throw DataError("period " + format_date(start) + ".." + format_date(end) +
                    " has fewer than 2 rows");
  }
  return panel.rows_slice(static_cast<std::size_t>(std::distance(dates.begin(), first)), count);
}

std::string returns_to_csv(const ReturnsPanel& panel) {
  csv::Row header = {"date"};
  for (const auto& m : panel.markets()) header.push_back(m.id);
  std::string out = csv::join(header) + "\n";
  for (std::size_t t = 0; t < panel.rows(); ++t) {
    out += format_date(panel.dates()[t]);
    for (std::size_t j = 0; j < panel.cols(); ++j) {
      out += ',';
      out += csv::format_double(
          panel.values()(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)));
    }
    out += '\n';
  }
  return out;
}

void write_returns_csv(const std::filesystem::path& path, const ReturnsPanel& panel) {
  csv::write_text(path, returns_to_csv(panel));
}

}  // namespace tzvar

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tzvar {

using Date = std::chrono::year_month_day;

// Strict ISO-8601 calendar date, "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);

}  // namespace tzvar

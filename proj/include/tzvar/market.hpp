#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tzvar {

enum class Continent { Asia = 0, Europe = 1, Americas = 2 };

inline constexpr std::array<Continent, 3> kContinents = {Continent::Asia, Continent::Europe,
                                                         Continent::Americas};

std::string_view continent_name(Continent c);
// Accepts "Asia", "Europe", "Americas"/"America" (case-insensitive).
std::optional<Continent> parse_continent(std::string_view token);

// "4.00p" -> 960, "1.00a" -> 60, "0.00a" -> 0, "12.00p" -> 720.
std::optional<int> parse_close_time(std::string_view token);
std::string format_close_time(int minutes);

struct Market {
  std::string id;
  std::string name;
  Continent continent = Continent::Asia;
  int close_minutes = 0;  // minutes past midnight, EST
  std::string index_code;
};

// Ordered roster: Asia block, then Europe, then Americas; file order within a
// block. Ids are unique.
class MarketSet {
 public:
  MarketSet() = default;
  explicit MarketSet(std::vector<Market> markets);

  std::size_t size() const { return markets_.size(); }
  bool empty() const { return markets_.empty(); }
  const Market& operator[](std::size_t i) const { return markets_[i]; }
  const std::vector<Market>& markets() const { return markets_; }
  auto begin() const { return markets_.begin(); }
  auto end() const { return markets_.end(); }

  std::optional<std::size_t> index_of(std::string_view id) const;
  std::size_t require_index(std::string_view id) const;  // throws DataError
  Continent continent(std::size_t i) const { return markets_[i].continent; }
  std::vector<std::string> ids() const;
  std::vector<std::size_t> members(Continent c) const;

  // Warnings when close times do not follow the Asia < Europe < Americas
  // session order within one trading day (day starts 17:00 EST).
  std::vector<std::string> close_order_warnings() const;

  friend bool operator==(const MarketSet& a, const MarketSet& b);

 private:
  std::vector<Market> markets_;
};

MarketSet load_market_metadata(const std::filesystem::path& path);
MarketSet parse_market_metadata(std::string_view csv_text);
void write_market_metadata(const std::filesystem::path& path, const MarketSet& markets);

// The 36-market roster (index codes and close times) used in the empirical
// study; ids are ISO-style country codes.
MarketSet reference_markets();

}  // namespace tzvar

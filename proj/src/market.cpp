#include "tzvar/market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>

#include "tzvar/csv.hpp"
#include "tzvar/errors.hpp"

namespace tzvar {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// Minutes since 17:00 EST of the previous calendar day.
int session_minutes(int close_minutes) { return (close_minutes - 17 * 60 + 24 * 60) % (24 * 60); }

}  // namespace

std::string_view continent_name(Continent c) {
  switch (c) {
    case Continent::Asia:
      return "Asia";
    case Continent::Europe:
      return "Europe";
    case Continent::Americas:
      return "Americas";
  }
  return "?";
}

std::optional<Continent> parse_continent(std::string_view token) {
  const std::string t = lower(token);
  if (t == "asia") return Continent::Asia;
  if (t == "europe") return Continent::Europe;
  if (t == "americas" || t == "america") return Continent::Americas;
  return std::nullopt;
}

std::optional<int> parse_close_time(std::string_view token) {
  if (token.size() < 3) return std::nullopt;
  const char suffix = static_cast<char>(std::tolower(static_cast<unsigned char>(token.back())));
  if (suffix != 'a' && suffix != 'p') return std::nullopt;
  token.remove_suffix(1);
  const auto dot = token.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  int hour = 0, minute = 0;
  const auto mm = token.substr(dot + 1);
  if (mm.size() != 2 || !parse_int(token.substr(0, dot), hour) || !parse_int(mm, minute)) {
    return std::nullopt;
  }
  if (hour < 0 || hour > 12 || minute < 0 || minute > 59) return std::nullopt;
  return (hour % 12 + (suffix == 'p' ? 12 : 0)) * 60 + minute;
}

std::string format_close_time(int minutes) {
  const int h24 = minutes / 60;
  const int mm = minutes % 60;
  const int h12 = h24 % 12;
  const char suffix = h24 >= 12 ? 'p' : 'a';
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d.%02d%c", h12 == 0 && suffix == 'p' ? 12 : h12, mm, suffix);
  return buf;
}

MarketSet::MarketSet(std::vector<Market> markets) {
  std::set<std::string> seen;
  for (const auto& m : markets) {
    if (m.id.empty()) throw DataError("market with empty id");
    if (!seen.insert(m.id).second) throw DataError("duplicate market id '" + m.id + "'");
  }
  std::stable_sort(markets.begin(), markets.end(), [](const Market& a, const Market& b) {
    return static_cast<int>(a.continent) < static_cast<int>(b.continent);
  });
  markets_ = std::move(markets);
}

std::optional<std::size_t> MarketSet::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < markets_.size(); ++i) {
    if (markets_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t MarketSet::require_index(std::string_view id) const {
  if (auto i = index_of(id)) return *i;
  throw DataError("unknown market id '" + std::string(id) + "'");
}

std::vector<std::string> MarketSet::ids() const {
  std::vector<std::string> out;
  out.reserve(markets_.size());
  for (const auto& m : markets_) out.push_back(m.id);
  return out;
}

std::vector<std::size_t> MarketSet::members(Continent c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < markets_.size(); ++i) {
    if (markets_[i].continent == c) out.push_back(i);
  }
  return out;
}

std::vector<std::string> MarketSet::close_order_warnings() const {
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < markets_.size(); ++i) {
    for (std::size_t j = 0; j < markets_.size(); ++j) {
      const auto& early = markets_[i];
      const auto& late = markets_[j];
      if (static_cast<int>(early.continent) >= static_cast<int>(late.continent)) continue;
      if (session_minutes(early.close_minutes) > session_minutes(late.close_minutes)) {
        warnings.push_back(early.id + " (" + std::string(continent_name(early.continent)) +
                           ") closes after " + late.id + " (" +
                           std::string(continent_name(late.continent)) + ")");
      }
    }
  }
  return warnings;
}

bool operator==(const MarketSet& a, const MarketSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.id != y.id || x.name != y.name || x.continent != y.continent ||
        x.close_minutes != y.close_minutes || x.index_code != y.index_code) {
      return false;
    }
  }
  return true;
}

MarketSet parse_market_metadata(std::string_view csv_text) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) throw DataError("no markets");
  const csv::Row expected = {"id", "name", "continent", "close_est", "index_code"};
  if (rows[0] != expected) {
    throw DataError("markets header must be id,name,continent,close_est,index_code");
  }
  std::vector<Market> markets;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "markets row " + std::to_string(r + 1);
    if (row.size() != 5) throw DataError(where + ": expected 5 fields");
    Market m;
    m.id = row[0];
    m.name = row[1];
    auto continent = parse_continent(row[2]);
    if (!continent) throw DataError(where + ": unknown continent '" + row[2] + "'");
    m.continent = *continent;
    auto close = parse_close_time(row[3]);
    if (!close) throw DataError(where + ": unparseable close time '" + row[3] + "'");
    m.close_minutes = *close;
    m.index_code = row[4];
    for (const auto& prior : markets) {
      if (prior.id == m.id) throw DataError(where + ": duplicate id '" + m.id + "'");
    }
    markets.push_back(std::move(m));
  }
  if (markets.empty()) throw DataError("no markets");
  return MarketSet(std::move(markets));
}

MarketSet load_market_metadata(const std::filesystem::path& path) {
  return parse_market_metadata(csv::read_text(path));
}

void write_market_metadata(const std::filesystem::path& path, const MarketSet& markets) {
  std::string out = "id,name,continent,close_est,index_code\n";
  for (const auto& m : markets) {
    out += csv::join({m.id, m.name, std::string(continent_name(m.continent)),
                      format_close_time(m.close_minutes), m.index_code});
    out += '\n';
  }
  csv::write_text(path, out);
}

MarketSet reference_markets() {
  struct Row {
    const char* id;
    const char* name;
    Continent continent;
    const char* close;
    const char* index;
  };
  static constexpr Row rows[] = {
      {"AU", "Australia", Continent::Asia, "1.00a", "ASX 51"},
      {"MY", "Malaysia", Continent::Asia, "4.00a", "FBMKCI"},
      {"ID", "Indonesia", Continent::Asia, "4.00a", "JCI"},
      {"KR", "Korea", Continent::Asia, "1.30a", "KOSPI"},
      {"JP", "Japan", Continent::Asia, "1.00a", "NKY"},
      {"SG", "Singapore", Continent::Asia, "4.00a", "STI"},
      {"NZ", "New Zealand", Continent::Asia, "0.00a", "NESE 10"},
      {"PH", "Philippines", Continent::Asia, "2.30a", "PCOMP"},
      {"TH", "Thailand", Continent::Asia, "4.30a", "SET"},
      {"CN", "China", Continent::Asia, "2.00a", "SHCOMP"},
      {"HK", "Hong Kong", Continent::Asia, "3.00a", "HIS"},
      {"NL", "Netherlands", Continent::Europe, "11.40a", "AEX"},
      {"GR", "Greece", Continent::Europe, "11.30a", "ASE"},
      {"BE", "Belgium", Continent::Europe, "11.30a", "BEL 20"},
      {"FR", "France", Continent::Europe, "11.30a", "CAC"},
      {"DE", "Germany", Continent::Europe, "2.00p", "DAX"},
      {"FI", "Finland", Continent::Europe, "11.30a", "HEX"},
      {"ES", "Spain", Continent::Europe, "11.30a", "IBEX"},
      {"IE", "Ireland", Continent::Europe, "11.30a", "ISEQ"},
      {"IT", "Italy", Continent::Europe, "11.35a", "IT 30"},
      {"DK", "Denmark", Continent::Europe, "11.00a", "KFX"},
      {"NO", "Norway", Continent::Europe, "10.30a", "OBXP"},
      {"SE", "Sweden", Continent::Europe, "11.30a", "OMX"},
      {"PT", "Portugal", Continent::Europe, "11.30a", "PSI 20"},
      {"RU", "Russia", Continent::Europe, "10.45a", "RTSI"},
      {"CH", "Switzerland", Continent::Europe, "11.20a", "SMI"},
      {"GB", "United Kingdom", Continent::Europe, "11.30a", "UKX 100"},
      {"PL", "Poland", Continent::Europe, "11.00a", "WIG"},
      {"TR", "Turkey", Continent::Europe, "10.00a", "XU 100"},
      {"AT", "Austria", Continent::Europe, "11.30a", "ATX"},
      {"BR", "Brazil", Continent::Americas, "4.00p", "IBOV"},
      {"CL", "Chile", Continent::Americas, "4.00p", "IPSA"},
      {"AR", "Argentina", Continent::Americas, "4.00p", "MERVAL"},
      {"MX", "Mexico", Continent::Americas, "4.00p", "MEXBOL"},
      {"CA", "Canada", Continent::Americas, "4.00p", "SPTSX"},
      {"US", "United States", Continent::Americas, "4.00p", "SPX"},
  };
  std::vector<Market> markets;
  for (const auto& r : rows) {
    markets.push_back({r.id, r.name, r.continent, *parse_close_time(r.close), r.index});
  }
  return MarketSet(std::move(markets));
}

}  // namespace tzvar

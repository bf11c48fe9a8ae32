#include "tzvar/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "tzvar/compare.hpp"
#include "tzvar/csv.hpp"
#include "tzvar/errors.hpp"
#include "tzvar/metrics.hpp"
#include "tzvar/report.hpp"
#include "tzvar/rolling.hpp"
#include "tzvar/synth.hpp"

namespace tzvar {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

// Key-checked access into one config section.
class Section {
 public:
  Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError("config: '" + name_ + "' must be an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (auto key : keys) known = known || k == key;
      if (!known) throw ConfigError("config: unknown key '" + name_ + "." + k + "'");
    }
  }

  const Json* find(std::string_view key) const {
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  std::string key(std::string_view k) const { return name_ + "." + std::string(k); }

  template <class T>
  void get(std::string_view k, T& out) const {
    const Json* v = find(k);
    if (!v) return;
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v->is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_arithmetic_v<T>) {
        if (!v->is_number()) throw ConfigError("");
        if constexpr (std::is_integral_v<T>) {
          if (!v->is_number_integer()) throw ConfigError("");
          if constexpr (std::is_unsigned_v<T>) {
            if (v->is_number_integer() && !v->is_number_unsigned()) throw ConfigError("");
          }
        }
      } else {
        if (!v->is_string()) throw ConfigError("");
      }
      out = v->get<T>();
    } catch (const std::exception&) {
      throw ConfigError("config: bad value for '" + key(k) + "'");
    }
  }

 private:
  const Json& j_;
  std::string name_;
};

Date config_date(const Section& s, std::string_view k) {
  std::string text;
  s.get(k, text);
  const auto d = parse_date(text);
  if (!d) throw ConfigError("config: bad date for '" + s.key(k) + "': '" + text + "'");
  return *d;
}

Date flag_date(const std::string& flag, const std::string& text) {
  const auto d = parse_date(text);
  if (!d) throw ConfigError("bad date for --" + flag + ": '" + text + "'");
  return *d;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("TZVAR_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) throw ConfigError("TZVAR_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

struct CommonFlags {
  std::string config;
  std::string start;
  std::string end;
  std::string structure;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out;
};

void add_common(CLI::App* sub, CommonFlags& f, bool needs_config) {
  auto* c = sub->add_option("--config", f.config, "Run configuration (JSON)");
  if (needs_config) c->required();
  sub->add_option("--start", f.start, "First date (YYYY-MM-DD), overrides data.start");
  sub->add_option("--end", f.end, "Last date (YYYY-MM-DD), overrides data.end");
  sub->add_option("--structure", f.structure, "Lag structure: timezone | classic");
  sub->add_option("--seed", f.seed, "Base seed");
  sub->add_option("--threads", f.threads, "Worker threads (fallback: TZVAR_THREADS)");
  sub->add_option("--out", f.out, "Output directory, overrides output.dir");
}

RunConfig effective_config(const CommonFlags& f) {
  RunConfig cfg = load_config(f.config);
  if (!f.start.empty()) cfg.start = flag_date("start", f.start);
  if (!f.end.empty()) cfg.end = flag_date("end", f.end);
  if (!f.structure.empty()) cfg.pipeline.structure = parse_structure(f.structure);
  if (f.seed) cfg.pipeline.seed = *f.seed;
  if (!f.out.empty()) cfg.output_dir = f.out;
  cfg.pipeline.threads = resolve_threads(f.threads);
  return cfg;
}

struct LoadedPanel {
  ReturnsPanel panel;
  AlignmentReport report;
};

LoadedPanel load_panel(const RunConfig& cfg) {
  MarketSet markets;
  try {
    markets = load_market_metadata(cfg.markets_path);
  } catch (const DataError& e) {
    throw DataError(cfg.markets_path.string() + ": " + e.what());
  }
  RawPanel raw;
  try {
    raw = load_returns_csv(cfg.returns_path, markets);
  } catch (const DataError& e) {
    throw DataError(cfg.returns_path.string() + ": " + e.what());
  }
  AlignedPanel aligned = align_panel(raw, cfg.alignment);
  ReturnsPanel panel = std::move(aligned.panel);
  if (cfg.start || cfg.end) {
    const Date start = cfg.start.value_or(panel.dates().front());
    const Date end = cfg.end.value_or(panel.dates().back());
    panel = slice_period(panel, start, end);
  }
  return {std::move(panel), std::move(aligned.report)};
}

std::string period_label(const ReturnsPanel& p) {
  return format_date(p.dates().front()) + ".." + format_date(p.dates().back());
}

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& text) {
    csv::write_text(dir_ / name, text);
    artifacts_.push_back(name);
  }

  void write_manifest(Json manifest) {
    manifest["artifacts"] = artifacts_;
    csv::write_text(dir_ / "manifest.json", report::dump(manifest));
  }

  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> artifacts_;
};

Json base_manifest(const std::string& command, const RunConfig& cfg) {
  const std::string canon = canonical_config(cfg);
  Json m;
  m["tool"] = "tzvar";
  m["version"] = kVersion;
  m["command"] = command;
  m["config_hash"] = hex64(fnv1a64(canon));
  m["seed"] = cfg.pipeline.seed;
  m["structure"] = std::string(cfg.pipeline.structure.name());
  m["config"] = Json::parse(canon);
  return m;
}

void add_panel_info(Json& m, const LoadedPanel& lp) {
  m["alignment"] = {{"policy", std::string(policy_name(lp.report.policy))},
                    {"raw_rows", lp.report.raw_rows},
                    {"dropped_rows", lp.report.dropped_rows},
                    {"filled_cells", lp.report.filled_cells}};
  m["period"] = {{"start", format_date(lp.panel.dates().front())},
                 {"end", format_date(lp.panel.dates().back())},
                 {"rows", lp.panel.rows()},
                 {"markets", lp.panel.cols()}};
}

void warn_all(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "tzvar: warning: " << w << "\n";
}

void write_metrics(OutputDir& out, const SignedNetwork& net, const std::string& period) {
  const MetricsReport m = compute_metrics(net);
  out.write("metrics.json", report::dump(report::metrics_json(net.markets, m, period)));
  out.write("metrics.csv", report::metrics_csv(net.markets, m, period));
}

int cmd_estimate(const CommonFlags& f) {
  const RunConfig cfg = effective_config(f);
  const LoadedPanel lp = load_panel(cfg);
  const StaticEstimate est = estimate_network(lp.panel, cfg.pipeline);
  const MarketSet& mk = lp.panel.markets();
  const std::string period = period_label(lp.panel);

  OutputDir out(cfg.output_dir);
  out.write("markets.csv", [&] {
    std::string s = "id,name,continent,close_est,index_code\n";
    for (const auto& m : mk) {
      s += csv::join({m.id, m.name, std::string(continent_name(m.continent)),
                      format_close_time(m.close_minutes), m.index_code}) + "\n";
    }
    return s;
  }());
  out.write("A.csv", report::matrix_csv(mk, est.network.adjacency));
  out.write("W.csv", report::matrix_csv(mk, est.network.weights));
  out.write("B.csv", report::matrix_csv(mk, est.coefficients.B));
  out.write("coefficients.json", report::dump(report::coefficients_json(est.coefficients)));
  out.write("ar_diagonal.csv", report::ar_diagonal_csv(est.coefficients));
  out.write("selections.json", report::dump(report::selections_json(mk, est.selections)));
  write_metrics(out, est.network, period);

  Json m = base_manifest("estimate", cfg);
  add_panel_info(m, lp);
  m["period_label"] = period;
  m["skipped_markets"] = est.skipped_markets;
  m["warnings"] = est.warnings;
  out.write_manifest(m);
  warn_all(est.warnings);
  std::cout << "estimate: " << period << ", " << lp.panel.rows() << " rows, "
            << (est.network.adjacency.array() != 0).count() << " edges -> " << out.path().string() << "\n";
  return 0;
}

int cmd_rolling(const CommonFlags& f) {
  const RunConfig cfg = effective_config(f);
  const LoadedPanel lp = load_panel(cfg);
  const RollingResult r = rolling_flows(lp.panel, cfg.pipeline, cfg.window_length, cfg.window_step);

  std::string status = "window_start,window_end,ok,partial,skipped_markets,error\n";
  std::size_t failed = 0;
  for (const auto& w : r.windows) {
    std::string skipped;
    for (const auto& id : w.skipped_markets) skipped += (skipped.empty() ? "" : ";") + id;
    status += csv::join({format_date(w.window.start_date), format_date(w.window.end_date),
                         w.ok ? "1" : "0", w.partial ? "1" : "0", skipped, w.error}) + "\n";
    if (!w.ok) ++failed;
  }

  OutputDir out(cfg.output_dir);
  out.write("rolling.csv", report::rolling_csv(r));
  out.write("windows.csv", status);
  Json m = base_manifest("rolling", cfg);
  add_panel_info(m, lp);
  m["windows"] = r.windows.size();
  m["failed_windows"] = failed;
  out.write_manifest(m);
  if (failed) std::cerr << "tzvar: warning: " << failed << " window(s) failed; see windows.csv\n";
  std::cout << "rolling: " << r.windows.size() << " windows -> " << out.path().string() << "\n";
  if (!r.windows.empty() && failed == r.windows.size()) throw EstimationError("every window failed");
  return 0;
}

int cmd_compare(const CommonFlags& f, bool oos) {
  const RunConfig cfg = effective_config(f);
  const LoadedPanel lp = load_panel(cfg);
  const ComparisonReport r = compare_models(lp.panel, cfg.pipeline, oos);
  OutputDir out(cfg.output_dir);
  out.write("compare.csv", report::comparison_csv(r));
  Json m = base_manifest("compare", cfg);
  add_panel_info(m, lp);
  m["out_of_sample"] = oos;
  m["classic_seed"] = classic_seed(cfg.pipeline.seed);
  m["warnings"] = r.warnings;
  out.write_manifest(m);
  warn_all(r.warnings);
  std::cout << "compare: " << r.rows.size() << " markets -> " << out.path().string() << "\n";
  return 0;
}

int cmd_stability(const CommonFlags& f, const std::string& variant, int reps) {
  CvVariant v;
  if (variant == "improved") {
    v = CvVariant::Improved;
  } else if (variant == "classic") {
    v = CvVariant::Classic;
  } else {
    throw ConfigError("--variant must be classic or improved, got '" + variant + "'");
  }
  if (reps < 1) throw ConfigError("--reps must be positive");
  const RunConfig cfg = effective_config(f);
  const LoadedPanel lp = load_panel(cfg);
  const auto points = stability_diagnostics(lp.panel, cfg.pipeline.structure, reps, v, cfg.pipeline.seed,
                                            cfg.pipeline.selection, cfg.pipeline.threads);
  OutputDir out(cfg.output_dir);
  out.write("stability.csv", report::stability_csv(points));
  Json m = base_manifest("stability", cfg);
  add_panel_info(m, lp);
  m["variant"] = variant;
  m["reps"] = reps;
  out.write_manifest(m);
  std::cout << "stability: " << points.size() << " replications -> " << out.path().string() << "\n";
  return 0;
}

int cmd_metrics(const std::string& from, const std::string& out_dir, std::string period) {
  const fs::path dir(from);
  MarketSet mk = load_market_metadata(dir / "markets.csv");
  const std::string a_csv = csv::read_text(dir / "A.csv");
  const std::string w_csv = csv::read_text(dir / "W.csv");
  const SignedNetwork net = report::network_from_csv(mk, a_csv, w_csv);
  if (period.empty() && fs::exists(dir / "manifest.json")) {
    const Json m = Json::parse(csv::read_text(dir / "manifest.json"), nullptr, false);
    if (m.is_object() && m.contains("period_label") && m["period_label"].is_string()) {
      period = m["period_label"].get<std::string>();
    }
  }
  OutputDir out(out_dir.empty() ? dir : fs::path(out_dir));
  write_metrics(out, net, period);
  Json m;
  m["tool"] = "tzvar";
  m["version"] = kVersion;
  m["command"] = "metrics";
  m["source_hash"] = hex64(fnv1a64(a_csv + w_csv));
  m["period_label"] = period;
  if (out.path() != dir) out.write_manifest(m);
  std::cout << "metrics: " << net.size() << " markets -> " << out.path().string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& scenario_path, const CommonFlags& f) {
  std::string text;
  try {
    text = csv::read_text(scenario_path);
  } catch (const DataError&) {
    throw ConfigError("cannot read scenario file " + scenario_path);
  }
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(scenario_path + ": invalid JSON");
  Section s(j, "scenario");
  s.allow({"n_per_continent", "sparsity", "coef_range", "noise_sd", "T", "seed", "ar_on_diag", "burn_in",
           "structure"});
  TzVarSpec spec;
  if (const Json* n = s.find("n_per_continent")) {
    if (n->is_number_integer()) {
      spec.n_per_continent.fill(n->get<int>());
    } else if (n->is_array() && n->size() == 3 &&
               std::all_of(n->begin(), n->end(), [](const Json& x) { return x.is_number_integer(); })) {
      for (int c = 0; c < 3; ++c) spec.n_per_continent[c] = (*n)[c].get<int>();
    } else {
      throw ConfigError("config: bad value for 'scenario.n_per_continent'");
    }
    for (int c : spec.n_per_continent) {
      if (c < 0) throw ConfigError("config: 'scenario.n_per_continent' must be non-negative");
    }
  }
  s.get("sparsity", spec.sparsity);
  if (const Json* r = s.find("coef_range")) {
    if (!r->is_array() || r->size() != 2 || !(*r)[0].is_number() || !(*r)[1].is_number()) {
      throw ConfigError("config: 'scenario.coef_range' must be [low, high]");
    }
    spec.coef_low = (*r)[0].get<double>();
    spec.coef_high = (*r)[1].get<double>();
  }
  s.get("noise_sd", spec.noise_sd);
  s.get("ar_on_diag", spec.ar_on_diag);
  s.get("seed", spec.seed);
  std::string structure;
  s.get("structure", structure);
  if (!structure.empty()) spec.structure = parse_structure(structure);
  int T = 750;
  int burn_in = 200;
  s.get("T", T);
  s.get("burn_in", burn_in);
  if (f.seed) spec.seed = *f.seed;
  if (!f.structure.empty()) spec.structure = parse_structure(f.structure);
  if (!(spec.sparsity >= 0.0 && spec.sparsity <= 1.0)) throw ConfigError("config: 'scenario.sparsity' must lie in [0, 1]");
  if (!(spec.coef_low >= 0.0 && spec.coef_low <= spec.coef_high)) {
    throw ConfigError("config: 'scenario.coef_range' must satisfy 0 <= low <= high");
  }
  if (!(spec.noise_sd > 0.0)) throw ConfigError("config: 'scenario.noise_sd' must be positive");
  if (T < 60) throw ConfigError("config: 'scenario.T' must be at least 60");
  if (burn_in < 0) throw ConfigError("config: 'scenario.burn_in' must be non-negative");

  const GroundTruth truth = random_tz_var(spec);
  const ReturnsPanel panel = simulate_panel(truth, T, burn_in);

  OutputDir out(f.out.empty() ? fs::path("out") : fs::path(f.out));
  out.write("returns.csv", returns_to_csv(panel));
  write_market_metadata(out.path() / "markets.csv", truth.markets);
  Json cfg;
  cfg["data"] = {{"markets", "markets.csv"}, {"returns", "returns.csv"}};
  cfg["structure"] = std::string(spec.structure.name());
  out.write("truth.json", report::dump(report::truth_json(truth)));
  out.write("config.json", report::dump(cfg));

  Json m;
  m["tool"] = "tzvar";
  m["version"] = kVersion;
  m["command"] = "simulate";
  m["scenario_hash"] = hex64(fnv1a64(j.dump()));
  m["scenario"] = j;
  m["seed"] = spec.seed;
  m["T"] = T;
  m["burn_in"] = burn_in;
  out.write_manifest(m);
  std::cout << "simulate: " << panel.rows() << " rows x " << panel.cols() << " markets -> "
            << out.path().string() << "\n";
  return 0;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    std::cerr << "tzvar: config error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "tzvar: data error: " << e.what() << "\n";
    return 2;
  } catch (const EstimationError& e) {
    std::cerr << "tzvar: estimation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "tzvar: estimation error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  const Json j = Json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: invalid JSON");
  Section root(j, "config");
  root.allow({"data", "structure", "lasso", "selection", "rolling", "output"});

  RunConfig cfg;
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };

  const Json* data = root.find("data");
  if (!data) throw ConfigError("config: missing section 'data'");
  {
    Section s(*data, "data");
    s.allow({"markets", "returns", "alignment", "start", "end"});
    std::string markets, returns, policy;
    s.get("markets", markets);
    s.get("returns", returns);
    if (markets.empty()) throw ConfigError("config: missing key 'data.markets'");
    if (returns.empty()) throw ConfigError("config: missing key 'data.returns'");
    cfg.markets_path = resolve(markets);
    cfg.returns_path = resolve(returns);
    s.get("alignment", policy);
    if (!policy.empty()) {
      try {
        cfg.alignment = parse_policy(policy);
      } catch (const std::exception&) {
        throw ConfigError("config: bad value for 'data.alignment': '" + policy + "'");
      }
    }
    if (s.find("start")) cfg.start = config_date(s, "start");
    if (s.find("end")) cfg.end = config_date(s, "end");
  }

  if (const Json* st = root.find("structure")) {
    if (!st->is_string()) throw ConfigError("config: 'structure' must be a string");
    try {
      cfg.pipeline.structure = parse_structure(st->get<std::string>());
    } catch (const ConfigError&) {
      throw ConfigError("config: bad value for 'structure': '" + st->get<std::string>() + "'");
    }
  }

  auto& sel = cfg.pipeline.selection;
  if (const Json* l = root.find("lasso")) {
    Section s(*l, "lasso");
    s.allow({"tolerance", "max_iterations", "standardize"});
    s.get("tolerance", sel.lasso.tolerance);
    s.get("max_iterations", sel.lasso.max_iterations);
    s.get("standardize", sel.lasso.standardize);
    if (!(sel.lasso.tolerance > 0.0)) throw ConfigError("config: 'lasso.tolerance' must be positive");
    if (sel.lasso.max_iterations < 1) throw ConfigError("config: 'lasso.max_iterations' must be positive");
  }
  if (const Json* l = root.find("selection")) {
    Section s(*l, "selection");
    s.allow({"grid_points", "min_ratio", "replications", "top_m", "min_fold_size", "seed"});
    s.get("grid_points", sel.grid_points);
    s.get("min_ratio", sel.min_ratio);
    s.get("replications", sel.replications);
    s.get("top_m", sel.top_m);
    s.get("min_fold_size", sel.min_fold_size);
    s.get("seed", cfg.pipeline.seed);
    if (sel.grid_points < 1) throw ConfigError("config: 'selection.grid_points' must be positive");
    if (!(sel.min_ratio > 0.0 && sel.min_ratio < 1.0)) throw ConfigError("config: 'selection.min_ratio' must lie in (0, 1)");
    if (sel.replications < 1) throw ConfigError("config: 'selection.replications' must be positive");
    if (sel.top_m < 1) throw ConfigError("config: 'selection.top_m' must be positive");
    if (sel.min_fold_size < 2) throw ConfigError("config: 'selection.min_fold_size' must be at least 2");
  }
  if (const Json* l = root.find("rolling")) {
    Section s(*l, "rolling");
    s.allow({"length", "step"});
    s.get("length", cfg.window_length);
    s.get("step", cfg.window_step);
    if (cfg.window_length < 60) throw ConfigError("config: 'rolling.length' must be at least 60");
    if (cfg.window_step < 1) throw ConfigError("config: 'rolling.step' must be positive");
  }
  if (const Json* l = root.find("output")) {
    Section s(*l, "output");
    s.allow({"dir"});
    std::string dir;
    s.get("dir", dir);
    if (!dir.empty()) cfg.output_dir = resolve(dir);
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = csv::read_text(path);
  } catch (const DataError&) {
    throw ConfigError("cannot read config file " + path.string());
  }
  try {
    return parse_config(text, path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string canonical_config(const RunConfig& cfg) {
  const auto& sel = cfg.pipeline.selection;
  Json j;
  j["data"] = {{"markets", cfg.markets_path.generic_string()},
               {"returns", cfg.returns_path.generic_string()},
               {"alignment", std::string(policy_name(cfg.alignment))},
               {"start", cfg.start ? format_date(*cfg.start) : ""},
               {"end", cfg.end ? format_date(*cfg.end) : ""}};
  j["structure"] = std::string(cfg.pipeline.structure.name());
  j["lasso"] = {{"tolerance", sel.lasso.tolerance},
                {"max_iterations", sel.lasso.max_iterations},
                {"standardize", sel.lasso.standardize}};
  j["selection"] = {{"grid_points", sel.grid_points},   {"min_ratio", sel.min_ratio},
                    {"replications", sel.replications}, {"top_m", sel.top_m},
                    {"min_fold_size", sel.min_fold_size}, {"seed", cfg.pipeline.seed}};
  j["rolling"] = {{"length", cfg.window_length}, {"step", cfg.window_step}};
  return j.dump();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Time-zone LASSO VAR networks for equity markets", "tzvar"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonFlags f;
  std::string scenario, variant = "improved", from, period;
  int reps = 300;
  bool oos = false;

  auto* est = app.add_subcommand("estimate", "Static network and metrics for one period");
  add_common(est, f, true);
  auto* rol = app.add_subcommand("rolling", "Continent flow series over rolling windows");
  add_common(rol, f, true);
  auto* cmp = app.add_subcommand("compare", "R2 of time-zone against classic VAR per market");
  add_common(cmp, f, true);
  cmp->add_flag("--oos", oos, "Also score on the last 20% after refitting on the first 80%");
  auto* stb = app.add_subcommand("stability", "Density and mutual-proportion traces over CV replications");
  add_common(stb, f, true);
  stb->add_option("--variant", variant, "classic | improved")->capture_default_str();
  stb->add_option("--reps", reps, "Replications")->capture_default_str();
  auto* sim = app.add_subcommand("simulate", "Synthetic panel from a random sparse time-zone VAR");
  sim->add_option("--scenario", scenario, "Scenario JSON")->required();
  sim->add_option("--seed", f.seed, "Overrides scenario seed");
  sim->add_option("--structure", f.structure, "Overrides scenario structure");
  sim->add_option("--out", f.out, "Output directory");
  auto* met = app.add_subcommand("metrics", "Recompute metrics from saved A.csv / W.csv");
  met->add_option("--from", from, "Directory holding markets.csv, A.csv, W.csv")->required();
  met->add_option("--out", f.out, "Output directory (default: --from)");
  met->add_option("--period", period, "Period label (default: from manifest.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  return guarded([&] {
    if (*est) return cmd_estimate(f);
    if (*rol) return cmd_rolling(f);
    if (*cmp) return cmd_compare(f, oos);
    if (*stb) return cmd_stability(f, variant, reps);
    if (*sim) return cmd_simulate(scenario, f);
    return cmd_metrics(from, f.out, period);
  });
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("tzvar");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(storage.size()), argv.data());
}

}  // namespace tzvar

#include "tzvar/report.hpp"

#include "tzvar/csv.hpp"
#include "tzvar/errors.hpp"

namespace tzvar::report {

namespace {

template <class Matrix, class Format>
std::string matrix_csv_impl(const MarketSet& markets, const Matrix& m, Format fmt) {
  csv::Row header = {"id"};
  for (const auto& mk : markets) header.push_back(mk.id);
  std::string out = csv::join(header) + "\n";
  for (std::size_t i = 0; i < markets.size(); ++i) {
    out += csv::escape(markets[i].id);
    for (std::size_t j = 0; j < markets.size(); ++j) {
      out += ',';
      out += fmt(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    out += '\n';
  }
  return out;
}

Json metric_json(const MetricValue& v) {
  Json j;
  if (v.defined()) {
    j["value"] = *v.value;
  } else {
    j["value"] = nullptr;
    j["reason"] = v.undefined_reason;
  }
  return j;
}

Json flow_json(const ContinentFlow& f) {
  Json j = Json::object();
  for (Continent from : kContinents) {
    Json row = Json::object();
    for (Continent to : kContinents) row[std::string(continent_name(to))] = f.at(from, to);
    j[std::string(continent_name(from))] = row;
  }
  return j;
}

std::string value_cell(const MetricValue& v) { return v.defined() ? csv::format_double(*v.value) : ""; }

}  // namespace

std::string matrix_csv(const MarketSet& markets, const Eigen::MatrixXd& m) {
  return matrix_csv_impl(markets, m, [](double v) { return csv::format_double(v); });
}

std::string matrix_csv(const MarketSet& markets, const Eigen::MatrixXi& m) {
  return matrix_csv_impl(markets, m, [](int v) { return std::to_string(v); });
}

Eigen::MatrixXd parse_matrix_csv(std::string_view text, const MarketSet& markets) {
  const auto rows = csv::parse(text);
  const std::size_t n = markets.size();
  if (rows.size() != n + 1) throw DataError("matrix CSV must have one row per market");
  csv::Row header = {"id"};
  for (const auto& mk : markets) header.push_back(mk.id);
  if (rows[0] != header) throw DataError("matrix CSV header does not match the market set");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != n + 1 || row[0] != markets[i].id) {
      throw DataError("matrix CSV row " + std::to_string(i + 2) + " does not match market " + markets[i].id);
    }
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      if (!csv::parse_double(row[j + 1], v)) {
        throw DataError("matrix CSV row " + std::to_string(i + 2) + ": bad number '" + row[j + 1] + "'");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return m;
}

SignedNetwork network_from_csv(const MarketSet& markets, std::string_view adjacency_csv,
                               std::string_view weights_csv) {
  const Eigen::MatrixXd a = parse_matrix_csv(adjacency_csv, markets);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double v = a.data()[i];
    if (v != -1.0 && v != 0.0 && v != 1.0) throw DataError("adjacency entries must be -1, 0 or 1");
  }
  SignedNetwork net{markets, a.cast<int>(), parse_matrix_csv(weights_csv, markets)};
  try {
    net.validate();
  } catch (const std::logic_error& e) {
    throw DataError(std::string("inconsistent A/W files: ") + e.what());
  }
  return net;
}

Json coefficients_json(const CoefficientMatrix& b) {
  Json j;
  j["structure"] = std::string(b.structure.name());
  j["orientation"] = "coefficients[target][source]";
  Json coef = Json::object();
  Json conv = Json::object();
  Json icpt = Json::object();
  for (std::size_t k = 0; k < b.size(); ++k) {
    Json row = Json::object();
    for (std::size_t l = 0; l < b.size(); ++l) {
      row[b.markets[l].id] = b.B(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
    }
    coef[b.markets[k].id] = row;
    conv[b.markets[k].id] = static_cast<bool>(b.converged[k]);
    icpt[b.markets[k].id] = b.intercepts(static_cast<Eigen::Index>(k));
  }
  j["coefficients"] = coef;
  j["intercepts"] = icpt;
  j["converged"] = conv;
  j["warnings"] = b.warnings;
  return j;
}

std::string ar_diagonal_csv(const CoefficientMatrix& b) {
  std::string out = "market,continent,ar_coefficient\n";
  const auto diag = ar_diagonal(b);
  for (std::size_t k = 0; k < diag.size(); ++k) {
    out += csv::join({diag[k].first, std::string(continent_name(b.markets[k].continent)),
                      csv::format_double(diag[k].second)});
    out += '\n';
  }
  return out;
}

Json selections_json(const MarketSet& markets, const std::vector<LambdaSelection>& selections) {
  Json j = Json::object();
  for (std::size_t k = 0; k < markets.size(); ++k) {
    const auto& s = selections[k];
    Json top = Json::array();
    for (const auto& e : s.top) top.push_back({{"lambda", e.lambda}, {"freq", e.frequency}});
    Json entry;
    entry["lambda_star"] = s.lambda_star;
    entry["top"] = top;
    entry["R"] = s.replications;
    entry["M"] = s.top_m;
    if (!s.notes.empty()) entry["notes"] = s.notes;
    j[markets[k].id] = entry;
  }
  return j;
}

Json metrics_json(const MarketSet& markets, const MetricsReport& m, std::string_view period) {
  Json j;
  j["period"] = std::string(period);
  Json dens = Json::object(), cont = Json::object(), deg = Json::object();
  Json flows_deg = Json::object(), flows_str = Json::object();
  for (std::size_t c = 0; c < 3; ++c) {
    const std::string name(sign_class_name(kSignClasses[c]));
    dens[name] = m.density[c];
    cont[name] = metric_json(m.continent_assortativity[c]);
    deg[name] = metric_json(m.degree_assortativity[c]);
    flows_deg[name] = flow_json(m.degree_flows[c]);
    flows_str[name] = flow_json(m.strength_flows[c]);
  }
  j["density"] = dens;
  j["continent_assortativity"] = cont;
  j["degree_assortativity"] = deg;
  j["continent_degrees"] = flows_deg;
  j["continent_strengths"] = flows_str;
  Json nodes = Json::array();
  for (std::size_t k = 0; k < m.strengths.size(); ++k) {
    const auto& s = m.strengths[k];
    nodes.push_back({{"id", s.id},
                     {"continent", std::string(continent_name(markets[k].continent))},
                     {"in_strength_positive", s.in_positive},
                     {"out_strength_positive", s.out_positive},
                     {"in_strength_negative", s.in_negative},
                     {"out_strength_negative", s.out_negative},
                     {"net_in_strength", s.net_in},
                     {"net_out_strength", s.net_out},
                     {"quadrant", std::string(quadrant_name(m.quadrants[k]))}});
  }
  j["nodes"] = nodes;
  return j;
}

std::string metrics_csv(const MarketSet& markets, const MetricsReport& m, std::string_view period) {
  std::string out = "period,metric,sign_class,from,to,market,value,reason\n";
  const std::string p(period);
  auto add = [&](const std::string& metric, std::string_view cls, const std::string& from,
                 const std::string& to, const std::string& market, const std::string& value,
                 const std::string& reason) {
    out += csv::join({p, metric, std::string(cls), from, to, market, value, reason});
    out += '\n';
  };
  for (std::size_t c = 0; c < 3; ++c) {
    const auto cls = sign_class_name(kSignClasses[c]);
    add("density", cls, "", "", "", csv::format_double(m.density[c]), "");
    add("continent_assortativity", cls, "", "", "", value_cell(m.continent_assortativity[c]),
        m.continent_assortativity[c].undefined_reason);
    add("degree_assortativity", cls, "", "", "", value_cell(m.degree_assortativity[c]),
        m.degree_assortativity[c].undefined_reason);
  }
  for (const auto* flows : {&m.degree_flows, &m.strength_flows}) {
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& f = (*flows)[c];
      const std::string metric = f.basis == FlowBasis::Degrees ? "continent_degree" : "continent_strength";
      for (Continent from : kContinents) {
        for (Continent to : kContinents) {
          add(metric, sign_class_name(f.sign_class), std::string(continent_name(from)),
              std::string(continent_name(to)), "", csv::format_double(f.at(from, to)), "");
        }
      }
    }
  }
  for (std::size_t k = 0; k < m.strengths.size(); ++k) {
    const auto& s = m.strengths[k];
    (void)markets;
    add("in_strength", "positive", "", "", s.id, csv::format_double(s.in_positive), "");
    add("out_strength", "positive", "", "", s.id, csv::format_double(s.out_positive), "");
    add("in_strength", "negative", "", "", s.id, csv::format_double(s.in_negative), "");
    add("out_strength", "negative", "", "", s.id, csv::format_double(s.out_negative), "");
    add("net_in_strength", "net", "", "", s.id, csv::format_double(s.net_in), "");
    add("net_out_strength", "net", "", "", s.id, csv::format_double(s.net_out), "");
    add("quadrant", "net", "", "", s.id, std::string(quadrant_name(m.quadrants[k])), "");
  }
  return out;
}

std::string stability_csv(const std::vector<StabilityPoint>& points) {
  std::string out = "rep,density,mutual_proportion\n";
  for (const auto& p : points) {
    out += std::to_string(p.replication) + "," + csv::format_double(p.density) + "," +
           csv::format_double(p.mutual_proportion) + "\n";
  }
  return out;
}

std::string rolling_csv(const RollingResult& r) {
  std::string out = "window_start,window_end,year_label,sign_class,from_continent,to_continent,value\n";
  for (const auto& w : r.windows) {
    if (!w.ok) continue;
    const std::string label = w.window.year_label ? std::to_string(*w.window.year_label) : "";
    for (const auto* flow : {&w.positive, &w.negative}) {
      for (Continent from : kContinents) {
        for (Continent to : kContinents) {
          out += csv::join({format_date(w.window.start_date), format_date(w.window.end_date), label,
                            std::string(sign_class_name(flow->sign_class)),
                            std::string(continent_name(from)), std::string(continent_name(to)),
                            csv::format_double(flow->at(from, to))});
          out += '\n';
        }
      }
    }
  }
  return out;
}

std::string comparison_csv(const ComparisonReport& r) {
  const bool oos = !r.rows.empty() && r.rows.front().r2_oos.has_value();
  std::string out = oos ? "market,continent,r2_is,r2_oos\n" : "market,continent,r2_is\n";
  for (const auto& row : r.rows) {
    csv::Row fields = {row.id, std::string(continent_name(row.continent)), value_cell(row.r2_is)};
    if (oos) fields.push_back(value_cell(*row.r2_oos));
    out += csv::join(fields) + "\n";
  }
  return out;
}

Json truth_json(const GroundTruth& g) {
  Json j;
  j["structure"] = std::string(g.structure.name());
  j["orientation"] = "B[target][source]";
  j["seed"] = g.seed;
  j["spectral_radius"] = g.spectral_radius;
  Json b = Json::object();
  Json sd = Json::object();
  for (std::size_t k = 0; k < g.markets.size(); ++k) {
    Json row = Json::object();
    for (std::size_t l = 0; l < g.markets.size(); ++l) {
      row[g.markets[l].id] = g.B(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
    }
    b[g.markets[k].id] = row;
    sd[g.markets[k].id] = g.noise_sd(static_cast<Eigen::Index>(k));
  }
  j["B"] = b;
  j["noise_sd"] = sd;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tzvar::report

#include "tzvar/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "tzvar/errors.hpp"

namespace tzvar {

std::string_view sign_class_name(SignClass c) {
  switch (c) {
    case SignClass::Unsigned:
      return "unsigned";
    case SignClass::Positive:
      return "positive";
    case SignClass::Negative:
      return "negative";
  }
  return "?";
}

std::string_view quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::Q1:
      return "Q1";
    case Quadrant::Q2:
      return "Q2";
    case Quadrant::Q3:
      return "Q3";
    case Quadrant::Q4:
      return "Q4";
    case Quadrant::Axis:
      return "Axis";
  }
  return "?";
}

std::string_view basis_name(FlowBasis b) { return b == FlowBasis::Degrees ? "degrees" : "strengths"; }

Eigen::MatrixXi decompose(const Eigen::MatrixXi& adjacency, SignClass c) {
  const Eigen::MatrixXi abs = adjacency.cwiseAbs();
  switch (c) {
    case SignClass::Unsigned:
      return abs;
    case SignClass::Positive:
      return (abs + adjacency) / 2;
    case SignClass::Negative:
      return (abs - adjacency) / 2;
  }
  return abs;
}

Eigen::MatrixXd decompose(const Eigen::MatrixXd& weights, SignClass c) {
  const Eigen::MatrixXd abs = weights.cwiseAbs();
  switch (c) {
    case SignClass::Unsigned:
      return abs;
    case SignClass::Positive:
      return (abs + weights) / 2.0;
    case SignClass::Negative:
      return (abs - weights) / 2.0;
  }
  return abs;
}

double density(const SignedNetwork& net, SignClass c) {
  const auto n = static_cast<double>(net.size());
  if (net.size() < 2) throw EstimationError("density needs at least two markets");
  if (c == SignClass::Unsigned) {
    return density(net, SignClass::Positive) + density(net, SignClass::Negative);
  }
  return static_cast<double>(decompose(net.adjacency, c).sum()) / (n * (n - 1.0));
}

MetricValue continent_assortativity(const SignedNetwork& net, SignClass c) {
  const Eigen::MatrixXi m = decompose(net.adjacency, c);
  Eigen::Matrix3d e = Eigen::Matrix3d::Zero();
  double total = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      e(static_cast<int>(net.markets.continent(static_cast<std::size_t>(i))),
        static_cast<int>(net.markets.continent(static_cast<std::size_t>(j)))) += 1.0;
      total += 1.0;
    }
  }
  if (total == 0.0) return MetricValue::undefined("no edges");
  e /= total;
  const Eigen::Vector3d out_share = e.rowwise().sum();
  const Eigen::Vector3d in_share = e.colwise().sum().transpose();
  const double expected = out_share.dot(in_share);
  const double denom = 1.0 - expected;
  if (std::abs(denom) < 1e-15) return MetricValue::undefined("all edges share one continent");
  return MetricValue::of((e.trace() - expected) / denom);
}

MetricValue degree_assortativity(const SignedNetwork& net, SignClass c) {
  const Eigen::MatrixXi m = decompose(net.adjacency, c);
  const Eigen::VectorXi out_deg = m.rowwise().sum();
  const Eigen::VectorXi in_deg = m.colwise().sum().transpose();

  // joint counts over edges: (source out-degree, target in-degree)
  std::map<std::pair<long long, long long>, long long> joint;
  std::map<long long, long long> out_marg, in_marg;
  long long edges = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      const long long a = out_deg(i);
      const long long b = in_deg(j);
      ++joint[{a, b}];
      ++out_marg[a];
      ++in_marg[b];
      ++edges;
    }
  }
  if (edges < 2) return MetricValue::undefined("fewer than two edges");

  auto moments = [&](const std::map<long long, long long>& marg) {
    long long s1 = 0, s2 = 0;
    for (const auto& [k, cnt] : marg) {
      s1 += k * cnt;
      s2 += k * k * cnt;
    }
    return std::pair{s1, s2};
  };
  const auto [out_s1, out_s2] = moments(out_marg);
  const auto [in_s1, in_s2] = moments(in_marg);
  const long long out_var_num = edges * out_s2 - out_s1 * out_s1;
  const long long in_var_num = edges * in_s2 - in_s1 * in_s1;
  if (out_var_num == 0 || in_var_num == 0) return MetricValue::undefined("zero degree variance");

  const double E = static_cast<double>(edges);
  double numerator = 0.0;
  for (const auto& [a, qa] : out_marg) {
    for (const auto& [b, qb] : in_marg) {
      const auto it = joint.find({a, b});
      const double d_ab = it == joint.end() ? 0.0 : static_cast<double>(it->second) / E;
      const double expected = (static_cast<double>(qa) / E) * (static_cast<double>(qb) / E);
      numerator += static_cast<double>(a) * static_cast<double>(b) * (d_ab - expected);
    }
  }
  const double sigma_out = std::sqrt(static_cast<double>(out_var_num)) / E;
  const double sigma_in = std::sqrt(static_cast<double>(in_var_num)) / E;
  return MetricValue::of(numerator / (sigma_in * sigma_out));
}

std::vector<NodeStrengths> node_strengths(const SignedNetwork& net) {
  const Eigen::MatrixXd pos = decompose(net.weights, SignClass::Positive);
  const Eigen::MatrixXd neg = decompose(net.weights, SignClass::Negative);
  std::vector<NodeStrengths> out;
  for (std::size_t k = 0; k < net.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    NodeStrengths s;
    s.id = net.markets[k].id;
    s.in_positive = pos.col(i).sum();
    s.out_positive = pos.row(i).sum();
    s.in_negative = neg.col(i).sum();
    s.out_negative = neg.row(i).sum();
    s.net_in = std::abs(s.in_positive) - std::abs(s.in_negative);
    s.net_out = std::abs(s.out_positive) - std::abs(s.out_negative);
    out.push_back(std::move(s));
  }
  return out;
}

Quadrant quadrant_of(const NodeStrengths& s) {
  if (s.net_out > 0.0 && s.net_in > 0.0) return Quadrant::Q1;
  if (s.net_out < 0.0 && s.net_in > 0.0) return Quadrant::Q2;
  if (s.net_out < 0.0 && s.net_in < 0.0) return Quadrant::Q3;
  if (s.net_out > 0.0 && s.net_in < 0.0) return Quadrant::Q4;
  return Quadrant::Axis;
}

std::vector<Quadrant> quadrant_classify(const std::vector<NodeStrengths>& strengths) {
  std::vector<Quadrant> out;
  out.reserve(strengths.size());
  for (const auto& s : strengths) out.push_back(quadrant_of(s));
  return out;
}

ContinentFlow continent_flows(const SignedNetwork& net, FlowBasis basis, SignClass c) {
  ContinentFlow flow;
  flow.basis = basis;
  flow.sign_class = c;
  if (c == SignClass::Unsigned) {
    // identical to summing |.| entrywise, and exactly additive in the sign classes
    flow.values = continent_flows(net, basis, SignClass::Positive).values +
                  continent_flows(net, basis, SignClass::Negative).values;
    return flow;
  }
  const Eigen::MatrixXd m = basis == FlowBasis::Strengths
                                ? decompose(net.weights, c)
                                : decompose(net.adjacency, c).cast<double>().eval();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const int from = static_cast<int>(net.markets.continent(static_cast<std::size_t>(i)));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const int to = static_cast<int>(net.markets.continent(static_cast<std::size_t>(j)));
      flow.values(from, to) += m(i, j);
    }
  }
  return flow;
}

MetricsReport compute_metrics(const SignedNetwork& net) {
  MetricsReport r;
  for (std::size_t c = 0; c < 3; ++c) {
    const SignClass sc = kSignClasses[c];
    r.density[c] = density(net, sc);
    r.continent_assortativity[c] = continent_assortativity(net, sc);
    r.degree_assortativity[c] = degree_assortativity(net, sc);
    r.degree_flows[c] = continent_flows(net, FlowBasis::Degrees, sc);
    r.strength_flows[c] = continent_flows(net, FlowBasis::Strengths, sc);
  }
  r.strengths = node_strengths(net);
  r.quadrants = quadrant_classify(r.strengths);
  return r;
}

}  // namespace tzvar

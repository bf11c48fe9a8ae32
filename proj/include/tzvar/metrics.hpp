#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tzvar/market.hpp"
#include "tzvar/network.hpp"

namespace tzvar {

enum class SignClass { Unsigned, Positive, Negative };

inline constexpr std::array<SignClass, 3> kSignClasses = {SignClass::Unsigned, SignClass::Positive,
                                                          SignClass::Negative};

std::string_view sign_class_name(SignClass c);

// A metric that may be undefined on degenerate networks; never NaN.
struct MetricValue {
  std::optional<double> value;
  std::string undefined_reason;

  static MetricValue of(double v) { return {v, {}}; }
  static MetricValue undefined(std::string reason) { return {std::nullopt, std::move(reason)}; }
  bool defined() const { return value.has_value(); }
};

// |M|, (|M| + M) / 2, (|M| - M) / 2.
Eigen::MatrixXi decompose(const Eigen::MatrixXi& adjacency, SignClass c);
Eigen::MatrixXd decompose(const Eigen::MatrixXd& weights, SignClass c);

// Entries of the class (diagonal included) over N(N-1).
double density(const SignedNetwork& net, SignClass c);

MetricValue continent_assortativity(const SignedNetwork& net, SignClass c);
MetricValue degree_assortativity(const SignedNetwork& net, SignClass c);

struct NodeStrengths {
  std::string id;
  double in_positive = 0.0;
  double out_positive = 0.0;
  double in_negative = 0.0;
  double out_negative = 0.0;
  double net_in = 0.0;
  double net_out = 0.0;
};

std::vector<NodeStrengths> node_strengths(const SignedNetwork& net);

enum class Quadrant { Q1, Q2, Q3, Q4, Axis };
std::string_view quadrant_name(Quadrant q);
Quadrant quadrant_of(const NodeStrengths& s);
std::vector<Quadrant> quadrant_classify(const std::vector<NodeStrengths>& strengths);

enum class FlowBasis { Degrees, Strengths };
std::string_view basis_name(FlowBasis b);

// 3x3 sums indexed (from continent, to continent).
struct ContinentFlow {
  Eigen::Matrix3d values = Eigen::Matrix3d::Zero();
  FlowBasis basis = FlowBasis::Strengths;
  SignClass sign_class = SignClass::Unsigned;

  double at(Continent from, Continent to) const {
    return values(static_cast<int>(from), static_cast<int>(to));
  }
};

ContinentFlow continent_flows(const SignedNetwork& net, FlowBasis basis, SignClass c);

// Everything above for one network.
struct MetricsReport {
  std::array<double, 3> density{};
  std::array<MetricValue, 3> continent_assortativity;
  std::array<MetricValue, 3> degree_assortativity;
  std::vector<NodeStrengths> strengths;
  std::vector<Quadrant> quadrants;
  std::array<ContinentFlow, 3> degree_flows;
  std::array<ContinentFlow, 3> strength_flows;
};

MetricsReport compute_metrics(const SignedNetwork& net);

}  // namespace tzvar

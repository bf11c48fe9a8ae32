#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tzvar/errors.hpp"
#include "tzvar/metrics.hpp"
#include "tzvar/report.hpp"
#include "tzvar/synth.hpp"

using namespace tzvar;

namespace {

oracle::Cls cls(SignClass c) {
  return c == SignClass::Unsigned ? oracle::Cls::U : c == SignClass::Positive ? oracle::Cls::P : oracle::Cls::N;
}

SignedNetwork three_node(const Eigen::MatrixXi& a, const Eigen::MatrixXd& w) {
  return make_network(synthetic_markets({1, 1, 1}), a, w);
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("decomposition of a signed matrix") {
    Eigen::MatrixXi a(1, 3);
    a << 1, -1, 0;
    CHECK(decompose(a, SignClass::Positive) == (Eigen::MatrixXi(1, 3) << 1, 0, 0).finished());
    CHECK(decompose(a, SignClass::Negative) == (Eigen::MatrixXi(1, 3) << 0, 1, 0).finished());
    CHECK(decompose(a, SignClass::Unsigned) == (Eigen::MatrixXi(1, 3) << 1, 1, 0).finished());
    Eigen::MatrixXd w(2, 2);
    w << 0, -0.3, 0.2, 0;
    CHECK(decompose(w, SignClass::Negative) == (Eigen::MatrixXd(2, 2) << 0, 0.3, 0, 0).finished());
    CHECK(decompose(w, SignClass::Positive) == (Eigen::MatrixXd(2, 2) << 0, 0, 0.2, 0).finished());
  }

  TEST_CASE("density fixtures from published counts") {
    // 36 markets: 280 positive and 157 negative entries
    const MarketSet ms = reference_markets();
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(36, 36);
    int placed = 0;
    for (int i = 0; i < 36 && placed < 437; ++i)
      for (int j = 0; j < 36 && placed < 437; ++j, ++placed) a(i, j) = placed < 280 ? 1 : -1;
    const auto net = make_network(ms, a, a.cast<double>());
    CHECK(density(net, SignClass::Positive) == 280.0 / 1260.0);
    CHECK(density(net, SignClass::Negative) == 157.0 / 1260.0);
    CHECK(std::round(density(net, SignClass::Unsigned) * 1000) == 347);
    CHECK(std::round(density(net, SignClass::Positive) * 1000) == 222);
    CHECK(std::round(density(net, SignClass::Negative) * 1000) == 125);

    const auto empty = make_network(ms, Eigen::MatrixXi::Zero(36, 36), Eigen::MatrixXd::Zero(36, 36));
    for (auto c : kSignClasses) CHECK(density(empty, c) == 0.0);
    CHECK_THROWS_AS(density(make_network(synthetic_markets({1, 0, 0}), Eigen::MatrixXi::Zero(1, 1),
                                         Eigen::MatrixXd::Zero(1, 1)),
                            SignClass::Unsigned),
                    EstimationError);
  }

  TEST_CASE("continent assortativity examples") {
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(3, 3);
    a(0, 0) = 1;
    a(1, 1) = -1;
    auto net = three_node(a, a.cast<double>());
    CHECK(*continent_assortativity(net, SignClass::Unsigned).value == doctest::Approx(1.0));
    a.setZero();
    a(0, 1) = 1;
    net = three_node(a, a.cast<double>());
    const auto r = continent_assortativity(net, SignClass::Unsigned);
    REQUIRE(r.defined());
    CHECK(*r.value == 0.0);
    const auto none = continent_assortativity(net, SignClass::Negative);
    CHECK_FALSE(none.defined());
    CHECK_FALSE(none.undefined_reason.empty());
  }

  TEST_CASE("degree assortativity examples") {
    // star: hub 0 -> leaves; every target has in-degree 1
    const MarketSet ms = synthetic_markets({2, 2, 1});
    Eigen::MatrixXi star = Eigen::MatrixXi::Zero(5, 5);
    for (int j = 1; j < 5; ++j) star(0, j) = 1;
    CHECK_FALSE(degree_assortativity(make_network(ms, star, star.cast<double>()), SignClass::Unsigned).defined());

    // degree-sorted: 0->1 (out 1, in 1) and a pair of out-2/in-2 nodes
    Eigen::MatrixXi sorted = Eigen::MatrixXi::Zero(5, 5);
    sorted(0, 1) = 1;
    sorted(2, 3) = 1;
    sorted(2, 4) = 1;
    sorted(4, 3) = 1;
    sorted(4, 4) = 1;
    const auto net = make_network(ms, sorted, sorted.cast<double>());
    const auto r = degree_assortativity(net, SignClass::Unsigned);
    REQUIRE(r.defined());
    CHECK(std::abs(*r.value - 1.0) < 1e-12);
    CHECK(std::abs(*r.value - *oracle::degree_assortativity(net, oracle::Cls::U)) < 1e-12);
  }

  TEST_CASE("strengths, net strengths and quadrants") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    w(0, 1) = 0.5;
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(3, 3);
    a(0, 1) = 1;
    const auto s = node_strengths(three_node(a, w));
    CHECK(s[0].out_positive == 0.5);
    CHECK(s[1].in_positive == 0.5);
    CHECK(s[2].in_positive == 0.0);
    CHECK(s[0].net_out == 0.5);
    CHECK(s[1].net_in == 0.5);

    NodeStrengths q;
    q.net_out = 0.2;
    q.net_in = 0.3;
    CHECK(quadrant_of(q) == Quadrant::Q1);
    q.net_out = -0.1;
    q.net_in = 0.4;
    CHECK(quadrant_of(q) == Quadrant::Q2);
    q.net_in = -0.4;
    CHECK(quadrant_of(q) == Quadrant::Q3);
    q.net_out = 0.1;
    CHECK(quadrant_of(q) == Quadrant::Q4);
    q.net_out = 0;
    q.net_in = 0;
    CHECK(quadrant_of(q) == Quadrant::Axis);
    q.net_in = 0.3;
    CHECK(quadrant_of(q) == Quadrant::Axis);
  }

  TEST_CASE("continent flow of a single edge") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    w(0, 1) = 0.7;
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(3, 3);
    a(0, 1) = 1;
    const auto f = continent_flows(three_node(a, w), FlowBasis::Strengths, SignClass::Positive);
    CHECK(f.at(Continent::Asia, Continent::Europe) == 0.7);
    CHECK(f.values.sum() == 0.7);
  }

  TEST_CASE("unsigned flow identity on the before-crisis Asia row") {
    // Asia -> Asia: positive mass 0.024 and negative mass 0.956 give unsigned 0.980
    const MarketSet ms = reference_markets();
    const auto asia = ms.members(Continent::Asia);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(36, 36);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(36, 36);
    const auto i0 = static_cast<Eigen::Index>(asia[0]), i1 = static_cast<Eigen::Index>(asia[1]);
    a(i0, i1) = 1;
    w(i0, i1) = 0.024;
    a(i1, i0) = -1;
    w(i1, i0) = -0.5;
    a(i1, i1) = -1;
    w(i1, i1) = -0.456;
    const auto net = make_network(ms, a, w);
    const auto u = continent_flows(net, FlowBasis::Strengths, SignClass::Unsigned);
    const auto p = continent_flows(net, FlowBasis::Strengths, SignClass::Positive);
    const auto n = continent_flows(net, FlowBasis::Strengths, SignClass::Negative);
    CHECK(p.at(Continent::Asia, Continent::Asia) + n.at(Continent::Asia, Continent::Asia) ==
          u.at(Continent::Asia, Continent::Asia));
    CHECK(std::round(u.at(Continent::Asia, Continent::Asia) * 1000) == 980);
  }

  TEST_CASE("random networks match edge-enumeration oracles") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + trial % 7;
      const auto net = oracle::random_network(rng, n, 0.1 + 0.8 * ((trial * 37) % 100) / 100.0);
      const auto m = compute_metrics(net);
      for (std::size_t c = 0; c < 3; ++c) {
        const auto oc = cls(kSignClasses[c]);
        CHECK(m.density[c] == doctest::Approx(oracle::density(net.adjacency, oc)).epsilon(1e-12));
        const auto ca = oracle::continent_assortativity(net, oc);
        CHECK(m.continent_assortativity[c].defined() == ca.has_value());
        if (ca && m.continent_assortativity[c].defined()) CHECK(std::abs(*m.continent_assortativity[c].value - *ca) < 1e-12);
        const auto da = oracle::degree_assortativity(net, oc);
        CHECK(m.degree_assortativity[c].defined() == da.has_value());
        if (da && m.degree_assortativity[c].defined()) CHECK(std::abs(*m.degree_assortativity[c].value - *da) < 1e-12);
        const auto df = oracle::degree_flow(net, oc);
        const auto sf = oracle::strength_flow(net, oc);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            CHECK(m.degree_flows[c].values(i, j) == df[i][j]);
            CHECK(std::abs(m.strength_flows[c].values(i, j) - sf[i][j]) < 1e-12);
          }
      }
      const auto os = oracle::strengths(net.weights);
      for (int k = 0; k < n; ++k) {
        const auto& s = m.strengths[static_cast<std::size_t>(k)];
        CHECK(std::abs(s.in_positive - os[k].in_p) < 1e-12);
        CHECK(std::abs(s.out_positive - os[k].out_p) < 1e-12);
        CHECK(std::abs(s.in_negative - os[k].in_n) < 1e-12);
        CHECK(std::abs(s.out_negative - os[k].out_n) < 1e-12);
        CHECK(s.net_in == s.in_positive - s.in_negative);
        CHECK(s.net_out == s.out_positive - s.out_negative);
      }
    }
  }

  TEST_CASE("identities hold exactly") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const auto net = oracle::random_network(rng, 8, 0.4);
      const Eigen::MatrixXi ap = decompose(net.adjacency, SignClass::Positive);
      const Eigen::MatrixXi an = decompose(net.adjacency, SignClass::Negative);
      CHECK(ap + an == decompose(net.adjacency, SignClass::Unsigned));
      CHECK(ap - an == net.adjacency);
      CHECK(density(net, SignClass::Unsigned) == density(net, SignClass::Positive) + density(net, SignClass::Negative));
      for (auto basis : {FlowBasis::Degrees, FlowBasis::Strengths}) {
        const auto u = continent_flows(net, basis, SignClass::Unsigned).values;
        const auto p = continent_flows(net, basis, SignClass::Positive).values;
        const auto n = continent_flows(net, basis, SignClass::Negative).values;
        CHECK(p + n == u);
        CHECK((p.array() >= 0).all());
      }
      CHECK(continent_flows(net, FlowBasis::Degrees, SignClass::Positive).values.sum() == ap.sum());
      const auto s = node_strengths(net);
      double in_sum = 0, out_sum = 0;
      for (const auto& x : s) {
        in_sum += x.in_positive;
        out_sum += x.out_positive;
      }
      CHECK(in_sum == doctest::Approx(out_sum).epsilon(1e-12));
      for (std::size_t c = 0; c < 3; ++c) {
        const auto& r = compute_metrics(net).degree_assortativity[c];
        if (r.defined()) CHECK(std::abs(*r.value) <= 1.0 + 1e-12);
      }
    }
  }

  TEST_CASE("matrix CSV round trip is lossless") {
    std::mt19937_64 rng(99);
    const auto net = oracle::random_network(rng, 7, 0.5);
    const auto back = report::network_from_csv(net.markets, report::matrix_csv(net.markets, net.adjacency),
                                               report::matrix_csv(net.markets, net.weights));
    CHECK(back.adjacency == net.adjacency);
    CHECK(back.weights == net.weights);
    CHECK(report::metrics_csv(net.markets, compute_metrics(back), "p") ==
          report::metrics_csv(net.markets, compute_metrics(net), "p"));
    CHECK_THROWS_AS(report::parse_matrix_csv("id,X\nX,1\n", net.markets), DataError);
  }
}

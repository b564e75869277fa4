#include <doctest.h>

#include <cmath>

#include "dotr/discrete_dist.hpp"
#include "test_support.hpp"

using namespace dotr;
using dotr::testing::example1_h;

TEST_CASE("from_samples counts relative frequencies") {
  auto d = DiscreteDist::from_samples({1.0, 1.0, 2.0});
  REQUIRE(d.size() == 2);
  CHECK(d.atoms()[0] == 1.0);
  CHECK(d.masses()[0] == doctest::Approx(2.0 / 3.0));
  CHECK(d.masses()[1] == doctest::Approx(1.0 / 3.0));

  auto point = DiscreteDist::from_samples({5.0});
  CHECK(point.size() == 1);
  CHECK(point.atoms()[0] == 5.0);

  auto half = DiscreteDist::from_samples({0.0, 1.0, 0.0, 1.0});
  CHECK(half.masses()[0] == 0.5);

  CHECK_THROWS_AS(DiscreteDist::from_samples({}), Error);
}

TEST_CASE("quantiles") {
  Eigen::VectorXd a(2), m(2);
  a << 0.0, 1.0;
  m << 0.5, 0.5;
  DiscreteDist d(a, m);
  CHECK(quantile(d, 0.5, Side::Left) == 0.0);
  CHECK(quantile(d, 0.5, Side::Right) == 1.0);

  Eigen::VectorXd a3(3), m3(3);
  a3 << 0.0, 1.0, 2.0;
  m3 << 0.25, 0.5, 0.25;
  DiscreteDist d3(a3, m3);
  CHECK(quantile(d3, 0.9, Side::Left) == 2.0);
  CHECK_THROWS_AS(quantile(d3, 0.0, Side::Left), Error);
  CHECK_THROWS_AS(quantile(d3, 1.0, Side::Right), Error);
}

TEST_CASE("distorted expectation: closed-form checks") {
  Eigen::VectorXd a(3), m(3);
  a << 0.0, 1.0, 2.0;
  m << 0.25, 0.5, 0.25;
  DiscreteDist d(a, m);
  CHECK(distorted_expectation(example1_h(), d) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(distorted_expectation(DistortionFn::identity(), d) ==
        doctest::Approx(d.mean()).epsilon(1e-12));
}

TEST_CASE("distorted expectation matches the definitional reference") {
  dotr::testing::Rng rng(0);
  auto families = {DistortionFn::identity(), DistortionFn::power(2.0),
                   DistortionFn::tversky_kahneman(0.6), DistortionFn::es(0.3),
                   DistortionFn::var(0.4), example1_h()};
  for (int it = 0; it < 50; ++it) {
    auto d = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 1, 9), -2.0, 3.0);
    std::vector<std::pair<double, double>> zw;
    for (int i = 0; i < d.size(); ++i) zw.emplace_back(d.atoms()[i], d.masses()[i]);
    for (const auto& h : families) {
      CHECK(distorted_expectation(h, d) ==
            doctest::Approx(dotr::testing::choquet_reference(h, zw)).epsilon(1e-12));
    }
  }
}

TEST_CASE("risk measures") {
  auto u = discretize(ContinuousMarginal::uniform(0.0, 1.0), 1000);
  CHECK(risk_measure(u, RiskSpec::es(0.5)) == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(risk_measure(u, RiskSpec::var(0.5)) == doctest::Approx(0.5).epsilon(2e-3));

  // X + (1-X) collapses to a point mass at 1
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < u.size(); ++i) {
    pairs.emplace_back(u.atoms()[i] + u.atoms()[u.size() - 1 - i], u.masses()[i]);
  }
  auto sum = DiscreteDist::from_pairs(std::move(pairs), 1e-12);
  CHECK(sum.size() == 1);
  CHECK(risk_measure(sum, RiskSpec::es(0.5)) == 1.0);

  CHECK_THROWS_AS(risk_measure(u, RiskSpec::es(1.0)), Error);
  CHECK_THROWS_AS(risk_measure(u, RiskSpec::rvar(0.7, 0.3)), Error);
}

TEST_CASE("risk measures agree with their distortion representations") {
  dotr::testing::Rng rng(2);
  for (int it = 0; it < 30; ++it) {
    auto d = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 2, 9), 0.0, 4.0);
    double p = dotr::testing::uniform(rng, 0.1, 0.8);
    double q = dotr::testing::uniform(rng, p + 0.05, 0.95);
    CHECK(risk_measure(d, RiskSpec::es(p)) ==
          doctest::Approx(distorted_expectation(DistortionFn::es(p), d)).epsilon(1e-12));
    CHECK(risk_measure(d, RiskSpec::rvar(p, q)) ==
          doctest::Approx(distorted_expectation(DistortionFn::rvar(p, q), d)).epsilon(1e-12));
    CHECK(risk_measure(d, RiskSpec::var(p)) ==
          distorted_expectation(DistortionFn::var(p), d));
  }
}

TEST_CASE("es dual representation via greedy density filling") {
  dotr::testing::Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    auto d = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 1, 8), -1.0, 5.0);
    double p = dotr::testing::uniform(rng, 0.05, 0.9);
    // maximize sum z_i q_i with 0 <= q_i <= mass_i/(1-p), sum q_i = 1
    double budget = 1.0;
    double value = 0.0;
    for (int i = d.size() - 1; i >= 0 && budget > 0.0; --i) {
      double take = std::min(budget, d.masses()[i] / (1.0 - p));
      value += take * d.atoms()[i];
      budget -= take;
    }
    CHECK(risk_measure(d, RiskSpec::es(p)) == doctest::Approx(value).epsilon(1e-12));
  }
}

TEST_CASE("tails") {
  auto u = discretize(ContinuousMarginal::uniform(0.0, 1.0), 1000);
  auto upper = tail(u, 0.5, TailSide::Upper);
  auto expect = discretize(ContinuousMarginal::uniform(0.5, 1.0), 500);
  REQUIRE(upper.size() == expect.size());
  CHECK((upper.atoms() - expect.atoms()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((upper.masses() - expect.masses()).cwiseAbs().maxCoeff() <= 1e-12);

  Eigen::VectorXd a(2), m(2);
  a << 0.0, 1.0;
  m << 0.5, 0.5;
  auto point = tail(DiscreteDist(a, m), 0.25, TailSide::Upper);
  CHECK(point.size() == 1);
  CHECK(point.atoms()[0] == 1.0);

  auto whole = tail(u, 1.0 - 1e-9, TailSide::Upper);
  REQUIRE(whole.size() == u.size());
  CHECK((whole.atoms() - u.atoms()).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((whole.masses() - u.masses()).cwiseAbs().maxCoeff() <= 1e-6);

  CHECK_THROWS_AS(tail(u, 0.0, TailSide::Upper), Error);
}

TEST_CASE("discretize") {
  auto d2 = discretize(ContinuousMarginal::uniform(0.0, 1.0), 2);
  REQUIRE(d2.size() == 2);
  CHECK(d2.atoms()[0] == doctest::Approx(0.25));
  CHECK(d2.atoms()[1] == doctest::Approx(0.75));

  auto d4 = discretize(ContinuousMarginal::uniform(0.0, 1.0), 4);
  REQUIRE(d4.size() == 4);
  CHECK(d4.atoms()[0] == doctest::Approx(0.125));
  CHECK(d4.atoms()[3] == doctest::Approx(0.875));

  auto point = discretize(ContinuousMarginal([](double) { return 3.0; }, "const"), 5);
  CHECK(point.size() == 1);
  CHECK(point.masses()[0] == 1.0);
}

TEST_CASE("comonotone additivity") {
  dotr::testing::Rng rng(4);
  auto h = DistortionFn::tversky_kahneman(0.6);
  for (int it = 0; it < 40; ++it) {
    auto z = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 2, 7));
    // random increasing step functions on the atoms
    Eigen::VectorXd f(z.size()), g(z.size());
    double fv = dotr::testing::uniform(rng, -1.0, 1.0);
    double gv = dotr::testing::uniform(rng, -1.0, 1.0);
    for (int i = 0; i < z.size(); ++i) {
      f[i] = fv;
      g[i] = gv;
      fv += dotr::testing::uniform(rng, 0.0, 1.0);
      gv += dotr::testing::uniform(rng, 0.0, 1.0);
    }
    auto law = [&](const Eigen::VectorXd& vals) {
      std::vector<std::pair<double, double>> prs;
      for (int i = 0; i < z.size(); ++i) prs.emplace_back(vals[i], z.masses()[i]);
      return DiscreteDist::from_pairs(std::move(prs), 1e-12);
    };
    double lhs = distorted_expectation(h, law(f + g));
    double rhs = distorted_expectation(h, law(f)) + distorted_expectation(h, law(g));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("sign duality") {
  dotr::testing::Rng rng(5);
  for (const auto& h : {DistortionFn::tversky_kahneman(0.6), DistortionFn::es(0.4),
                        example1_h(), DistortionFn::power(3.0)}) {
    for (int it = 0; it < 25; ++it) {
      auto d = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 1, 8), -2.0, 2.0);
      double lhs = distorted_expectation(h, d);
      double rhs = -distorted_expectation(dual(h), reflect(d));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("sub/superadditivity tracks concavity of the distortion") {
  dotr::testing::Rng rng(6);
  auto concave = DistortionFn::es(0.3);
  auto convex = DistortionFn::power(2.0);
  for (int it = 0; it < 200; ++it) {
    auto mx = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 2, 5));
    auto my = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 2, 5));
    Eigen::MatrixXd plan = dotr::testing::random_plan(rng, mx, my);
    std::vector<std::pair<double, double>> prs;
    for (int i = 0; i < mx.size(); ++i) {
      for (int j = 0; j < my.size(); ++j) {
        if (plan(i, j) > 0.0) prs.emplace_back(mx.atoms()[i] + my.atoms()[j], plan(i, j));
      }
    }
    auto sum_law = DiscreteDist::from_pairs(std::move(prs), 1e-12);
    double sub = distorted_expectation(concave, sum_law);
    CHECK(sub <= distorted_expectation(concave, mx) + distorted_expectation(concave, my) + 1e-10);
    double super = distorted_expectation(convex, sum_law);
    CHECK(super >= distorted_expectation(convex, mx) + distorted_expectation(convex, my) - 1e-10);
  }
}

TEST_CASE("mean consistency") {
  dotr::testing::Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    auto d = dotr::testing::random_dist(rng, dotr::testing::uniform_int(rng, 1, 10), -3.0, 3.0);
    CHECK(distorted_expectation(DistortionFn::identity(), d) ==
          doctest::Approx(d.mean()).epsilon(1e-12));
  }
}

TEST_CASE("constructor invariants") {
  Eigen::VectorXd a(2), m(2);
  a << 1.0, 1.0;
  m << 0.5, 0.5;
  CHECK_THROWS_AS(DiscreteDist(a, m), Error);  // not strictly increasing
  a << 0.0, 1.0;
  m << 0.5, 0.6;
  CHECK_THROWS_AS(DiscreteDist(a, m), Error);  // does not sum to one
  m << -0.1, 1.1;
  CHECK_THROWS_AS(DiscreteDist(a, m), Error);  // negative mass
}

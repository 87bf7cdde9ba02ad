#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sumtrans/applications.hpp"
#include "sumtrans/errors.hpp"
#include "sumtrans/translates.hpp"

using namespace sumtrans;

namespace {

const double kE = std::exp(1.0);
constexpr double kHfC = 2.3316439815971246;      // sqrt(2) e^{1/2}
constexpr double kSemiaxisD = -0.8068528194400547;  // log 0.5 - (-1.5)

InterpolationProblem abs_points(std::vector<double> alpha) {
  return {{Kernel::log_abs(1)}, Field::neg_abs(1.0), {-1.0, 1.0}, std::move(alpha)};
}

InterpolationProblem square_hf(std::vector<double> alpha) {
  return {{Kernel::log_abs(1)}, Field::neg_square(1.0), {}, std::move(alpha)};
}

NodeConfig random_nodes(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> y(n);
  do {
    for (double& v : y) v = u(rng);
    std::sort(y.begin(), y.end());
  } while (std::adjacent_find(y.begin(), y.end(), [](double a, double b) { return b - a < 0.05; }) != y.end());
  return NodeConfig(y);
}

}  // namespace

TEST_CASE("interpolation at points, symmetric") {
  const InterpolationResult r = log_concave_interpolate(abs_points({1, 1}));
  CHECK(r.C == doctest::Approx(kE).epsilon(1e-9));
  CHECK(std::abs(r.y[0]) <= 1e-8);
  CHECK(r.achieved[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.achieved[1] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.hypotheses_verified);
  CHECK(r.z.empty());
}

TEST_CASE("interpolation at points, asymmetric") {
  const InterpolationResult r = log_concave_interpolate(abs_points({1, 2}));
  CHECK(std::abs(r.y[0] + 1.0 / 3.0) <= 1e-5);
  CHECK(std::abs(r.C - 1.5 * kE) <= 1e-5);
  CHECK(r.achieved[1] == doctest::Approx(2.0).epsilon(1e-8));

  const InterpolationResult s = log_concave_interpolate(abs_points({2, 2}));
  CHECK(s.C == doctest::Approx(2 * kE).epsilon(1e-9));
}

TEST_CASE("interpolation interlaces and reproduces alpha") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> a(0.2, 5.0);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 1 + i % 3;
    const NodeConfig x = random_nodes(rng, n + 1, -3.0, 3.0);
    std::vector<double> alpha(n + 1);
    for (double& v : alpha) v = a(rng);
    const InterpolationProblem p{std::vector<Kernel>(n, Kernel::log_abs(1)), Field::neg_square(0.5),
                                 {x.values().begin(), x.values().end()}, alpha};
    const InterpolationResult r = log_concave_interpolate(p);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(x[j] < r.y[j]);
      CHECK(r.y[j] < x[j + 1]);
    }
    for (std::size_t j = 0; j <= n; ++j) {
      double g = std::log(r.C) + p.log_weight(x[j]);
      for (std::size_t k = 0; k < n; ++k) g += std::log(std::abs(x[j] - r.y[k]));
      CHECK(std::abs(std::exp(g) - alpha[j]) <= 1e-8 * std::max(1.0, alpha[j]));
    }
  }
}

TEST_CASE("interpolation scaling law") {
  const InterpolationResult a = log_concave_interpolate(abs_points({1, 2}));
  const InterpolationResult b = log_concave_interpolate(abs_points({3.5, 7}));
  CHECK(std::abs(a.y[0] - b.y[0]) <= 1e-9);
  CHECK(b.C == doctest::Approx(3.5 * a.C).epsilon(1e-9));

  const InterpolationResult c = hermite_fejer_interpolate(square_hf({1, 2}));
  const InterpolationResult d = hermite_fejer_interpolate(square_hf({0.25, 0.5}));
  CHECK(std::abs(c.y[0] - d.y[0]) <= 1e-9);
  CHECK(std::abs(c.z[0] - d.z[0]) <= 1e-9);
  CHECK(d.C == doctest::Approx(0.25 * c.C).epsilon(1e-9));
}

TEST_CASE("Hermite-Fejer symmetric") {
  const InterpolationResult r = hermite_fejer_interpolate(square_hf({1, 1}));
  CHECK(std::abs(r.y[0]) <= 1e-8);
  REQUIRE(r.z.size() == 2);
  CHECK(std::abs(r.z[0] + std::sqrt(0.5)) <= 1e-5);
  CHECK(std::abs(r.z[1] - std::sqrt(0.5)) <= 1e-5);
  CHECK(std::abs(r.C - kHfC) <= 1e-5);
  CHECK(r.z[0] < r.y[0]);
  CHECK(r.y[0] < r.z[1]);

  const InterpolationResult s = hermite_fejer_interpolate(square_hf({2, 2}));
  CHECK(s.C == doctest::Approx(2 * kHfC).epsilon(1e-8));
}

TEST_CASE("Hermite-Fejer asymmetric") {
  const InterpolationResult r = hermite_fejer_interpolate(square_hf({1, 2}));
  CHECK(r.y[0] < 0);
  CHECK(r.z[0] < r.y[0]);
  CHECK(r.y[0] < r.z[1]);
  CHECK(r.achieved[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.achieved[1] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("interpolation input errors") {
  CHECK_THROWS_AS(log_concave_interpolate(abs_points({1, -1})), std::invalid_argument);
  CHECK_THROWS_AS(log_concave_interpolate(abs_points({1, 1, 1})), std::invalid_argument);
  InterpolationProblem p = abs_points({1, 1});
  p.x = {1.0, -1.0};
  CHECK_THROWS_AS(log_concave_interpolate(p), std::invalid_argument);

  InterpolationProblem zero_weight{{Kernel::log_abs(1)},
                                   Field::restrict_semiaxis(Field::neg_abs(1.0)), {-1.0, 1.0}, {1, 1}};
  CHECK_THROWS_AS(log_concave_interpolate(zero_weight), HypothesisError);

  InterpolationProblem flat{{Kernel::log_abs(1)}, Field::log_weight_table({{-1, 0}, {1, 0}}, 0, 0), {}, {1, 1}};
  CHECK_THROWS_AS(hermite_fejer_interpolate(flat), HypothesisError);
}

TEST_CASE("non-strict factors run but are flagged") {
  TableKernelSpec spec;
  spec.neg_knots = {{-10, 2.302585092994}, {-1, 0}, {-0.11, -2.207274913190}, {-0.1, -2.302585092994}};
  spec.pos_knots = {{0.1, -2.302585092994}, {0.11, -2.207274913190}, {1, 0}, {10, 2.302585092994}};
  spec.end_slopes = std::make_pair(0.0, 0.0);
  spec.strictly_concave = false;
  const InterpolationProblem p{{Kernel::table(spec)}, Field::neg_abs(1.0), {-1.0, 1.0}, {1, 1}};
  const InterpolationResult r = log_concave_interpolate(p);
  CHECK_FALSE(r.hypotheses_verified);
  CHECK(std::abs(r.y[0]) <= 1e-8);
}

TEST_CASE("ratio map") {
  const std::vector<double> one{1.0};
  const auto a = weighted_poly_ratio_map(NodeConfig({0.0}), Field::neg_abs(1.0), one);
  CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-9));
  const auto b = weighted_poly_ratio_map(NodeConfig({0.5}), Field::neg_abs(1.0), one);
  CHECK(b[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + i % 4;
    std::vector<double> r(n);
    for (double& v : r) v = w(rng);
    std::vector<Kernel> ks;
    for (double v : r) ks.push_back(Kernel::log_abs(v));
    const NodeConfig y = random_nodes(rng, n, -2.0, 2.0);
    const auto ratios = weighted_poly_ratio_map(y, Field::neg_square(1.0), r);
    const auto d = difference_map(Problem(ks, Field::neg_square(1.0)), y).d;
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(ratios[j] / std::exp(d[j]) - 1.0) <= 1e-9);
  }

  CHECK_THROWS_AS(weighted_poly_ratio_map(NodeConfig({0.0, 0.0}), Field::neg_abs(1.0), std::vector<double>{1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_poly_ratio_map(NodeConfig({0.0}), Field::log_weight_table({{0, 0}}, 0, 0), one),
                  HypothesisError);
}

TEST_CASE("semiaxis examples") {
  const std::vector<double> target{kSemiaxisD};
  const SolveResult r = semiaxis_solve({Kernel::log_abs(1)}, Field::neg_abs(1.0), target);
  CHECK(std::abs(r.y[0] - 0.5) <= 1e-6);

  const Problem half = semiaxis_problem({Kernel::log_abs(1)}, Field::neg_abs(1.0));
  const MaximaReport m = local_maxima(half, NodeConfig({0.5}));
  CHECK(m.m[0].value() == doctest::Approx(std::log(0.5)).epsilon(1e-9));
  CHECK(m.m[1].value() == doctest::Approx(-1.5).epsilon(1e-9));

  const auto d = difference_map(half, NodeConfig({0.1})).d;
  const SolveResult s = semiaxis_solve({Kernel::log_abs(1)}, Field::neg_abs(1.0), d);
  CHECK(std::abs(s.y[0] - 0.1) <= 1e-6);
}

TEST_CASE("semiaxis nodes stay nonnegative") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + i % 2;
    std::vector<double> d(n);
    for (double& v : d) v = u(rng);
    const SolveResult r =
        semiaxis_solve(std::vector<Kernel>(n, Kernel::log_abs(1)), Field::neg_square(1.0), d);
    CHECK(r.y.front() >= 0);
    CHECK(r.converged);
  }
}

TEST_CASE("semiaxis equals the extended full-axis problem") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 5; ++i) {
    const std::size_t n = 1 + i % 2;
    std::vector<double> d(n);
    for (double& v : d) v = u(rng);
    const std::vector<Kernel> ks(n, Kernel::log_abs(1));
    const SolveResult a = semiaxis_solve(ks, Field::neg_abs(1.0, 1.0), d);
    const Problem full(ks, Field::restrict_semiaxis(Field::neg_abs(1.0, 1.0)));
    const SolveResult b = invert_difference(full, d);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(a.y[j] - b.y[j]) <= 1e-10);
  }
}

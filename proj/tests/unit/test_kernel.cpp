#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "sumtrans/hypotheses.hpp"
#include "sumtrans/kernel.hpp"

using namespace sumtrans;

namespace {

Kernel neg_abs_table() {
  TableKernelSpec spec;
  spec.neg_knots = {{-2, -2}, {-1, -1}};
  spec.pos_knots = {{1, -1}, {2, -2}};
  spec.zero = ZeroBehavior::kFinite;
  spec.zero_value = 0.0;
  return Kernel::table(spec);
}

Kernel singular_table() {
  TableKernelSpec spec;
  // log|t| at the knots; close inner pair for a steep continuation.
  spec.neg_knots = {{-10, 2.302585092994}, {-1, 0}, {-0.11, -2.207274913190}, {-0.1, -2.302585092994}};
  spec.pos_knots = {{0.1, -2.302585092994}, {0.11, -2.207274913190}, {1, 0}, {10, 2.302585092994}};
  spec.end_slopes = std::make_pair(-0.1, 0.1);
  spec.zero = ZeroBehavior::kSingular;
  spec.strictly_concave = true;
  return Kernel::table(spec);
}

}  // namespace

TEST_CASE("log kernel values") {
  CHECK(Kernel::log_abs(1)(1.0) == doctest::Approx(0.0));
  CHECK(Kernel::log_abs(1)(-1.0) == doctest::Approx(0.0));
  CHECK(Kernel::log_abs(2)(std::exp(1.0)) == doctest::Approx(2.0));
  CHECK(Kernel::log_abs(1)(0.0) == kNegInf);
  CHECK(Kernel::log_abs_plus_linear(1, 1)(2.0) == doctest::Approx(std::log(2.0) + 2.0));
  CHECK_FALSE(eval_kernel(Kernel::log_abs(1), 0.0).is_finite());
}

TEST_CASE("log kernel rejects nonpositive weight") {
  CHECK_THROWS_AS(Kernel::log_abs(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::log_abs(-1.0), std::invalid_argument);
}

TEST_CASE("slope limits") {
  SlopeLimits a = slope_limits(Kernel::log_abs(1));
  CHECK(a.at_minus_infinity == 0.0);
  CHECK(a.at_plus_infinity == 0.0);
  CHECK(a.gm_holds);

  SlopeLimits b = slope_limits(Kernel::log_abs_plus_linear(1, 1));
  CHECK(b.at_minus_infinity == 1.0);
  CHECK(b.at_plus_infinity == 1.0);
  CHECK(b.gm_holds);

  SlopeLimits c = neg_abs_table().slope_limits();
  CHECK(c.at_minus_infinity == doctest::Approx(1.0));
  CHECK(c.at_plus_infinity == doctest::Approx(-1.0));
  CHECK_FALSE(c.gm_holds);
}

TEST_CASE("GM limits are finite") {
  for (const Kernel& k : {Kernel::log_abs(0.5), Kernel::log_abs_plus_linear(2, -3), singular_table()}) {
    const SlopeLimits s = k.slope_limits();
    CHECK(s.gm_holds == (s.at_minus_infinity <= s.at_plus_infinity));
    if (s.gm_holds) {
      CHECK(std::isfinite(s.at_minus_infinity));
      CHECK(std::isfinite(s.at_plus_infinity));
    }
  }
}

TEST_CASE("concavity on random same-side triples") {
  CHECK(count_concavity_violations(Kernel::log_abs(1), 10000, 1) == 0);
  CHECK(count_concavity_violations(Kernel::log_abs(3.5), 10000, 2) == 0);
  CHECK(count_concavity_violations(Kernel::log_abs_plus_linear(1, -2), 10000, 3) == 0);
  CHECK(count_concavity_violations(singular_table(), 10000, 4) == 0);
  CHECK(count_concavity_violations(neg_abs_table(), 10000, 5) == 0);
}

TEST_CASE("singular kernels diverge at the origin") {
  for (const Kernel& k : {Kernel::log_abs(1), singular_table()}) {
    double prev = k(1e-7);
    for (int e = 8; e <= 16; ++e) {
      const double v = k(std::pow(10.0, -e));
      CHECK(v < prev);
      CHECK(k(-std::pow(10.0, -e)) < -e);
      prev = v;
    }
    CHECK(k(0.0) == kNegInf);
    CHECK(check_singularity(k).holds);
  }
  CHECK_FALSE(check_singularity(neg_abs_table()).holds);
}

TEST_CASE("finite off the origin") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  const Kernel t = singular_table();
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    if (x == 0.0) continue;
    CHECK(std::isfinite(t(x)));
    CHECK(std::isfinite(Kernel::log_abs(1)(x)));
  }
}

TEST_CASE("table validation") {
  TableKernelSpec convex;
  convex.neg_knots = {{-2, 0}, {-1, 1}};
  convex.pos_knots = {{1, 1}, {2, 0}, {3, 5}};
  convex.zero = ZeroBehavior::kFinite;
  CHECK_THROWS_WITH_AS(Kernel::table(convex), doctest::Contains("concav"), std::invalid_argument);

  TableKernelSpec sparse;
  sparse.neg_knots = {{-1, 0}};
  sparse.pos_knots = {{1, 0}, {2, -1}};
  sparse.zero = ZeroBehavior::kFinite;
  CHECK_THROWS_WITH_AS(Kernel::table(sparse), doctest::Contains("insufficient knots"), std::invalid_argument);

  sparse.end_slopes = std::make_pair(1.0, -1.0);
  CHECK_NOTHROW(Kernel::table(sparse));
}

TEST_CASE("extrapolated table is undefined at zero") {
  TableKernelSpec spec;
  spec.neg_knots = {{-2, -1}, {-1, 0}};
  spec.pos_knots = {{1, 0}, {2, -1}};
  spec.zero = ZeroBehavior::kExtrapolate;
  const Kernel k = Kernel::table(spec);
  CHECK(k(0.5) == doctest::Approx(0.5));
  CHECK_THROWS_WITH_AS(k(0.0), "kernel undefined at 0", std::domain_error);
}

TEST_CASE("knots given out of order are sorted") {
  TableKernelSpec spec;
  spec.neg_knots = {{-1, -1}, {-2, -2}};
  spec.pos_knots = {{2, -2}, {1, -1}};
  spec.zero = ZeroBehavior::kFinite;
  const Kernel k = Kernel::table(spec);
  CHECK(k(-1.5) == doctest::Approx(-1.5));
  CHECK(k(0.5) == doctest::Approx(-0.5));
  CHECK(k(0.0) == doctest::Approx(0.0));
  CHECK(k(5.0) == doctest::Approx(-5.0));
}

TEST_CASE("extended real arithmetic") {
  const ExtendedReal a(1.5);
  const ExtendedReal n = ExtendedReal::neg_inf();
  CHECK((a + n).is_neg_inf());
  CHECK((n + n).is_neg_inf());
  CHECK((a + ExtendedReal(2.0)).value() == 3.5);
  CHECK(n < a);
  CHECK_THROWS_AS(ExtendedReal(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(ExtendedReal(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(n.value(), std::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bbqi/harness.hpp"

using namespace bbqi;

TEST_CASE("test function values and lookup") {
  auto fr = franke();
  CHECK(fr.f(0.0, 0.0) == doctest::Approx(0.6652).epsilon(2e-4));
  auto ni = nielson();
  CHECK(ni.f(0.0, 1.0) == doctest::Approx(0.5 * std::pow(std::cos(0.0), 4)));
  CHECK(ni.f(0.5, 0.0) == doctest::Approx(0.0));
  CHECK(test_function("franke").name == "franke");
  CHECK(test_function("nielson").name == "nielson");
  CHECK_THROWS_AS(test_function("nope"), std::invalid_argument);
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  const double eps = 1e-6;
  for (const auto& tf : {franke(), nielson()}) {
    for (int k = 0; k < 100; ++k) {
      double x = uni(rng), y = uni(rng);
      auto g = tf.grad(x, y);
      double gx = (tf.f(x + eps, y) - tf.f(x - eps, y)) / (2 * eps);
      double gy = (tf.f(x, y + eps) - tf.f(x, y - eps)) / (2 * eps);
      CHECK(g[0] == doctest::Approx(gx).epsilon(1e-5));
      CHECK(g[1] == doctest::Approx(gy).epsilon(1e-5));
    }
  }
}

TEST_CASE("nco behaves like an order estimate") {
  CHECK(nco(3.624e-1, 8.836e-2, 1.0 / 8, 1.0 / 16) ==
        doctest::Approx(2.036).epsilon(1e-3));
  CHECK(nco(0.4, 0.2, 0.5, 0.25) == doctest::Approx(1.0));
  CHECK_THROWS_AS(nco(0.0, 0.1, 0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(nco(0.1, -0.1, 0.5, 0.25), std::invalid_argument);
}

TEST_CASE("a quadratic is reproduced to rounding error") {
  TestFunction q;
  q.name = "quadratic";
  q.f = [](double x, double y) { return 1 + 2 * x - y + x * x - 3 * x * y; };
  q.grad = [](double x, double y) {
    return Vec2<double>{2 + 2 * x - 3 * y, -1 - 3 * x};
  };
  auto res = error_scan_full(q, 8, Rational(1, 2));
  CHECK(res.value_error < 1e-13);
  CHECK(res.gradient_error < 1e-11);
}

TEST_CASE("coarse scan errors match the frozen reference values") {
  // regression anchors measured with this exact sampling scheme
  CHECK(error_scan(franke(), 8, Rational(1, 2)) ==
        doctest::Approx(3.7962e-1).epsilon(0.02));
  CHECK(error_scan(nielson(), 8, Rational(1, 2)) ==
        doctest::Approx(5.2993e-1).epsilon(0.02));
}

TEST_CASE("convergence_table and CSV output") {
  auto rows = convergence_table(franke(), {8, 16}, Rational(1, 2));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 8);
  CHECK(!rows[0].has_nco);
  CHECK(rows[1].n == 16);
  CHECK(rows[1].has_nco);
  CHECK(rows[1].error < rows[0].error);
  CHECK(rows[1].nco > 1.5);
  CHECK(rows[1].nco < 2.5);

  std::ostringstream os;
  write_convergence_csv(os, rows);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,error,nco");
  std::getline(in, line);
  CHECK(line.substr(0, 2) == "8,");
  CHECK(line.back() == ',');  // no nco on the first row
  std::getline(in, line);
  CHECK(line.substr(0, 3) == "16,");
  double printed_nco = std::stod(line.substr(line.rfind(',') + 1));
  CHECK(printed_nco == doctest::Approx(rows[1].nco).epsilon(1e-3));
  CHECK(!std::getline(in, line));

  CHECK_THROWS_AS(convergence_table(franke(), {16, 8}, Rational(1, 2)),
                  std::invalid_argument);
}

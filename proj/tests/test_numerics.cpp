#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "carpet/numerics.hpp"

using namespace carpet;

TEST_CASE("solve_monotone full-interval cover") {
  auto f = [](double s) { return 3.0 * std::pow(1.0 / 3.0, s) - 1.0; };
  CHECK(solve_monotone(f, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("solve_monotone two-scale closed form") {
  // 2^-s + 4^-s = 1 has root log2(2 / (sqrt(5) - 1))
  auto f = [](double s) { return std::pow(2.0, -s) + std::pow(4.0, -s) - 1.0; };
  double expected = std::log(2.0 / (std::sqrt(5.0) - 1.0)) / std::log(2.0);
  CHECK(expected == doctest::Approx(0.6942419136306173).epsilon(1e-12));
  CHECK(solve_monotone(f, 0.0, 2.0) == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("solve_monotone published two-height equation") {
  auto f = [](double s) {
    return 0.2 * (5.0 * std::pow(0.1, s - 1.0) + 3.0 * std::pow(0.13, s - 1.0)) - 1.0;
  };
  double root = solve_monotone(f, 0.0, 2.0);
  // full-precision root of the equation whose 5-decimal print is 1.21340
  CHECK(root == doctest::Approx(1.2133984980775854).epsilon(1e-12));
}

TEST_CASE("solve_monotone bracket widening invariance") {
  auto f = [](double s) { return std::pow(2.0, -s) + std::pow(4.0, -s) - 1.0; };
  double r1 = solve_monotone(f, 0.0, 2.0);
  double r2 = solve_monotone(f, 0.0, 37.0);
  double r3 = solve_monotone(f, 0.5, 0.75);
  CHECK(std::abs(r1 - r2) < 1e-11);
  CHECK(std::abs(r1 - r3) < 1e-11);
}

TEST_CASE("solve_monotone error paths") {
  CHECK_THROWS_AS(solve_monotone([](double) { return 1.0; }, 0.0, 1.0), NumericError);
  try {
    solve_monotone([](double) { return 1.0; }, 0.0, 1.0);
  } catch (const NumericError& e) {
    CHECK(e.kind() == "NoBracket");
  }
  try {
    solve_monotone([](double x) { return x < 0.25 ? -1.0 : std::nan(""); }, 0.0, 1.0);
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(e.kind() == "NonFinite");
  }
}

TEST_CASE("maximize_simplex entropy is maximized by the uniform vector") {
  auto entropy = [](const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) h -= x * std::log(x);
    return h;
  };
  SimplexResult res = maximize_simplex(entropy, 4);
  CHECK(res.value == doctest::Approx(std::log(4.0)).epsilon(1e-10));
  for (double x : res.argmax) CHECK(x == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("maximize_simplex never loses ground against its starts") {
  auto g = [](const std::vector<double>& p) {
    return -2.0 * (p[0] - 0.6) * (p[0] - 0.6) - (p[1] - 0.3) * (p[1] - 0.3);
  };
  SimplexOptConfig cfg;
  cfg.starts = 8;
  SimplexResult res = maximize_simplex(g, 3, cfg);
  CHECK(res.value >= g({1.0 / 3, 1.0 / 3, 1.0 / 3}) - 1e-12);
  CHECK(res.value == doctest::Approx(0.0).epsilon(1e-8));
  for (double x : res.argmax) CHECK(x > 0.0);
}

TEST_CASE("maximize_simplex NonFinite when the objective is never finite") {
  auto g = [](const std::vector<double>&) { return std::nan(""); };
  CHECK_THROWS_AS(maximize_simplex(g, 3), NumericError);
}

TEST_CASE("maximize_simplex is deterministic") {
  auto entropy = [](const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) h -= x * std::log(x);
    return h;
  };
  SimplexResult a = maximize_simplex(entropy, 5);
  SimplexResult b = maximize_simplex(entropy, 5);
  CHECK(a.value == b.value);
  CHECK(a.argmax == b.argmax);
}

TEST_CASE("fit_line exact and perturbed") {
  std::vector<double> xs = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> ys = {1.0, 3.0, 5.0, 7.0};
  LineFit f = fit_line(xs, ys);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> ys2 = {0.0, 1.0, 2.1, 3.0};
  LineFit g = fit_line(xs, ys2);
  CHECK(std::abs(g.slope - 1.0) < 0.1);
  CHECK(g.r2 < 1.0);
}

TEST_CASE("fit_line degenerate input") {
  std::vector<double> xs = {1.0, 1.0, 1.0};
  std::vector<double> ys = {0.0, 1.0, 2.0};
  try {
    fit_line(xs, ys);
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(e.kind() == "DegenerateInput");
  }
}

namespace {

// brute-force occupied-cell count of the middle-thirds Cantor set at scale 3^-k
std::size_t cantor_boxes(int k) {
  std::vector<double> lefts = {0.0};
  double w = 1.0;
  for (int i = 0; i < k; ++i) {
    std::vector<double> next;
    for (double l : lefts) {
      next.push_back(l);
      next.push_back(l + 2.0 * w / 3.0);
    }
    lefts = std::move(next);
    w /= 3.0;
  }
  std::set<long long> cells;
  double scale = std::pow(3.0, k);
  for (double l : lefts) cells.insert(std::llround(l * scale));
  return cells.size();
}

}  // namespace

TEST_CASE("fit_line recovers the Cantor dust slope from brute-force counts") {
  std::vector<double> xs, ys;
  for (int k = 3; k <= 8; ++k) {
    xs.push_back(k * std::log(3.0));
    ys.push_back(std::log(static_cast<double>(cantor_boxes(k))));
  }
  LineFit f = fit_line(xs, ys);
  CHECK(std::abs(f.slope - std::log(2.0) / std::log(3.0)) < 0.02);
}

TEST_CASE("grad_check linear objective") {
  auto g = [](const std::vector<double>& p) { return 2.0 * p[0] - 0.5 * p[1] + p[2]; };
  auto grad = [](const std::vector<double>&) { return std::vector<double>{2.0, -0.5, 1.0}; };
  CHECK(grad_check(g, grad, {0.3, 0.3, 0.4}, 1e-5) <= 1e-9);
}

TEST_CASE("grad_check flags a sign-flipped gradient") {
  auto g = [](const std::vector<double>& p) { return 2.0 * p[0] - 0.5 * p[1] + p[2]; };
  auto bad = [](const std::vector<double>&) { return std::vector<double>{-2.0, 0.5, -1.0}; };
  CHECK(grad_check(g, bad, {0.3, 0.3, 0.4}, 1e-5) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("splitmix stream is platform-stable") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafull);
  SplitMix64 rng2(0);
  CHECK(rng2.next() == 0xe220a8397b1dcdafull);
  double u = SplitMix64(42).next_double();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
  CHECK(mix_seed(7, 0) != mix_seed(7, 1));
}

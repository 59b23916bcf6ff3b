#ifndef CARPET_NUMERICS_HPP
#define CARPET_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "carpet/errors.hpp"

namespace carpet {

struct RootConfig {
  double abs_tol = 1e-12;
  int max_iter = 200;
};

// Bisection on a bracketing interval. The target equations (similarity and box
// dimension, affinity dimension, R(x) = 1) are all strictly monotone in the
// unknown, so bisection converges unconditionally and deterministically.
// Throws NumericError("NoBracket") if f(lo), f(hi) have the same sign and
// NumericError("NonFinite") if f returns a non-finite value.
double solve_monotone(const std::function<double(double)>& f, double lo, double hi,
                      const RootConfig& cfg = {});

struct SimplexOptConfig {
  int starts = 16;
  double step_tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0x5eedcafe01234567ull;
};

struct SimplexResult {
  std::vector<double> argmax;  // strictly positive, sums to 1
  double value = 0.0;
};

// Multi-start gradient ascent over the open probability simplex, run in softmax
// coordinates with a backtracking line search. Starts: uniform vector, seeded
// random starts, plus any caller-supplied warm starts. Among starts whose final
// values tie within 1e-12, the lexicographically smallest argmax wins, so the
// result is deterministic. `grad` (gradient of g in p-space) is optional; a
// central-difference fallback is used when absent.
// Throws NumericError("NonFinite") if no start yields a finite value.
SimplexResult maximize_simplex(
    const std::function<double(const std::vector<double>&)>& g, int n,
    const SimplexOptConfig& cfg = {},
    const std::vector<std::vector<double>>& warm_starts = {},
    const std::function<std::vector<double>(const std::vector<double>&)>& grad = nullptr);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares. Throws NumericError("DegenerateInput") if all xs coincide.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

// Max over coordinates of the relative deviation between `grad` and the central
// finite difference of `g` at p with step h. Used by tests as a derivative oracle.
double grad_check(const std::function<double(const std::vector<double>&)>& g,
                  const std::function<std::vector<double>(const std::vector<double>&)>& grad,
                  const std::vector<double>& p, double h);

// Fixed 64-bit mixing generator (splitmix-style), identical across platforms;
// all randomized sampling in the library derives from it so outputs are
// bit-reproducible given the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derived stream seed for chunked generation: chunk k of a run seeded with s
// uses mix_seed(s, k).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  return g.next();
}

}  // namespace carpet

#endif  // CARPET_NUMERICS_HPP

#include "carpet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace carpet {

namespace {

double checked_eval(const std::function<double(double)>& f, double x) {
  double v = f(x);
  if (!std::isfinite(v)) {
    throw NumericError("NonFinite", "function value is not finite at x = " + std::to_string(x));
  }
  return v;
}

}  // namespace

double solve_monotone(const std::function<double(double)>& f, double lo, double hi,
                      const RootConfig& cfg) {
  if (!(lo < hi)) throw NumericError("NoBracket", "empty interval");
  double flo = checked_eval(f, lo);
  double fhi = checked_eval(f, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericError("NoBracket", "f has the same sign at both endpoints");
  }
  for (int it = 0; it < cfg.max_iter && (hi - lo) > cfg.abs_tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval is at floating-point resolution
    double fm = checked_eval(f, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

std::vector<double> softmax(const std::vector<double>& theta) {
  double m = *std::max_element(theta.begin(), theta.end());
  std::vector<double> p(theta.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    p[i] = std::exp(theta[i] - m);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

}  // namespace

SimplexResult maximize_simplex(
    const std::function<double(const std::vector<double>&)>& g, int n,
    const SimplexOptConfig& cfg, const std::vector<std::vector<double>>& warm_starts,
    const std::function<std::vector<double>(const std::vector<double>&)>& grad) {
  if (n < 2) throw NumericError("BadDimension", "simplex dimension must be >= 2");
  if (cfg.starts < 1) throw NumericError("BadConfig", "starts must be >= 1");

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0 / n);
  for (const auto& w : warm_starts) {
    if (static_cast<int>(w.size()) == n) starts.push_back(w);
  }
  SplitMix64 rng(cfg.seed);
  while (static_cast<int>(starts.size()) < cfg.starts + static_cast<int>(warm_starts.size()) + 1) {
    std::vector<double> theta(n);
    for (double& t : theta) t = 4.0 * rng.next_double() - 2.0;
    starts.push_back(softmax(theta));
  }

  // gradient of g(softmax(theta)) w.r.t. theta, evaluated through p
  auto theta_gradient = [&](const std::vector<double>& p) {
    std::vector<double> gp;
    if (grad) {
      gp = grad(p);
    } else {
      gp.resize(n);
      const double h = 1e-6;
      for (int k = 0; k < n; ++k) {
        std::vector<double> pp = p, pm = p;
        pp[k] += h;
        pm[k] -= h;
        gp[k] = (g(pp) - g(pm)) / (2.0 * h);
      }
    }
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += gp[i] * p[i];
    std::vector<double> gt(n);
    for (int i = 0; i < n; ++i) gt[i] = p[i] * (gp[i] - mean);
    return gt;
  };

  bool any_finite = false;
  SimplexResult best;
  best.value = -std::numeric_limits<double>::infinity();

  for (const auto& p0 : starts) {
    std::vector<double> theta(n);
    for (int i = 0; i < n; ++i) theta[i] = std::log(std::max(p0[i], 1e-300));
    std::vector<double> p = softmax(theta);
    double value = g(p);
    if (!std::isfinite(value)) continue;
    double step = 1.0;
    for (int it = 0; it < cfg.max_iter; ++it) {
      std::vector<double> gt = theta_gradient(p);
      double norm2 = 0.0;
      for (double x : gt) norm2 += x * x;
      if (norm2 < 1e-32) break;
      bool improved = false;
      for (double s = step; s > cfg.step_tol; s *= 0.5) {
        std::vector<double> theta_next(n);
        for (int i = 0; i < n; ++i) theta_next[i] = theta[i] + s * gt[i];
        std::vector<double> p_next = softmax(theta_next);
        double v_next = g(p_next);
        if (std::isfinite(v_next) && v_next > value) {
          theta = std::move(theta_next);
          p = std::move(p_next);
          value = v_next;
          step = std::min(s * 2.0, 1e3);
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    any_finite = true;
    if (value > best.value + 1e-12) {
      best.value = value;
      best.argmax = p;
    } else if (std::abs(value - best.value) <= 1e-12 &&
               std::lexicographical_compare(p.begin(), p.end(), best.argmax.begin(),
                                            best.argmax.end())) {
      best.argmax = p;  // deterministic tie-break
    }
  }

  if (!any_finite) throw NumericError("NonFinite", "objective not finite at any start");
  return best;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw NumericError("DegenerateInput", "need at least two (x, y) pairs");
  }
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw NumericError("DegenerateInput", "all x values coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r2 = 1.0;  // exactly constant data, exactly fit
  } else {
    fit.r2 = std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

double grad_check(const std::function<double(const std::vector<double>&)>& g,
                  const std::function<std::vector<double>(const std::vector<double>&)>& grad,
                  const std::vector<double>& p, double h) {
  std::vector<double> analytic = grad(p);
  double worst = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::vector<double> pp = p, pm = p;
    pp[k] += h;
    pm[k] -= h;
    double numeric = (g(pp) - g(pm)) / (2.0 * h);
    double denom = std::max({std::abs(analytic[k]), std::abs(numeric), 1e-12});
    worst = std::max(worst, std::abs(numeric - analytic[k]) / denom);
  }
  return worst;
}

}  // namespace carpet

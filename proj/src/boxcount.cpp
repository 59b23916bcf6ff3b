#include "carpet/boxcount.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "carpet/numerics.hpp"
#include "carpet/render.hpp"

namespace carpet {

namespace {

void check_range(int k_min, int k_max) {
  if (!(3 <= k_min && k_min < k_max && k_max <= 12)) {
    throw NumericError("BadConfig", "need 3 <= k_min < k_max <= 12");
  }
}

BoxCountEstimate fit_counts(BoxCountEstimate est) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < est.ks.size(); ++i) {
    xs.push_back(est.ks[i] * std::log(2.0));  // -log delta_k
    ys.push_back(std::log(static_cast<double>(est.counts[i])));
  }
  LineFit fit = fit_line(xs, ys);
  est.slope = fit.slope;
  est.r2 = fit.r2;
  return est;
}

}  // namespace

BoxCountEstimate empirical_box_dimension(const TGLSystem& system, int k_min, int k_max) {
  check_range(k_min, k_max);
  BoxCountEstimate est;
  est.method = "cylinder-cover";
  for (int k = k_min; k <= k_max; ++k) {
    double delta = std::ldexp(1.0, -k);
    std::vector<Cylinder> cover = cylinder_cover(system, delta);
    RasterGrid grid = rasterize(cover, 1 << k);
    est.ks.push_back(k);
    est.scales.push_back(delta);
    est.counts.push_back(grid.occupied());
  }
  return fit_counts(std::move(est));
}

BoxCountEstimate empirical_box_dimension_points(const TGLSystem& system, int k_min, int k_max,
                                                std::size_t n_points, std::uint64_t seed) {
  check_range(k_min, k_max);
  PointCloud cloud = chaos_game(system, n_points, seed);
  BoxCountEstimate est;
  est.method = "point-cloud";
  for (int k = k_min; k <= k_max; ++k) {
    RasterGrid grid = rasterize(cloud, 1 << k);
    est.ks.push_back(k);
    est.scales.push_back(std::ldexp(1.0, -k));
    est.counts.push_back(grid.occupied());
  }
  return fit_counts(std::move(est));
}

BoxCountEstimate empirical_projection_dimension(const TGLSystem& system, int k_min, int k_max) {
  check_range(k_min, k_max);
  const int m = system.column_count();
  BoxCountEstimate est;
  est.method = "cylinder-cover";
  for (int k = k_min; k <= k_max; ++k) {
    double delta = std::ldexp(1.0, -k);
    int res = 1 << k;
    std::vector<char> bins(res, 0);

    // Moran cover of the column IFS: words w with |r_w| <= delta < |r_(parent)|
    struct Node {
      double r, o;
    };
    const double stop = delta * (1.0 + 1e-12);
    std::vector<Node> stack{{1.0, 0.0}};
    std::size_t produced = 0;
    while (!stack.empty()) {
      Node node = stack.back();
      stack.pop_back();
      for (int c = 0; c < m; ++c) {
        Node child{node.r * system.columns[c].width, node.o + node.r * system.columns[c].offset};
        if (std::abs(child.r) <= stop) {
          if (++produced > 10'000'000) {
            throw NumericError("CoverTooLarge", "projection cover exceeds 10^7 intervals");
          }
          double lo = child.o + std::min(0.0, child.r);
          double hi = child.o + std::max(0.0, child.r);
          int i0 = std::clamp(static_cast<int>(std::floor(lo * res)), 0, res - 1);
          int i1 = std::clamp(static_cast<int>(std::floor(hi * res)), 0, res - 1);
          for (int i = i0; i <= i1; ++i) bins[i] = 1;
        } else {
          stack.push_back(child);
        }
      }
    }
    est.ks.push_back(k);
    est.scales.push_back(delta);
    est.counts.push_back(static_cast<std::size_t>(std::count(bins.begin(), bins.end(), 1)));
  }
  return fit_counts(std::move(est));
}

std::string estimate_to_json(const BoxCountEstimate& est) {
  nlohmann::json doc;
  auto num12 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return nlohmann::json::parse(buf);
  };
  doc["method"] = est.method;
  doc["ks"] = est.ks;
  nlohmann::json scales = nlohmann::json::array();
  for (double s : est.scales) scales.push_back(num12(s));
  doc["scales"] = scales;
  doc["counts"] = est.counts;
  doc["slope"] = num12(est.slope);
  doc["r2"] = num12(est.r2);
  return doc.dump(2) + "\n";
}

std::string estimate_to_csv(const BoxCountEstimate& est) {
  std::ostringstream os;
  os << "k,count\n";
  for (std::size_t i = 0; i < est.ks.size(); ++i) {
    os << est.ks[i] << "," << est.counts[i] << "\n";
  }
  return os.str();
}

}  // namespace carpet

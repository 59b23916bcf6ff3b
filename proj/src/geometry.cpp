#include "carpet/geometry.hpp"

#include <algorithm>
#include <limits>

namespace carpet {

namespace {

struct Range {
  double lo, hi;
};

Range project(const Quad& q, Vec2 axis) {
  double lo = dot(q.v[0], axis), hi = lo;
  for (int i = 1; i < 4; ++i) {
    double t = dot(q.v[i], axis);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return {lo, hi};
}

}  // namespace

double separation_gap(const Quad& p, const Quad& q) {
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](Vec2 edge) {
    Vec2 axis{-edge.y, edge.x};
    double len = std::sqrt(dot(axis, axis));
    if (len < 1e-300) return;  // degenerate edge
    axis = {axis.x / len, axis.y / len};
    Range rp = project(p, axis);
    Range rq = project(q, axis);
    double gap = std::max(rq.lo - rp.hi, rp.lo - rq.hi);
    best = std::max(best, gap);
  };
  for (int i = 0; i < 4; ++i) {
    consider(p.v[(i + 1) % 4] - p.v[i]);
    consider(q.v[(i + 1) % 4] - q.v[i]);
  }
  return best;
}

bool point_in_quad(const Quad& q, Vec2 pt, double eps) {
  // The vertex order fixes a consistent winding; accept either orientation.
  double sign = 0.0;
  for (int i = 0; i < 4; ++i) {
    Vec2 e = q.v[(i + 1) % 4] - q.v[i];
    Vec2 w = pt - q.v[i];
    double cr = e.x * w.y - e.y * w.x;
    double len = std::sqrt(dot(e, e));
    if (len < 1e-300) continue;
    cr /= len;
    if (cr > eps && sign < 0.0) return false;
    if (cr < -eps && sign > 0.0) return false;
    if (std::abs(cr) <= eps) return false;  // on the boundary: not strictly inside
    if (sign == 0.0) sign = cr > 0.0 ? 1.0 : -1.0;
  }
  return true;
}

}  // namespace carpet

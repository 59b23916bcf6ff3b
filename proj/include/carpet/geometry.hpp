#ifndef CARPET_GEOMETRY_HPP
#define CARPET_GEOMETRY_HPP

#include <array>
#include <cmath>

namespace carpet {

// Equality tolerance for all geometric predicates. Decimal inputs like 0.28 are
// not exactly representable, so touching boundaries are decided up to this slack.
inline constexpr double kGeomTol = 1e-12;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Convex quadrilateral given by its vertices in order. The images f(R) of the
// unit square under the system maps are parallelograms of this form.
struct Quad {
  std::array<Vec2, 4> v;
};

// Largest separation over the candidate separating axes (edge normals of both
// quads). Positive: the quads are separated by that distance. Negative: every
// axis sees overlapping projections; the magnitude is the smallest penetration.
double separation_gap(const Quad& p, const Quad& q);

// Interiors intersect iff no axis separates them by more than -eps,
// i.e. touching boundaries (gap >= -eps) do not count as an intersection.
inline bool interiors_intersect(const Quad& p, const Quad& q, double eps = kGeomTol) {
  return separation_gap(p, q) < -eps;
}

// Strict point-in-parallelogram test used by the pixel oracles and rasterizer.
bool point_in_quad(const Quad& q, Vec2 pt, double eps = 0.0);

inline Quad axis_aligned_cell(double x0, double y0, double x1, double y1) {
  return Quad{{Vec2{x0, y0}, Vec2{x1, y0}, Vec2{x1, y1}, Vec2{x0, y1}}};
}

}  // namespace carpet

#endif  // CARPET_GEOMETRY_HPP

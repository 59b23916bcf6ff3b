#include "carpet/uplift.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace carpet {

using nlohmann::json;

Mat3 UpliftSystem::matrix(int i) const {
  const AffineMap2& m = base.maps[i];
  const UpliftMap& e = ext[i];
  return Mat3{{{m.b, 0.0, 0.0}, {m.d, m.a, 0.0}, {e.u, e.v, e.lambda}}};
}

std::array<double, 3> UpliftSystem::translation(int i) const {
  return {base.maps[i].tx, base.maps[i].ty, ext[i].tz};
}

Mat3 mat3_mul(const Mat3& x, const Mat3& y) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += x[i][k] * y[k][j];
      r[i][j] = s;
    }
  }
  return r;
}

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 apply(const Mat3& m, const std::array<double, 3>& t, Vec3 p) {
  return {m[0][0] * p.x + t[0], m[1][0] * p.x + m[1][1] * p.y + t[1],
          m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z + t[2]};
}

Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot3(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm3(Vec3 a) { return std::sqrt(dot3(a, a)); }

}  // namespace

namespace {

struct Box3 {
  Vec3 origin;              // image of (0,0,0)
  std::array<Vec3, 3> e;    // edge vectors (matrix columns)

  std::array<Vec3, 8> corners() const {
    std::array<Vec3, 8> out{};
    int idx = 0;
    for (int cz = 0; cz < 2; ++cz) {
      for (int cy = 0; cy < 2; ++cy) {
        for (int cx = 0; cx < 2; ++cx) {
          Vec3 p = origin;
          if (cx) p = {p.x + e[0].x, p.y + e[0].y, p.z + e[0].z};
          if (cy) p = {p.x + e[1].x, p.y + e[1].y, p.z + e[1].z};
          if (cz) p = {p.x + e[2].x, p.y + e[2].y, p.z + e[2].z};
          out[idx++] = p;
        }
      }
    }
    return out;
  }
};

Box3 image_box(const UpliftSystem& u, int i) {
  Mat3 m = u.matrix(i);
  Box3 b;
  b.origin = {u.translation(i)[0], u.translation(i)[1], u.translation(i)[2]};
  b.e = {Vec3{m[0][0], m[1][0], m[2][0]}, Vec3{m[0][1], m[1][1], m[2][1]},
         Vec3{m[0][2], m[1][2], m[2][2]}};
  return b;
}

// SAT over face normals and pairwise edge cross products (15 candidates).
// Returns the best separation gap; >= -eps means the interiors do not meet.
double separation_gap3(const Box3& p, const Box3& q) {
  double best = -std::numeric_limits<double>::infinity();
  auto corners_p = p.corners();
  auto corners_q = q.corners();
  auto consider = [&](Vec3 axis) {
    double len = norm3(axis);
    if (len < 1e-14) return;
    axis = {axis.x / len, axis.y / len, axis.z / len};
    double plo = 1e300, phi = -1e300, qlo = 1e300, qhi = -1e300;
    for (const Vec3& c : corners_p) {
      double t = dot3(axis, c);
      plo = std::min(plo, t);
      phi = std::max(phi, t);
    }
    for (const Vec3& c : corners_q) {
      double t = dot3(axis, c);
      qlo = std::min(qlo, t);
      qhi = std::max(qhi, t);
    }
    best = std::max(best, std::max(qlo - phi, plo - qhi));
  };
  for (int i = 0; i < 3; ++i) {
    consider(cross(p.e[i], p.e[(i + 1) % 3]));
    consider(cross(q.e[i], q.e[(i + 1) % 3]));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) consider(cross(p.e[i], q.e[j]));
  }
  return best;
}

bool aabb_disjoint(const Box3& p, const Box3& q) {
  auto bounds = [](const Box3& b) {
    std::array<double, 6> r = {1e300, -1e300, 1e300, -1e300, 1e300, -1e300};
    for (const Vec3& c : b.corners()) {
      r[0] = std::min(r[0], c.x);
      r[1] = std::max(r[1], c.x);
      r[2] = std::min(r[2], c.y);
      r[3] = std::max(r[3], c.y);
      r[4] = std::min(r[4], c.z);
      r[5] = std::max(r[5], c.z);
    }
    return r;
  };
  auto bp = bounds(p), bq = bounds(q);
  return bp[1] <= bq[0] + kGeomTol || bq[1] <= bp[0] + kGeomTol || bp[3] <= bq[2] + kGeomTol ||
         bq[3] <= bp[2] + kGeomTol || bp[5] <= bq[4] + kGeomTol || bq[5] <= bp[4] + kGeomTol;
}

// sampled fallback: grid of interior points of F_i's cube mapped and tested
// against F_j's image (inverse of a lower-triangular map)
bool sampled_hit(const UpliftSystem& u, int i, int j, int grid) {
  Mat3 mi = u.matrix(i);
  auto ti = u.translation(i);
  Mat3 mj = u.matrix(j);
  auto tj = u.translation(j);
  for (int az = 0; az < grid; ++az) {
    for (int ay = 0; ay < grid; ++ay) {
      for (int ax = 0; ax < grid; ++ax) {
        Vec3 s{(ax + 0.5) / grid, (ay + 0.5) / grid, (az + 0.5) / grid};
        Vec3 p = apply(mi, ti, s);
        double x = (p.x - tj[0]) / mj[0][0];
        double y = (p.y - tj[1] - mj[1][0] * x) / mj[1][1];
        double z = (p.z - tj[2] - mj[2][0] * x - mj[2][1] * y) / mj[2][2];
        const double eps = 1e-9;
        if (x > eps && x < 1 - eps && y > eps && y < 1 - eps && z > eps && z < 1 - eps) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

UpliftSystem validate_uplift(const TGLSystem& base, const std::vector<UpliftMap>& ext) {
  if (static_cast<int>(ext.size()) != base.map_count()) {
    throw ValidationError("BadPartition", "uplift data length differs from map count");
  }
  UpliftSystem u;
  u.base = base;
  u.ext = ext;

  for (int i = 0; i < base.map_count(); ++i) {
    double lam = std::abs(ext[i].lambda);
    if (!(lam > 0.0) || lam >= std::abs(base.maps[i].a) - kGeomTol) {
      throw ValidationError("LambdaOrderViolation",
                            "map " + std::to_string(i) + " requires 0 < |lambda| < |a|");
    }
  }
  for (int i = 0; i < base.map_count(); ++i) {
    const UpliftMap& e = ext[i];
    double zlo = e.tz + std::min(0.0, e.u) + std::min(0.0, e.v) + std::min(0.0, e.lambda);
    double zhi = e.tz + std::max(0.0, e.u) + std::max(0.0, e.v) + std::max(0.0, e.lambda);
    if (zlo < -kGeomTol || zhi > 1.0 + kGeomTol) {
      throw ValidationError("OutOfUnitCube", "map " + std::to_string(i) + " z-image [" +
                                                 std::to_string(zlo) + ", " + std::to_string(zhi) +
                                                 "] leaves [0,1]");
    }
  }

  // pairwise empty-interior check
  u.rosc3d = CheckStatus::kHolds;
  u.rosc3d_method = "aabb";
  for (int i = 0; i < base.map_count() && u.rosc3d == CheckStatus::kHolds; ++i) {
    for (int j = i + 1; j < base.map_count(); ++j) {
      Box3 bi = image_box(u, i), bj = image_box(u, j);
      if (aabb_disjoint(bi, bj)) continue;
      double gap = separation_gap3(bi, bj);
      if (std::isfinite(gap)) {
        u.rosc3d_method = "sat";
        if (gap < -kGeomTol) {
          u.rosc3d = CheckStatus::kFails;
          u.rosc3d_witness = {i, j};
          break;
        }
      } else {
        u.rosc3d_method = "sampled";
        if (sampled_hit(u, i, j, 64)) {
          u.rosc3d = CheckStatus::kFails;
          u.rosc3d_witness = {i, j};
          break;
        }
      }
    }
  }
  return u;
}

UpliftDimension uplift_dimension(const UpliftSystem& u) {
  const TGLSystem& base = u.base;
  if (!base.diagonally_homogeneous) {
    throw NumericError("TheoremHypothesisViolation", "base system is not diagonally homogeneous");
  }
  int fibre = base.columns[0].count;
  for (const Column& c : base.columns) {
    if (c.count != fibre) {
      throw NumericError("TheoremHypothesisViolation", "vertical fibres are not uniform");
    }
  }
  double b = std::abs(base.maps[0].b);
  double a = std::abs(base.maps[0].a);
  double n = base.map_count();
  double m = base.column_count();
  if (std::abs(m * b - 1.0) > 1e-9) {
    throw NumericError("TheoremHypothesisViolation",
                       "projection must cover [0,1] (M |b| = 1), got M b = " + std::to_string(m * b));
  }

  UpliftDimension out;
  out.value = 1.0 + std::log(n * b) / (-std::log(a));

  double bound = std::pow(b, std::log(n) / std::log(m));
  auto pairs = overlap_pairs(base);
  double d_star = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& column_pairs : pairs) {
    for (const auto& [k, l] : column_pairs) {
      any = true;
      d_star = std::min(d_star, std::abs(base.maps[k].d - base.maps[l].d));
    }
  }
  if (any) bound = std::min(bound, b * d_star / (2.0 + d_star));

  bool small_enough = a < bound;
  bool separated = u.rosc3d == CheckStatus::kHolds;
  out.conditions_met = small_enough && separated;
  if (!out.conditions_met) {
    std::ostringstream os;
    os << "hypotheses unverified:";
    if (!small_enough) os << " a = " << a << " not below " << bound;
    if (!separated) os << " 3D separation " << to_string(u.rosc3d);
    out.caveat = os.str();
  }
  return out;
}

UpliftSkewBounds uplift_skew_bounds(const UpliftSystem& u) {
  const TGLSystem& base = u.base;
  UpliftSkewBounds out;
  out.K_x = skewness_bound(base);

  double rho_ab = 0.0, rho_lb = 0.0, b_min = 1e300;
  double max_u = 0.0, max_v = 0.0, max_d = 0.0;
  for (int i = 0; i < base.map_count(); ++i) {
    double b = std::abs(base.maps[i].b);
    rho_ab = std::max(rho_ab, std::abs(base.maps[i].a) / b);
    rho_lb = std::max(rho_lb, std::abs(u.ext[i].lambda) / b);
    b_min = std::min(b_min, b);
    max_u = std::max(max_u, std::abs(u.ext[i].u));
    max_v = std::max(max_v, std::abs(u.ext[i].v));
    max_d = std::max(max_d, std::abs(base.maps[i].d));
  }
  if (rho_lb >= 1.0) {
    throw NumericError("SeriesDiverges", "max |lambda_i| >= |b_i| breaks the geometric series");
  }

  // |z_n| <= n * rho^(n-1) * V / b_min with rho = max(rho_ab, rho_lb); the
  // envelope c * r^n with r strictly between rho and 1 feeds the K_y series.
  double rho = std::max(rho_ab, rho_lb);
  double r = 0.5 * (1.0 + rho);
  double c = 0.0, k_z = 0.0;
  if (max_v > 0.0) {
    double zeta = max_v / b_min;  // n = 1 term
    double rn = r;
    for (int n = 1; n <= 10000; ++n) {
      k_z = std::max(k_z, zeta);
      c = std::max(c, zeta / rn);
      double next = zeta * rho * (n + 1.0) / n;
      if (next < 1e-300 || (n > 64 && next < k_z * 1e-18)) break;
      zeta = next;
      rn *= r;
    }
  }
  out.K_z = k_z;
  out.envelope_c = c;
  out.envelope_r = r;
  out.K_y = max_u / b_min + c * (max_d / b_min) * r / (1.0 - r) +
            (rho_lb / (1.0 - rho_lb)) * (max_u / b_min);
  return out;
}

namespace {

const char* map_key_names[] = {"b", "a", "d", "tx", "ty", "u", "v", "lambda", "tz"};

}  // namespace

UpliftSpec parse_uplift_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw IoError("BadFormat", e.what());
  }
  if (!doc.is_object() || !doc.contains("maps") || !doc["maps"].is_array()) {
    throw IoError("BadFormat", "uplift spec must hold a \"maps\" array");
  }
  // reuse the planar parser for the shared part
  json planar = doc;
  for (json& jm : planar["maps"]) {
    if (!jm.is_object()) throw IoError("BadFormat", "map entries must be objects");
    jm.erase("u");
    jm.erase("v");
    jm.erase("lambda");
    jm.erase("tz");
  }
  UpliftSpec spec;
  spec.base = parse_system_spec(planar.dump());
  for (const json& jm : doc["maps"]) {
    for (auto it = jm.begin(); it != jm.end(); ++it) {
      bool known = false;
      for (const char* k : map_key_names) {
        if (it.key() == k) known = true;
      }
      if (!known) throw IoError("UnknownKey", "unknown key \"" + it.key() + "\" in uplift map");
    }
    UpliftMap e;
    auto get = [&](const char* key) {
      if (!jm.contains(key) || !jm[key].is_number()) {
        throw IoError("BadFormat", std::string("missing or non-numeric \"") + key + "\"");
      }
      return jm[key].get<double>();
    };
    e.u = get("u");
    e.v = get("v");
    e.lambda = get("lambda");
    e.tz = get("tz");
    spec.ext.push_back(e);
  }
  return spec;
}

UpliftSpec load_uplift_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("IoError", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_uplift_spec(buf.str());
}

std::string uplift_spec_to_json(const UpliftSpec& spec) {
  json doc;
  doc["class"] = spec.base.cls == SystemClass::kTGL ? "tgl" : "shifted";
  doc["maps"] = json::array();
  for (std::size_t i = 0; i < spec.base.maps.size(); ++i) {
    const AffineMap2& m = spec.base.maps[i];
    const UpliftMap& e = spec.ext[i];
    doc["maps"].push_back({{"b", m.b},
                           {"a", m.a},
                           {"d", m.d},
                           {"tx", m.tx},
                           {"ty", m.ty},
                           {"u", e.u},
                           {"v", e.v},
                           {"lambda", e.lambda},
                           {"tz", e.tz}});
  }
  doc["columns"] = spec.base.column_sizes;
  return doc.dump(2) + "\n";
}

}  // namespace carpet

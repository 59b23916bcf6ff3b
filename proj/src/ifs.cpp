#include "carpet/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "carpet/numerics.hpp"

namespace carpet {

using nlohmann::json;

Quad map_image(const AffineMap2& m) {
  Vec2 c00 = m.apply({0.0, 0.0});
  Vec2 c10 = m.apply({1.0, 0.0});
  Vec2 c11 = m.apply({1.0, 1.0});
  Vec2 c01 = m.apply({0.0, 1.0});
  return Quad{{c00, c10, c11, c01}};
}

namespace {

std::string map_name(int i) { return "maps[" + std::to_string(i) + "]"; }

void check_unit_square(const std::vector<AffineMap2>& maps) {
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const AffineMap2& m = maps[i];
    double xlo = std::min(m.tx, m.tx + m.b);
    double xhi = std::max(m.tx, m.tx + m.b);
    double ylo = m.ty + std::min(0.0, m.d) + std::min(0.0, m.a);
    double yhi = m.ty + std::max(0.0, m.d) + std::max(0.0, m.a);
    if (xlo < -kGeomTol || xhi > 1.0 + kGeomTol || ylo < -kGeomTol || yhi > 1.0 + kGeomTol) {
      std::ostringstream os;
      os << map_name(static_cast<int>(i)) << " image [" << xlo << "," << xhi << "]x[" << ylo << ","
         << yhi << "] leaves the unit square";
      throw ValidationError("OutOfUnitSquare", os.str());
    }
  }
}

// s_H and s for the uniform-vertical-fibre flag; the dimension module exposes
// the same quantities through its public API.
double solve_similarity(const std::vector<double>& ratios) {
  auto f = [&](double s) {
    double sum = 0.0;
    for (double r : ratios) sum += std::pow(r, s);
    return sum - 1.0;
  };
  double hi = 2.0;
  while (f(hi) > 0.0 && hi < 64.0) hi *= 2.0;
  return solve_monotone(f, 0.0, hi);
}

}  // namespace

TGLSystem validate_system(const SystemSpec& spec) {
  const int n = static_cast<int>(spec.maps.size());
  const int m = static_cast<int>(spec.column_sizes.size());
  if (n < 2) throw ValidationError("BadPartition", "need at least two maps");
  if (m < 2) throw ValidationError("BadPartition", "need at least two columns");
  int total = 0;
  for (int size : spec.column_sizes) {
    if (size <= 0) throw ValidationError("BadPartition", "column sizes must be positive");
    total += size;
  }
  if (total != n) throw ValidationError("BadPartition", "column sizes must sum to the map count");

  // (a) direction-x dominates: 0 < |a_i| < |b_i| < 1
  for (int i = 0; i < n; ++i) {
    const AffineMap2& mp = spec.maps[i];
    if (!(std::abs(mp.a) > 0.0) || std::abs(mp.a) >= std::abs(mp.b) - kGeomTol ||
        std::abs(mp.b) >= 1.0 - kGeomTol) {
      std::ostringstream os;
      os << map_name(i) << " requires 0 < |a| < |b| < 1, got a = " << mp.a << ", b = " << mp.b;
      throw ValidationError("DominationViolation", os.str());
    }
  }

  TGLSystem sys;
  sys.cls = spec.cls;
  sys.maps = spec.maps;
  sys.column_of.assign(n, 0);

  // (b) column structure: shared width and offset, consistent sign
  int first = 0;
  for (int c = 0; c < m; ++c) {
    int size = spec.column_sizes[c];
    const AffineMap2& head = spec.maps[first];
    for (int j = first + 1; j < first + size; ++j) {
      const AffineMap2& mp = spec.maps[j];
      if (std::abs(mp.b - head.b) > kGeomTol || std::abs(mp.tx - head.tx) > kGeomTol) {
        std::ostringstream os;
        os << "column " << c << ": " << map_name(j) << " does not share (b, tx) with "
           << map_name(first);
        throw ValidationError("ColumnInconsistency", os.str());
      }
      if ((mp.b > 0.0) != (head.b > 0.0)) {
        throw ValidationError("ColumnInconsistency",
                              "column " + std::to_string(c) + " mixes signs of b");
      }
    }
    Column col;
    col.first = first;
    col.count = size;
    col.width = head.b;
    col.offset = head.tx;
    sys.columns.push_back(col);
    for (int j = first; j < first + size; ++j) sys.column_of[j] = c;
    first += size;
  }

  // (c) column mass: sum |a_j| <= 1 per column
  for (int c = 0; c < m; ++c) {
    double mass = 0.0;
    for (int j = sys.columns[c].first; j < sys.columns[c].first + sys.columns[c].count; ++j) {
      mass += std::abs(spec.maps[j].a);
    }
    if (mass > 1.0 + kGeomTol) {
      throw ValidationError("ColumnMassViolation",
                            "column " + std::to_string(c) + " has sum |a_j| = " +
                                std::to_string(mass) + " > 1");
    }
  }

  // column separation: non-overlapping for class tgl, total width <= 1 for shifted
  double width_sum = 0.0;
  for (const Column& c : sys.columns) width_sum += std::abs(c.width);
  if (width_sum > 1.0 + kGeomTol) {
    throw ValidationError(spec.cls == SystemClass::kTGL ? "OverlapColumnsInTGLClass"
                                                        : "ColumnWidthViolation",
                          "column widths sum to " + std::to_string(width_sum) + " > 1");
  }
  if (spec.cls == SystemClass::kTGL) {
    for (int c = 0; c < m; ++c) {
      double lo = std::min(sys.columns[c].offset, sys.columns[c].offset + sys.columns[c].width);
      double hi = std::max(sys.columns[c].offset, sys.columns[c].offset + sys.columns[c].width);
      if (lo < -kGeomTol || hi > 1.0 + kGeomTol) {
        throw ValidationError("OverlapColumnsInTGLClass",
                              "column " + std::to_string(c) + " leaves [0,1]");
      }
      if (c + 1 < m) {
        double next_lo =
            std::min(sys.columns[c + 1].offset, sys.columns[c + 1].offset + sys.columns[c + 1].width);
        if (hi > next_lo + kGeomTol) {
          throw ValidationError("OverlapColumnsInTGLClass",
                                "columns " + std::to_string(c) + " and " + std::to_string(c + 1) +
                                    " overlap");
        }
      }
    }
  }

  check_unit_square(spec.maps);

  for (const AffineMap2& mp : spec.maps) {
    if (mp.a < 0.0 || mp.b < 0.0) sys.has_negative_entries = true;
  }

  sys.diagonally_homogeneous = true;
  for (int i = 1; i < n; ++i) {
    if (std::abs(std::abs(spec.maps[i].b) - std::abs(spec.maps[0].b)) > kGeomTol ||
        std::abs(std::abs(spec.maps[i].a) - std::abs(spec.maps[0].a)) > kGeomTol) {
      sys.diagonally_homogeneous = false;
      break;
    }
  }

  // uniform vertical fibres: sum_{j in column} |a_j|^(s - s_H) = 1 for every column
  {
    std::vector<double> ratios;
    for (const Column& c : sys.columns) ratios.push_back(std::abs(c.width));
    double s_h = solve_similarity(ratios);
    auto box_eq = [&](double s) {
      double sum = 0.0;
      for (const AffineMap2& mp : sys.maps) {
        sum += std::pow(std::abs(mp.b), s_h) * std::pow(std::abs(mp.a), s - s_h);
      }
      return sum - 1.0;
    };
    double hi = 2.0;
    while (box_eq(hi) > 0.0 && hi < 64.0) hi *= 2.0;
    double s = solve_monotone(box_eq, 0.0, hi);
    sys.uniform_vertical_fibres = true;
    for (const Column& c : sys.columns) {
      double sum = 0.0;
      for (int j = c.first; j < c.first + c.count; ++j) {
        sum += std::pow(std::abs(sys.maps[j].a), s - s_h);
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        sys.uniform_vertical_fibres = false;
        break;
      }
    }
  }

  // (A2) is not enforced, only reported: the examples are stated without
  // normalizing the column IFS.
  {
    double lo = 1e300, hi = -1e300;
    for (const Column& c : sys.columns) {
      double fp = c.offset / (1.0 - c.width);
      lo = std::min(lo, fp);
      hi = std::max(hi, fp);
    }
    if (std::abs(lo) > 1e-9 || std::abs(hi - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "column IFS fixed points span [" << lo << ", " << hi << "] rather than [0, 1]";
      sys.warnings.push_back(os.str());
    }
  }

  return sys;
}

SystemSpec TGLSystem::spec() const {
  SystemSpec s;
  s.cls = cls;
  s.maps = maps;
  for (const Column& c : columns) s.column_sizes.push_back(c.count);
  return s;
}

Cylinder cylinder(const TGLSystem& system, std::span<const int> word) {
  Cylinder c;
  c.word.assign(word.begin(), word.end());
  for (int idx : word) {
    if (idx < 0 || idx >= system.map_count()) {
      throw ValidationError("IndexOutOfRange",
                            "word symbol " + std::to_string(idx) + " outside 0.." +
                                std::to_string(system.map_count() - 1));
    }
    const AffineMap2& f = system.maps[idx];
    c.origin = {c.b * f.tx + c.origin.x, c.d * f.tx + c.a * f.ty + c.origin.y};
    c.d = c.d * f.b + c.a * f.d;
    c.b *= f.b;
    c.a *= f.a;
  }
  return c;
}

Cylinder extend(const TGLSystem& system, const Cylinder& c, int index) {
  if (index < 0 || index >= system.map_count()) {
    throw ValidationError("IndexOutOfRange", "symbol " + std::to_string(index));
  }
  const AffineMap2& f = system.maps[index];
  Cylinder out = c;
  out.word.push_back(index);
  out.origin = {c.b * f.tx + c.origin.x, c.d * f.tx + c.a * f.ty + c.origin.y};
  out.d = c.d * f.b + c.a * f.d;
  out.b = c.b * f.b;
  out.a = c.a * f.a;
  return out;
}

double skewness_bound(const TGLSystem& system) {
  double max_db = 0.0, max_ab = 0.0;
  for (const AffineMap2& m : system.maps) {
    max_db = std::max(max_db, std::abs(m.d) / std::abs(m.b));
    max_ab = std::max(max_ab, std::abs(m.a) / std::abs(m.b));
  }
  return max_db / (1.0 - max_ab);
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw IoError("UnknownKey", "unknown key \"" + it.key() + "\" in " + where);
  }
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw IoError("BadFormat", "missing or non-numeric \"" + std::string(key) + "\" in " + where);
  }
  return obj[key].get<double>();
}

}  // namespace

SystemSpec parse_system_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw IoError("BadFormat", e.what());
  }
  if (!doc.is_object()) throw IoError("BadFormat", "top-level value must be an object");
  reject_unknown_keys(doc, {"class", "maps", "columns"}, "system spec");
  SystemSpec spec;
  if (!doc.contains("class") || !doc["class"].is_string()) {
    throw IoError("BadFormat", "missing \"class\"");
  }
  std::string cls = doc["class"].get<std::string>();
  if (cls == "tgl") {
    spec.cls = SystemClass::kTGL;
  } else if (cls == "shifted") {
    spec.cls = SystemClass::kShiftedTGL;
  } else {
    throw IoError("BadFormat", "\"class\" must be \"tgl\" or \"shifted\"");
  }
  if (!doc.contains("maps") || !doc["maps"].is_array()) throw IoError("BadFormat", "missing \"maps\"");
  int i = 0;
  for (const json& jm : doc["maps"]) {
    if (!jm.is_object()) throw IoError("BadFormat", map_name(i) + " must be an object");
    reject_unknown_keys(jm, {"b", "a", "d", "tx", "ty"}, map_name(i));
    AffineMap2 m;
    m.b = require_number(jm, "b", map_name(i));
    m.a = require_number(jm, "a", map_name(i));
    m.d = require_number(jm, "d", map_name(i));
    m.tx = require_number(jm, "tx", map_name(i));
    m.ty = require_number(jm, "ty", map_name(i));
    spec.maps.push_back(m);
    ++i;
  }
  if (!doc.contains("columns") || !doc["columns"].is_array()) {
    throw IoError("BadFormat", "missing \"columns\"");
  }
  for (const json& jc : doc["columns"]) {
    if (!jc.is_number_integer()) throw IoError("BadFormat", "\"columns\" must hold integers");
    spec.column_sizes.push_back(jc.get<int>());
  }
  return spec;
}

SystemSpec load_system_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("IoError", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_spec(buf.str());
}

std::string system_spec_to_json(const SystemSpec& spec) {
  json doc;
  doc["class"] = spec.cls == SystemClass::kTGL ? "tgl" : "shifted";
  doc["maps"] = json::array();
  for (const AffineMap2& m : spec.maps) {
    doc["maps"].push_back({{"b", m.b}, {"a", m.a}, {"d", m.d}, {"tx", m.tx}, {"ty", m.ty}});
  }
  doc["columns"] = spec.column_sizes;
  return doc.dump(2) + "\n";
}

void save_system_spec(const SystemSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("IoError", "cannot open " + path + " for writing");
  out << system_spec_to_json(spec);
  if (!out) throw IoError("IoError", "failed writing " + path);
}

}  // namespace carpet

#include "carpet/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace carpet {

using nlohmann::json;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kHolds: return "holds";
    case CheckStatus::kFails: return "fails";
    default: return "unknown";
  }
}

std::vector<std::vector<IndexPair>> overlap_pairs(const TGLSystem& system) {
  std::vector<std::vector<IndexPair>> result(system.column_count());
  for (int c = 0; c < system.column_count(); ++c) {
    const Column& col = system.columns[c];
    for (int k = col.first; k < col.first + col.count; ++k) {
      for (int l = k + 1; l < col.first + col.count; ++l) {
        if (interiors_intersect(map_image(system.maps[k]), map_image(system.maps[l]))) {
          result[c].emplace_back(k, l);
        }
      }
    }
  }
  return result;
}

TransversalityCheck transversality_sufficient(const TGLSystem& system) {
  TransversalityCheck out;
  out.r_star = 0.0;
  out.b_min = std::numeric_limits<double>::infinity();
  for (const AffineMap2& m : system.maps) {
    out.r_star = std::max(out.r_star, std::abs(m.a) / std::abs(m.b));
    out.b_min = std::min(out.b_min, std::abs(m.b));
  }
  auto pairs = overlap_pairs(system);
  double s_star = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& column_pairs : pairs) {
    for (const auto& [k, l] : column_pairs) {
      any = true;
      double sk = system.maps[k].d / system.maps[k].b;
      double sl = system.maps[l].d / system.maps[l].b;
      s_star = std::min(s_star, std::abs(sk - sl));
    }
  }
  if (!any) {
    out.vacuous = true;
    out.holds = true;
    out.s_star = 0.0;
    out.margin = 0.0;
    return out;
  }
  out.s_star = s_star;
  double lhs = s_star * out.b_min / (2.0 + s_star * out.b_min);
  out.margin = lhs - out.r_star;
  out.holds = out.margin > 0.0;
  return out;
}

namespace {

double log_mean(const std::vector<double>& values, const ProbVector& weights) {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * std::log(values[i]);
  return acc;
}

}  // namespace

CondCheck check_cond_main(const TGLSystem& system, const ProbVector& p) {
  for (double x : p) {
    if (!(x > 0.0)) throw NumericError("ZeroEntry", "cond:main needs strictly positive p");
  }
  ProbVector q = column_marginal(system, p);
  std::vector<double> absa, absb;
  for (const AffineMap2& m : system.maps) {
    absa.push_back(std::abs(m.a));
    absb.push_back(std::abs(m.b));
  }
  double la = log_mean(absa, p);
  double lb = log_mean(absb, p);
  double lq = 0.0, lN = 0.0;
  for (int c = 0; c < system.column_count(); ++c) {
    lq += q[c] * std::log(q[c]);
    lN += q[c] * std::log(static_cast<double>(system.columns[c].count));
  }
  double lhs = la / lb;
  double rhs = lN == 0.0 ? 1.0 : 1.0 + lN / (-lq);
  CondCheck out;
  out.margin = lhs - rhs;
  out.holds = out.margin > 0.0;
  return out;
}

CondCheck check_cond_box(const TGLSystem& system) {
  NaturalWeights w = natural_box_weights(system);
  BoxDimension box = box_dimension_upper(system);
  double lp = 0.0, lb = 0.0, la = 0.0;
  for (int i = 0; i < system.map_count(); ++i) {
    lp += w.p_tilde[i] * std::log(w.p_tilde[i]);
    lb += w.p_tilde[i] * std::log(std::abs(system.maps[i].b));
    la += w.p_tilde[i] * std::log(std::abs(system.maps[i].a));
  }
  double lq = 0.0;
  for (double qi : w.q_tilde) lq += qi * std::log(qi);
  double lhs = -lp + lq;
  double rhs = box.s_H * (lb - la);
  CondCheck out;
  out.margin = rhs - lhs;
  out.holds = out.margin > 0.0;
  return out;
}

double diag_homo_threshold(const TGLSystem& system) {
  if (!system.diagonally_homogeneous) {
    throw NumericError("NotDiagHomo", "threshold x0 requires a diagonally homogeneous system");
  }
  bool has_multi = false;
  for (const Column& c : system.columns) {
    if (c.count > 1) has_multi = true;
  }
  if (!has_multi) {
    throw NumericError("AllColumnsSingleton",
                       "every column is a singleton: cond:main degenerates to the domination bound");
  }
  auto phi = [](double y) { return y * std::log(y); };
  auto R = [&](double x) {
    double sum_pow = 0.0, sum_phi = 0.0;
    for (const Column& c : system.columns) {
      double y = std::pow(static_cast<double>(c.count), x);
      sum_pow += y;
      sum_phi += phi(y);
    }
    double r = phi(sum_pow) / sum_phi;
    return x + 1.0 / (r - 1.0);
  };
  return solve_monotone([&](double x) { return R(x) - 1.0; }, 1e-9, 1.0 - 1e-12);
}

namespace {

RoscResult pairwise_disjoint(const std::vector<AffineMap2>& maps,
                             const std::function<bool(int, int)>& considered) {
  RoscResult out;
  const int n = static_cast<int>(maps.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!considered(i, j)) continue;
      if (interiors_intersect(map_image(maps[i]), map_image(maps[j]))) {
        out.status = CheckStatus::kFails;
        out.witness = IndexPair{i, j};
        return out;
      }
    }
  }
  out.status = CheckStatus::kHolds;
  return out;
}

}  // namespace

RoscResult check_rosc(const TGLSystem& system) {
  return pairwise_disjoint(system.maps, [](int, int) { return true; });
}

RoscResult check_columnwise_rosc(const TGLSystem& system) {
  return pairwise_disjoint(system.maps, [&](int i, int j) {
    return system.column_of[i] == system.column_of[j];
  });
}

RoscResult check_rosc_maps(const std::vector<AffineMap2>& maps) {
  return pairwise_disjoint(maps, [](int, int) { return true; });
}

namespace {

// Children are generated in symbol order, so the level-n node at flat index j
// spells the word given by the base-M digits of j.
std::vector<int> word_from_index(std::size_t index, int n, int m) {
  std::vector<int> word(n);
  for (int k = n - 1; k >= 0; --k) {
    word[k] = static_cast<int>(index % m);
    index /= m;
  }
  return word;
}

}  // namespace

OverlapScan exact_overlap_scan(const TGLSystem& system, int n_max) {
  const int m = system.column_count();
  double total = std::pow(static_cast<double>(m), n_max);
  if (!(n_max >= 1) || total > 1e6) {
    throw NumericError("ScanTooLarge", "M^n_max exceeds 10^6");
  }
  OverlapScan out;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> deriv{1.0}, offset{0.0};
  for (int n = 1; n <= n_max; ++n) {
    std::vector<double> next_deriv, next_offset;
    next_deriv.reserve(deriv.size() * m);
    next_offset.reserve(deriv.size() * m);
    for (std::size_t j = 0; j < deriv.size(); ++j) {
      for (int c = 0; c < m; ++c) {
        next_deriv.push_back(deriv[j] * system.columns[c].width);
        next_offset.push_back(offset[j] + deriv[j] * system.columns[c].offset);
      }
    }
    deriv = std::move(next_deriv);
    offset = std::move(next_offset);

    std::vector<std::size_t> order(deriv.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (deriv[a] != deriv[b]) return deriv[a] < deriv[b];
      return offset[a] < offset[b];
    });

    // adjacent entries with equal derivative product (relative tolerance 1e-12)
    auto same_deriv = [&](double x, double y) {
      return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
    };
    double delta_n = inf;
    std::pair<std::size_t, std::size_t> best{0, 0};
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (!same_deriv(deriv[order[i]], deriv[order[i - 1]])) continue;
      double gap = std::abs(offset[order[i]] - offset[order[i - 1]]);
      if (gap < delta_n) {
        delta_n = gap;
        best = {order[i - 1], order[i]};
      }
    }
    out.delta.push_back(delta_n);
    if (!out.found && delta_n <= 1e-12) {
      out.found = true;
      out.level = n;
      out.word_a = word_from_index(best.first, n, m);
      out.word_b = word_from_index(best.second, n, m);
    }
  }
  return out;
}

ConditionReport build_condition_report(const TGLSystem& system, const ProbVector& p_star,
                                       int scan_depth) {
  ConditionReport rep;
  rep.pairs = overlap_pairs(system);
  rep.rosc = check_rosc(system);
  rep.columnwise_rosc = check_columnwise_rosc(system);
  rep.transversality = transversality_sufficient(system);
  rep.cond_main = check_cond_main(system, p_star);
  rep.cond_box = check_cond_box(system);
  if (system.diagonally_homogeneous) {
    bool has_multi = false;
    for (const Column& c : system.columns) {
      if (c.count > 1) has_multi = true;
    }
    if (has_multi) rep.x0 = diag_homo_threshold(system);
  }
  int max_depth = 0;
  double total = 1.0;
  while (max_depth < scan_depth && total * system.column_count() <= 1e6) {
    total *= system.column_count();
    ++max_depth;
  }
  if (max_depth >= 1) rep.exact_overlap = exact_overlap_scan(system, max_depth);
  return rep;
}

namespace {

json num12(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return json::parse(buf);
}

json pair_json(const IndexPair& p) {
  return json::array({p.first + 1, p.second + 1});  // 1-based in reports
}

json rosc_json(const RoscResult& r) {
  json j;
  j["status"] = to_string(r.status);
  if (r.witness) j["witness"] = pair_json(*r.witness);
  return j;
}

}  // namespace

std::string condition_report_to_json(const ConditionReport& rep) {
  json doc;
  doc["rosc"] = rosc_json(rep.rosc);
  doc["columnwise_rosc"] = rosc_json(rep.columnwise_rosc);
  json tv;
  tv["status"] = rep.transversality.holds ? "holds" : "inconclusive";
  tv["vacuous"] = rep.transversality.vacuous;
  tv["s_star"] = num12(rep.transversality.s_star);
  tv["r_star"] = num12(rep.transversality.r_star);
  tv["b_min"] = num12(rep.transversality.b_min);
  tv["margin"] = num12(rep.transversality.margin);
  doc["transversality_sufficient"] = tv;
  doc["cond_main"] = {{"holds", rep.cond_main.holds}, {"margin", num12(rep.cond_main.margin)}};
  doc["cond_box"] = {{"holds", rep.cond_box.holds}, {"margin", num12(rep.cond_box.margin)}};
  if (rep.x0) doc["x0"] = num12(*rep.x0);
  json scan;
  scan["found"] = rep.exact_overlap.found;
  if (rep.exact_overlap.found) {
    scan["level"] = rep.exact_overlap.level;
    json wa = json::array(), wb = json::array();
    for (int c : rep.exact_overlap.word_a) wa.push_back(c + 1);
    for (int c : rep.exact_overlap.word_b) wb.push_back(c + 1);
    scan["word_a"] = wa;
    scan["word_b"] = wb;
  }
  json deltas = json::array();
  for (double d : rep.exact_overlap.delta) deltas.push_back(num12(d));
  scan["delta"] = deltas;
  doc["exact_overlap"] = scan;
  json cols = json::array();
  for (const auto& column_pairs : rep.pairs) {
    json arr = json::array();
    for (const auto& p : column_pairs) arr.push_back(pair_json(p));
    cols.push_back(arr);
  }
  doc["overlap_pairs"] = cols;
  return doc.dump(2) + "\n";
}

}  // namespace carpet

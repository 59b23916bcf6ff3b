#include "carpet/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace carpet {

using nlohmann::json;

void check_prob_vector(const ProbVector& p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < 0.0) throw NumericError("BadProbVector", "negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw NumericError("BadProbVector", "entries sum to " + std::to_string(sum));
  }
}

ProbVector column_marginal(const TGLSystem& system, const ProbVector& p) {
  if (static_cast<int>(p.size()) != system.map_count()) {
    throw NumericError("LengthMismatch", "probability vector length differs from map count");
  }
  ProbVector q(system.column_count(), 0.0);
  for (int i = 0; i < system.map_count(); ++i) q[system.column_of[i]] += p[i];
  return q;
}

namespace {

void require_positive(const ProbVector& p) {
  for (double x : p) {
    if (!(x > 0.0)) throw NumericError("ZeroEntry", "probability vector must be strictly positive");
  }
}

struct LogMoments {
  double lp;  // sum p log p        = log<p>_p
  double lq;  // sum q log q        = log<q>_q
  double lb;  // sum p log|b|       = log<b>_p
  double la;  // sum p log|a|       = log<a>_p
};

LogMoments log_moments(const TGLSystem& system, const ProbVector& p) {
  LogMoments m{0.0, 0.0, 0.0, 0.0};
  ProbVector q = column_marginal(system, p);
  for (int i = 0; i < system.map_count(); ++i) {
    m.lp += p[i] * std::log(p[i]);
    m.lb += p[i] * std::log(std::abs(system.maps[i].b));
    m.la += p[i] * std::log(std::abs(system.maps[i].a));
  }
  for (double qi : q) m.lq += qi * std::log(qi);
  return m;
}

}  // namespace

EntropyLyapunov entropy_and_lyapunov(const TGLSystem& system, const ProbVector& p) {
  require_positive(p);
  LogMoments m = log_moments(system, p);
  return {-m.lp, -m.lb, -m.la};
}

double dim_formula_D(const TGLSystem& system, const ProbVector& p) {
  require_positive(p);
  LogMoments m = log_moments(system, p);
  return m.lq / m.lb + (m.lp - m.lq) / m.la;
}

ProbVector dim_formula_D_gradient(const TGLSystem& system, const ProbVector& p) {
  require_positive(p);
  LogMoments m = log_moments(system, p);
  ProbVector q = column_marginal(system, p);
  ProbVector g(p.size());
  for (int i = 0; i < system.map_count(); ++i) {
    double dU = 1.0 + std::log(p[i]);
    double dQ = 1.0 + std::log(q[system.column_of[i]]);
    double dB = std::log(std::abs(system.maps[i].b));
    double dA = std::log(std::abs(system.maps[i].a));
    g[i] = (dQ * m.lb - m.lq * dB) / (m.lb * m.lb) +
           ((dU - dQ) * m.la - (m.lp - m.lq) * dA) / (m.la * m.la);
  }
  return g;
}

double similarity_dimension(std::span<const double> ratios, const RootConfig& cfg) {
  if (ratios.empty()) throw NumericError("EmptyInput", "no contraction ratios");
  for (double r : ratios) {
    if (!(r > 0.0) || !(r < 1.0)) {
      throw NumericError("RatioOutOfRange", "ratios must lie in (0, 1)");
    }
  }
  auto f = [&](double s) {
    double sum = 0.0;
    for (double r : ratios) sum += std::pow(r, s);
    return sum - 1.0;
  };
  if (ratios.size() == 1) return 0.0;  // single ratio: r^0 = 1
  double hi = 2.0;
  while (f(hi) > 0.0 && hi < 1e6) hi *= 2.0;
  return solve_monotone(f, 0.0, hi, cfg);
}

namespace {

double solve_decreasing(const std::function<double(double)>& f, double lo, const RootConfig& cfg = {}) {
  double hi = std::max(2.0, lo + 1.0);
  while (f(hi) > 0.0 && hi < 1e6) hi *= 2.0;
  return solve_monotone(f, lo, hi, cfg);
}

}  // namespace

double affinity_dimension(const TGLSystem& system) {
  std::vector<double> widths;
  for (const AffineMap2& m : system.maps) widths.push_back(std::abs(m.b));
  double s_tilde_x = similarity_dimension(widths);
  if (s_tilde_x < 1.0) return s_tilde_x;
  auto f = [&](double s) {
    double sum = 0.0;
    for (const AffineMap2& m : system.maps) {
      sum += std::abs(m.b) * std::pow(std::abs(m.a), s - 1.0);
    }
    return sum - 1.0;
  };
  return solve_decreasing(f, 0.0);
}

BoxDimension box_dimension_upper(const TGLSystem& system) {
  BoxDimension out;
  std::vector<double> ratios;
  for (const Column& c : system.columns) ratios.push_back(std::abs(c.width));
  out.s_H = similarity_dimension(ratios);
  if (system.cls == SystemClass::kShiftedTGL) {
    out.assumption = "s_H reported as the column similarity dimension s_x; assumes no dimension drop of H";
  }
  double s_h = out.s_H;
  auto f = [&](double s) {
    double sum = 0.0;
    for (const AffineMap2& m : system.maps) {
      sum += std::pow(std::abs(m.b), s_h) * std::pow(std::abs(m.a), s - s_h);
    }
    return sum - 1.0;
  };
  out.s = solve_decreasing(f, 0.0);
  return out;
}

ProbVector diag_homo_p_star(const TGLSystem& system) {
  if (!system.diagonally_homogeneous) {
    throw NumericError("NotDiagHomo", "closed-form p* requires a diagonally homogeneous system");
  }
  double x = std::log(std::abs(system.maps[0].b)) / std::log(std::abs(system.maps[0].a));
  double denom = 0.0;
  for (const Column& c : system.columns) denom += std::pow(static_cast<double>(c.count), x);
  ProbVector p(system.map_count());
  for (int i = 0; i < system.map_count(); ++i) {
    double n_col = static_cast<double>(system.columns[system.column_of[i]].count);
    p[i] = std::pow(n_col, x - 1.0) / denom;
  }
  return p;
}

double diag_homo_alpha_star(const TGLSystem& system) {
  if (!system.diagonally_homogeneous) {
    throw NumericError("NotDiagHomo", "closed form requires a diagonally homogeneous system");
  }
  double b = std::abs(system.maps[0].b);
  double a = std::abs(system.maps[0].a);
  double x = std::log(b) / std::log(a);
  double sum = 0.0;
  for (const Column& c : system.columns) sum += std::pow(static_cast<double>(c.count), x);
  return std::log(sum) / (-std::log(b));
}

HausdorffUpper hausdorff_dimension_upper(const TGLSystem& system, const SimplexOptConfig& cfg) {
  HausdorffUpper out;
  if (system.diagonally_homogeneous) {
    out.p_star = diag_homo_p_star(system);
    out.alpha_star = diag_homo_alpha_star(system);
    return out;
  }
  auto g = [&](const ProbVector& p) { return dim_formula_D(system, p); };
  auto gr = [&](const ProbVector& p) { return dim_formula_D_gradient(system, p); };

  std::vector<ProbVector> warm;
  warm.push_back(natural_box_weights(system).p_tilde);
  {
    // diagonally homogeneous-style guess with the average exponent
    double num = 0.0, den = 0.0;
    for (const AffineMap2& m : system.maps) {
      num += std::log(std::abs(m.b));
      den += std::log(std::abs(m.a));
    }
    double x = num / den;
    ProbVector p(system.map_count());
    double norm = 0.0;
    for (int i = 0; i < system.map_count(); ++i) {
      double n_col = static_cast<double>(system.columns[system.column_of[i]].count);
      p[i] = std::pow(n_col, x - 1.0);
      norm += p[i];
    }
    for (double& v : p) v /= norm;
    warm.push_back(p);
  }

  SimplexResult res;
  try {
    res = maximize_simplex(g, system.map_count(), cfg, warm, gr);
  } catch (const NumericError& e) {
    if (std::string(e.kind()) == "NonFinite") {
      throw NumericError("OptimizerFailure", "D(p) not finite at any start");
    }
    throw;
  }
  out.alpha_star = res.value;
  out.p_star = std::move(res.argmax);
  return out;
}

NaturalWeights natural_box_weights(const TGLSystem& system) {
  BoxDimension box = box_dimension_upper(system);
  NaturalWeights w;
  w.p_tilde.resize(system.map_count());
  double sum = 0.0;
  for (int i = 0; i < system.map_count(); ++i) {
    w.p_tilde[i] = std::pow(std::abs(system.maps[i].b), box.s_H) *
                   std::pow(std::abs(system.maps[i].a), box.s - box.s_H);
    sum += w.p_tilde[i];
  }
  // the root solve leaves a residual of order abs_tol; normalize it away
  for (double& v : w.p_tilde) v /= sum;
  w.q_tilde = column_marginal(system, w.p_tilde);
  return w;
}

std::string to_string(Equality e) {
  switch (e) {
    case Equality::kEqual: return "equal";
    case Equality::kStrict: return "strict";
    default: return "unknown";
  }
}

DimensionReport dimension_report(const TGLSystem& system, const SimplexOptConfig& cfg) {
  DimensionReport r;
  BoxDimension box = box_dimension_upper(system);
  r.s = box.s;
  r.s_H = box.s_H;
  r.s_x = box.s_H;  // identical number; for shifted systems only an upper bound for dim_B of H
  if (!box.assumption.empty()) r.assumptions.push_back(box.assumption);

  std::vector<double> widths;
  for (const AffineMap2& m : system.maps) widths.push_back(std::abs(m.b));
  r.s_tilde_x = similarity_dimension(widths);
  r.s_A = affinity_dimension(system);

  HausdorffUpper hd = hausdorff_dimension_upper(system, cfg);
  r.alpha_star = hd.alpha_star;
  r.p_star = hd.p_star;
  EntropyLyapunov el = entropy_and_lyapunov(system, r.p_star);
  r.h = el.h;
  r.chi1 = el.chi1;
  r.chi2 = el.chi2;

  // uniform-fibre criterion: sum over each column of |a_j|^(s - s_H) = 1
  bool fibres_uniform = true;
  for (const Column& c : system.columns) {
    double sum = 0.0;
    for (int j = c.first; j < c.first + c.count; ++j) {
      sum += std::pow(std::abs(system.maps[j].a), r.s - r.s_H);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      fibres_uniform = false;
      break;
    }
  }
  r.equal_HB = fibres_uniform ? Equality::kEqual : Equality::kStrict;
  r.equal_B_Aff =
      std::abs(r.s_H - std::min(r.s_tilde_x, 1.0)) <= 1e-9 ? Equality::kEqual : Equality::kStrict;
  r.assumptions.push_back("equal_HB evaluated under ROSC and no-dimension-drop hypotheses");
  return r;
}

void apply_separation_evidence(DimensionReport& report, bool rosc_established, bool scan_clean,
                               bool exact_overlap_found) {
  if (exact_overlap_found) {
    report.assumptions.push_back("exact overlap found in the column IFS: s_H value unreliable");
    report.equal_HB = Equality::kUnknown;
    report.equal_B_Aff = Equality::kUnknown;
    return;
  }
  if (!rosc_established || !scan_clean) {
    report.equal_HB = Equality::kUnknown;
    if (!rosc_established) {
      report.assumptions.push_back("ROSC not established: equal_HB undetermined");
    }
    if (!scan_clean) {
      report.assumptions.push_back("exact-overlap scan not run or inconclusive");
    }
  }
}

namespace {

json num12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return json::parse(buf);
}

json vec12(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(num12(x));
  return arr;
}

}  // namespace

std::string dimension_report_to_json(const DimensionReport& r) {
  json doc;
  doc["alpha_star"] = num12(r.alpha_star);
  doc["p_star"] = vec12(r.p_star);
  doc["s"] = num12(r.s);
  doc["s_A"] = num12(r.s_A);
  doc["s_H"] = num12(r.s_H);
  doc["s_x"] = num12(r.s_x);
  doc["s_tilde_x"] = num12(r.s_tilde_x);
  doc["h"] = num12(r.h);
  doc["chi1"] = num12(r.chi1);
  doc["chi2"] = num12(r.chi2);
  doc["equal_HB"] = to_string(r.equal_HB);
  doc["equal_B_Aff"] = to_string(r.equal_B_Aff);
  doc["assumptions"] = r.assumptions;
  return doc.dump(2) + "\n";
}

}  // namespace carpet

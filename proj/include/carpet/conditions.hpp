#ifndef CARPET_CONDITIONS_HPP
#define CARPET_CONDITIONS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carpet/dimension.hpp"
#include "carpet/ifs.hpp"

namespace carpet {

enum class CheckStatus { kHolds, kFails, kUnknown };

std::string to_string(CheckStatus s);

using IndexPair = std::pair<int, int>;

// Per-column sets of map-index pairs whose level-1 parallelograms have
// intersecting interiors (separating-axis test; boundary contact excluded).
std::vector<std::vector<IndexPair>> overlap_pairs(const TGLSystem& system);

struct TransversalityCheck {
  bool vacuous = false;        // every column free of interior intersections
  bool holds = false;          // criterion satisfied (or vacuous)
  double s_star = 0.0;         // min |d_k/b_k - d_l/b_l| over intersecting pairs
  double r_star = 0.0;         // max |a_k/b_k|
  double b_min = 0.0;          // min |b_k|
  double margin = 0.0;         // s* b_min / (2 + s* b_min) - r*

  CheckStatus status() const { return holds ? CheckStatus::kHolds : CheckStatus::kUnknown; }
};

// Sufficient criterion only: failure is reported as "inconclusive", never as
// "transversality fails".
TransversalityCheck transversality_sufficient(const TGLSystem& system);

struct CondCheck {
  bool holds = false;
  double margin = 0.0;  // positive iff the inequality holds
};

// log<a>_p / log<b>_p > 1 + log<N>_q / (-log<q>_q); margin = lhs - rhs.
CondCheck check_cond_main(const TGLSystem& system, const ProbVector& p);

// -log<p~>_p~ + log<q~>_q~ < s_H (log<b>_p~ - log<a>_p~); margin = rhs - lhs.
CondCheck check_cond_box(const TGLSystem& system);

// Unique x0 in (0,1) with R(x0) = 1, where R(x) = x + (r(x)-1)^(-1),
// r(x) = phi(sum N^x) / sum phi(N^x), phi(y) = y log y. The main inequality then
// holds at the closed-form p* iff log b / log a < x0.
// Throws NotDiagHomo / AllColumnsSingleton.
double diag_homo_threshold(const TGLSystem& system);

struct RoscResult {
  CheckStatus status = CheckStatus::kUnknown;
  std::optional<IndexPair> witness;  // first violating pair
};

RoscResult check_rosc(const TGLSystem& system);
RoscResult check_columnwise_rosc(const TGLSystem& system);

// Raw-geometry variant used for map families that do not form a validated
// system (only the parallelogram images matter for this check).
RoscResult check_rosc_maps(const std::vector<AffineMap2>& maps);

struct OverlapScan {
  bool found = false;
  int level = 0;                        // level of the first exact overlap
  std::vector<int> word_a, word_b;      // witnessing column words (0-based)
  std::vector<double> delta;            // Delta_n for n = 1..n_max (inf if no equal derivatives)
};

// Delta_n scan of the column IFS H = { r x + u }. Guard: M^n_max <= 10^6.
OverlapScan exact_overlap_scan(const TGLSystem& system, int n_max);

struct ConditionReport {
  RoscResult rosc;
  RoscResult columnwise_rosc;
  TransversalityCheck transversality;
  CondCheck cond_main;       // evaluated at p*
  CondCheck cond_box;
  std::optional<double> x0;  // diagonally homogeneous systems with a multi-map column
  OverlapScan exact_overlap;
  std::vector<std::vector<IndexPair>> pairs;
};

ConditionReport build_condition_report(const TGLSystem& system, const ProbVector& p_star,
                                       int scan_depth);

std::string condition_report_to_json(const ConditionReport& report);

}  // namespace carpet

#endif  // CARPET_CONDITIONS_HPP

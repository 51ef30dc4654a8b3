#pragma once

// Almost-good-reduction engine. A reduced singular point is lifted to
// (s + eps, y0), the map is iterated over Q(eps), and the first iterate whose
// eps -> 0 limit exists and is p-integral in both coordinates is the
// confinement length m. The reduced limit is the confined image.

#include <optional>
#include <vector>

#include "dp2ff/epsfield.hpp"
#include "dp2ff/maps.hpp"

namespace dp2ff {

enum class ConfinementStatus { kConfined, kNotConfined, kDegreeOverflow };

const char* to_string(ConfinementStatus status);

struct SingularLift {
  Rational s;   // exact lift of the singular coordinate
  Rational y0;  // exact lift of the companion coordinate
  long n0 = 0;  // starting time step
  /// Perturb y along the same eps (y = y0 + eps); used for double singularities.
  bool shared_eps = false;
};

struct ConfineOptions {
  int max_steps = 30;
  long degree_bound = 64;
  /// A pole deeper than this (max over the state of -ord0) counts as
  /// divergence and ends the run as NOT_CONFINED.
  long divergence_depth = 8;
};

struct ConfinementReport {
  ConfinementStatus status = ConfinementStatus::kNotConfined;
  int m = 0;
  FpProj image_x = FpProj::infinity();
  FpProj image_y = FpProj::infinity();
  /// ord0 of the x-coordinate after each step.
  std::vector<Valuation> pole_orders;
  /// Reduced x-coordinate after each step (inf for poles or negative valuation).
  std::vector<FpProj> trajectory;
  /// dP-II only: the exact coefficients used at times n0, n0+1, ...
  std::vector<Rational> alphas;
  std::vector<Rational> betas;
  /// dP-II only: two residue zeros of one coefficient inside the window could
  /// not both be made exact.
  bool lift_conflict = false;

  bool confined() const { return status == ConfinementStatus::kConfined; }
};

ConfinementReport confine(const MapFamily& map, const SingularLift& lift,
                          const ConfineOptions& options = {});

/// dP-II at x~ = singular_value (+1 or -1), time n, companion y0.
ConfinementReport confine_dp2_case(const DP2Params& params, int singular_value, long n,
                                   const Rational& y0, const ConfineOptions& options = {});

/// Re-runs a confined report with eps := c*p^k for c, k in {1,2,3} over exact
/// rationals and counts the samples whose reduction matches the image.
struct SamplingCheck {
  int samples = 0;
  int agreeing = 0;
  bool ok() const { return samples > 0 && samples == agreeing; }
};

SamplingCheck verify_by_sampling(const MapFamily& map, const SingularLift& lift,
                                 const ConfinementReport& report);

struct ScanEntry {
  FpProj point = FpProj::infinity();  // reduced singular x-coordinate
  long y_residue = 0;
  long n = 0;
  SingularLift lift;
  ConfinementReport report;
  bool sampling_checked = false;
  bool sampling_agrees = false;
};

struct ScanOptions {
  ConfineOptions confine;
  long max_prime = 101;
  bool verify_sampling = true;
};

struct ScanResult {
  std::vector<ScanEntry> entries;  // ordered by (point, y_residue, n)
  bool all_confined = false;
  bool closed_forms_consistent = false;
  bool sampling_consistent = false;

  bool has_almost_good_reduction() const {
    return all_confined && closed_forms_consistent && sampling_consistent;
  }
  /// AGR_AMBIGUOUS: a confined entry whose sampled limits disagree.
  bool ambiguous(const ScanEntry& e) const {
    return e.report.confined() && e.sampling_checked && !e.sampling_agrees;
  }
};

/// The singular lifts the scan visits, in output order.
std::vector<ScanEntry> scan_plan(const MapFamily& map);

/// OpenMP-parallel over scan entries.
ScanResult agr_scan(const MapFamily& map, const ScanOptions& options = {});
/// Reference implementation; same output as agr_scan.
ScanResult agr_scan_serial(const MapFamily& map, const ScanOptions& options = {});

/// True when the points (y_i, v_i) of P^1(F_p) lie on one map of degree <= 1
/// (a constant or a Moebius transformation).
bool fits_degree_one(const std::vector<std::pair<long, FpProj>>& points, Prime p);

}  // namespace dp2ff

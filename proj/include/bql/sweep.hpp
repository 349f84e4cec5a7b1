#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bql/config.hpp"
#include "bql/fit.hpp"

namespace bql {

// A fully specified sweep: a registered experiment, its constants, and the
// parameter grid (outer product of the axes, last axis fastest).
struct SweepPlan {
  std::string experiment;
  std::map<std::string, double> scalars;
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axis_values;
  double tolerance = 0.1;
  int jobs = 1;

  double scalar(const std::string& key, double fallback) const;
  double required_scalar(const std::string& key) const;
  void validate() const;
};

// One grid cell's outcome; failures are recorded, never thrown out of the
// sweep.
struct CellOutcome {
  SweepPoint point;
  bool ok = false;
  std::string error;
};

struct Verdict {
  std::string experiment;
  double p = 0.0;
  std::string slope_name;
  double empirical = 0.0;
  double predicted = 0.0;
  double gap = 0.0;
  bool pass = false;
};

struct ExperimentInfo {
  std::string id;
  std::vector<std::string> axes;        // grid axis names, in grid order
  std::vector<std::string> regressors;  // names fitted against
  std::vector<std::string> columns;     // CSV parameter columns, in order
};

const std::vector<std::string>& experiment_ids();
ExperimentInfo experiment_info(const std::string& id);  // throws on unknown id

// Evaluates every admissible grid cell (constraints like sigma <= h or
// mu >= lambda drop cells, preserving grid order). Deterministic: the same
// plan yields bit-identical values regardless of plan.jobs.
std::vector<CellOutcome> run_sweep(const SweepPlan& plan);

// Worst-case single-cell footprint and the admissible cell count, printed
// before a sweep runs.
struct ResourceEstimate {
  std::size_t cells = 0;
  std::size_t nodes = 0;  // largest grid/quadrature node count touched
  std::size_t bytes = 0;  // rough peak bytes for one cell
};
ResourceEstimate estimate_resources(const SweepPlan& plan);

// Sharp exponents the experiment is expected to realize, keyed by regressor
// (h/sigma slopes for flat plans, lambda/mu exponents for sphere plans).
std::map<std::string, double> predicted_slopes(const SweepPlan& plan);

// Log-log fit following the experiment's protocol: plain regression on the
// registered regressors; the ensemble plan divides the realized-mu
// prediction out of each value and fits lambda alone; plans whose law
// carries a |log h| factor divide it out before fitting.
ScalingFit fit_sweep(const SweepPlan& plan, const std::vector<CellOutcome>& cells);

// One verdict per predicted slope. Orientation is fixed by name, once: for
// h/sigma the sharp direction is empirical <= predicted + tolerance, for
// lambda/mu it is empirical >= predicted - tolerance; pass additionally
// requires |gap| <= tolerance.
std::vector<Verdict> compare_to_theory(const std::string& experiment, double p,
                                       const ScalingFit& fit,
                                       const std::map<std::string, double>& predicted,
                                       double tolerance);

// Reads the experiment's grid and constants from config keys (axis names as
// list keys, constants by name), with defaults matching config/defaults.cfg.
SweepPlan plan_from_config(const Config& cfg, const std::string& experiment_id);

// CSV with a sorted config echo header; rows in grid order (ok cells only).
std::string sweep_csv(const SweepPlan& plan, const std::vector<CellOutcome>& cells,
                      const Config& effective);

// JSON report: config echo, fit summary, per-cell errors, verdict records.
std::string sweep_json(const SweepPlan& plan, const std::vector<CellOutcome>& cells,
                       const ScalingFit& fit, const std::vector<Verdict>& verdicts,
                       const Config& effective);

}  // namespace bql

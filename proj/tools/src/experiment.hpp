#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace timm::tools {

// n as an affine function of k: "240", "30k", or "118k+1".
struct NRule {
  int coeff = 0;
  int offset = 0;

  int apply(int k) const { return coeff * k + offset; }
  std::string text() const;
  static NRule parse(const std::string& raw);  // throws std::invalid_argument
};

// Inclusive k interval: "4" or "3..6".
struct KRange {
  int lo = 1;
  int hi = 1;

  std::string text() const;
  static KRange parse(const std::string& raw);  // throws std::invalid_argument
};

struct ExperimentPlan {
  std::string task;  // tt | kd | oracle
  std::string generator = "random";
  KRange k_range;
  NRule n_rule;
  std::vector<std::uint64_t> seeds;  // one trial per seed for tt/kd
  std::string mode = "adaptive";     // tt sampling mode
  int threshold_c = 59;              // kd
  bool best_effort = false;          // kd
  std::uint64_t budget = 10'000'000;  // oracle node budget
  int workers = 1;
  std::string cert_dir;  // empty: certificates not materialized
};

struct ExperimentRow {
  std::string task;
  int k = 0;
  int n = 0;
  std::string generator;
  std::string params;
  std::uint64_t seed = 0;
  int trial = 0;
  std::string mode;
  std::string outcome;  // success | failure | infeasible | unknown | error
  std::string detail;
  std::string certificate;
  long long wall_ms = 0;
};

// Rows in job order (k ascending, then trial), regardless of which worker
// finished first. Per-row errors land in the row, never abort the batch.
std::vector<ExperimentRow> run_experiment(const ExperimentPlan& plan);

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

// Aggregate per (k, n) cell, plus f-bound values for the oracle task.
std::string summary_json(const ExperimentPlan& plan,
                         const std::vector<ExperimentRow>& rows);

}  // namespace timm::tools

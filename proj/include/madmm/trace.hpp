#pragma once

#include <chrono>
#include <limits>
#include <vector>

namespace madmm {

struct TraceRow {
  int iter = 0;
  double objective = 0.0;
  double primal_residual = 0.0;
  double augmented_cost = 0.0;
  double seconds = 0.0;
};

// One row per outer iteration, row 0 being the initial point. The schema is
// shared by the splitting driver and the baselines so convergence curves can
// be overlaid directly.
struct ConvergenceTrace {
  std::vector<TraceRow> rows;

  double final_objective() const {
    return rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                        : rows.back().objective;
  }
};

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace madmm

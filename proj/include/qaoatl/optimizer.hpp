#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qaoatl/ising.hpp"
#include "qaoatl/simulator.hpp"

namespace qaoatl {

/// Annealing-style initial angles for p layers with ramp height delta:
///   f_k = (k + 0.5) / p,  gamma_k = delta * f_k,  beta_k = delta * (1 - f_k),
/// so gammas rise, betas fall, and gamma_k + beta_k = delta for every k.
QaoaParams linear_ramp(std::size_t p, double delta = 0.7);

struct OptimizerConfig {
  /// Hard budget of objective (circuit) evaluations; must be >= 1.  The
  /// conventional budget for this workload is 20 * n_qubits * p.
  std::size_t max_evals = 1000;
  /// Edge length of the initial simplex around the start point, radians.
  double initial_step = 0.05;
  /// Terminate early once the simplex's objective spread falls below this.
  double tolerance = 1e-8;
};

/// One objective evaluation, in call order.
struct TracePoint {
  std::size_t eval_index = 0;  // 0-based
  QaoaParams params;
  double expectation = 0.0;
};

struct OptimizeResult {
  QaoaParams best_params;
  double best_expectation = 0.0;
  std::size_t n_evals = 0;
  std::vector<TracePoint> trace;
};

/// Derivative-free minimization of the QAOA energy <H> over the 2p angles
/// with a budget-bounded Nelder-Mead simplex.  Deterministic: the same
/// model, start point, and config reproduce the trace exactly.  The
/// returned best is the lowest evaluation seen (ties keep the earliest).
OptimizeResult optimize(const IsingModel& model, const QaoaParams& init, const OptimizerConfig& config);

/// CSV trace: header "eval_index,expectation,gamma_0..,beta_0..", one row
/// per evaluation, doubles printed exactly.
void write_trace_csv(std::ostream& out, const OptimizeResult& result);

}  // namespace qaoatl

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qaoatl/encoding.hpp"
#include "qaoatl/ising.hpp"
#include "qaoatl/oracle.hpp"
#include "qaoatl/problems.hpp"
#include "qaoatl/simulator.hpp"

namespace qaoatl {

/// Success probability of unstructured (Grover-like) search, 2^(-n/2):
/// the bar a transferred parameter set has to clear to be interesting.
double grover_baseline(std::size_t n_qubits);

/// Outcome of evaluating one (parameters, model) pair.
struct TlMetrics {
  double prob_optimal = 0.0;  // total mass on the model's ground states
  double expectation = 0.0;
  double grover = 0.0;
  std::size_t n_qubits = 0;
  double ground_energy = 0.0;
  std::size_t n_ground_states = 0;
};

/// Evaluates fixed parameters on a model whose ground truth is already
/// known (no optimization happens here).
TlMetrics transfer_run(const QaoaParams& params, const IsingModel& model, const GroundTruth& truth);

/// Convenience overload that brute-forces the model itself.
TlMetrics transfer_run(const QaoaParams& params, const IsingModel& model);

/// Where a bank entry's angles came from.
struct BankProvenance {
  std::string problem;  // source problem kind, e.g. "bpp"
  std::size_t size = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;       // linear-ramp height used for the init
  std::size_t budget = 0;   // optimizer evaluations spent (0 = unoptimized ramp)
  double best_expectation = 0.0;
};

struct BankEntry {
  QaoaParams params;
  BankProvenance provenance;
};

/// Named collection of reusable angle sets with JSON persistence.
class ParameterBank {
 public:
  void put(const std::string& label, BankEntry entry);
  bool contains(const std::string& label) const;
  const BankEntry& get(const std::string& label) const;
  const std::map<std::string, BankEntry>& entries() const { return entries_; }

  std::string to_json_string(int indent = 2) const;
  static ParameterBank from_json_string(const std::string& text);

 private:
  std::map<std::string, BankEntry> entries_;
};

/// Statistics of one (problem kind, size) group in a sweep.  seeds/probs
/// hold the per-instance results in input order; targets that failed
/// (e.g. too many qubits to simulate) land in errors instead and are
/// excluded from the statistics.  Quartiles use linear interpolation on
/// the sorted sample; a group with no successful run reports NaN stats.
struct SweepCell {
  ProblemKind kind = ProblemKind::Kp;
  std::size_t size = 0;
  std::size_t n_qubits = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> probs;
  std::vector<std::string> errors;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double grover = 0.0;
};

struct SweepReport {
  std::string source_label;  // bank entry the angles came from
  std::vector<SweepCell> cells;
};

/// Runs fixed angles across many instances: each target is encoded with
/// its kind's penalties (given or default), converted to a normalized
/// Ising model, brute-forced for ground truth, and evaluated with
/// transfer_run.  Results group into one cell per (kind, size), ordered
/// by kind then size.  Per-target failures are recorded and do not abort
/// the sweep.
SweepReport sweep(const std::string& source_label, const QaoaParams& params,
                  const std::vector<ProblemInstance>& targets,
                  const std::map<ProblemKind, PenaltyConfig>& penalties = {});

/// Rows "size,mean,median,q1,q3,grover" for one problem kind.
void write_sweep_csv(std::ostream& out, const SweepReport& report, ProblemKind kind);

/// Kinds present in a report, in cell order.
std::vector<ProblemKind> kinds_in(const SweepReport& report);

std::string to_json_string(const SweepReport& report, int indent = 2);

}  // namespace qaoatl

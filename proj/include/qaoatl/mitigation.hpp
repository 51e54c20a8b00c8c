#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qaoatl/ising.hpp"
#include "qaoatl/simulator.hpp"

namespace qaoatl {

struct MitigationReport {
  double raw_optimal_fraction = 0.0;        // shots already on a ground state
  double mitigated_optimal_fraction = 0.0;  // same, after mitigation
  /// Shots whose raw bitstring is a ground state or one bit flip away from
  /// one — an upper bound on what single-flip mitigation can recover.
  double raw_within_distance1_fraction = 0.0;
  std::size_t moved_samples = 0;  // shots whose bitstring changed
};

/// Single-bit-flip error mitigation: every sample is replaced by the
/// lowest-energy assignment among itself and its n Hamming-distance-1
/// neighbors under the model.  A sample moves only on a strict energy
/// decrease; among equally good improving flips the lowest variable index
/// wins, so the result is deterministic.  ground_states (the model's
/// brute-force optima) parameterizes the report's fractions.
std::pair<SampleSet, MitigationReport> mitigate(const SampleSet& samples, const IsingModel& model,
                                                const std::vector<std::string>& ground_states);

}  // namespace qaoatl

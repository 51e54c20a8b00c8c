#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaoatl/ising.hpp"
#include "qaoatl/simulator.hpp"

namespace qaoatl {

/// Exhaustive-enumeration result.  ground_states holds every bitstring
/// whose energy is within the degeneracy tolerance of the minimum, sorted
/// lexicographically.  The histogram (energies rounded to the tolerance
/// grid -> state counts) is filled only on request.
struct GroundTruth {
  double ground_energy = 0.0;
  std::vector<std::string> ground_states;
  std::optional<std::map<double, std::size_t>> energy_histogram;
};

/// Degeneracy tolerance used by brute_force.
inline constexpr double kDegeneracyTol = 1e-9;

/// Maximum qubit count brute_force accepts.
inline constexpr std::size_t kMaxBruteForceQubits = 26;

/// Exact minimum of the model over all 2^n spin assignments by Gray-code
/// enumeration (each step updates the energy from a single spin flip).
/// Shares no code with the simulator.
GroundTruth brute_force(const IsingModel& model, bool with_histogram = false);

/// Maximum qubit count dense_reference accepts.
inline constexpr std::size_t kMaxDenseReferenceQubits = 8;

/// Reference QAOA state built the expensive way: per layer, multiply the
/// state by the dense matrix exponentials exp(-i gamma H_c) and
/// exp(+i beta sum X) computed by scaling-and-squaring.  Mathematically
/// the same circuit as Evolver::evolve (same phase conventions, offset
/// excluded from H_c) with an entirely independent implementation, for
/// cross-validation.
StateVector dense_reference(const IsingModel& model, const QaoaParams& params);

/// |<a|b>|^2 of two equal-size states.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qaoatl

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qaoatl/errors.hpp"
#include "qaoatl/ising.hpp"

namespace qaoatl {

/// QAOA angles for p layers: layer k applies the cost phase with gammas[k]
/// and then the mixer with betas[k].  Both vectors must have the same
/// nonzero length.
struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t p() const { return gammas.size(); }
  void validate() const;
};

/// Dense n-qubit state, amplitudes indexed by basis-state index
/// (x_0 = least-significant bit).
struct StateVector {
  std::size_t n_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  double norm() const;
};

/// Measurement counts keyed by bitstring (leftmost character = x_0).
struct SampleSet {
  std::size_t n_qubits = 0;
  std::map<std::string, std::size_t> counts;

  std::size_t total_shots() const;
};

/// Exact state-vector QAOA simulator for one Ising cost model.
///
/// Phase conventions: the cost layer applies exp(-i gamma E(z)) with E the
/// offset-free Ising diagonal; the mixer applies exp(+i beta X) on every
/// qubit, i.e. the mixer Hamiltonian is -sum X, whose ground state is the
/// |+...+> start state.  With this pairing an increasing-gamma /
/// decreasing-beta ramp is a discretized anneal from the mixer ground
/// state toward low-energy states of the cost model.
///
/// The diagonal is precomputed once at construction, so repeated evolve()
/// calls (an optimizer loop) pay only the per-call layer cost.  Supports
/// up to 24 qubits.
class Evolver {
 public:
  explicit Evolver(const IsingModel& model);

  std::size_t n_qubits() const { return n_; }
  const std::vector<double>& diagonal() const { return diag_; }

  /// Applies p QAOA layers to |+...+>.
  StateVector evolve(const QaoaParams& params) const;

  /// <state| H |state> including the model offset.
  double expectation(const StateVector& state) const;

 private:
  std::size_t n_;
  double offset_;
  std::vector<double> diag_;
};

/// Maximum qubit count the dense simulator accepts.
inline constexpr std::size_t kMaxSimQubits = 24;

/// One-shot forms; prefer an Evolver when calling repeatedly on one model.
StateVector evolve(const IsingModel& model, const QaoaParams& params);
double expectation(const StateVector& state, const IsingModel& model);

/// Total probability mass on the given bitstrings (each counted once;
/// duplicates are an InputError).
double probability_of(const StateVector& state, const std::vector<std::string>& bitstrings);

/// Multinomial measurement of `shots` shots, reproducible from the seed.
SampleSet sample(const StateVector& state, std::size_t shots, std::uint64_t seed);

}  // namespace qaoatl

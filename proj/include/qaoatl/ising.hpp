#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qaoatl/bitops.hpp"
#include "qaoatl/encoding.hpp"
#include "qaoatl/errors.hpp"

namespace qaoatl {

/// One two-body coupling Q_ij z_i z_j with i < j.
struct Coupling {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double value = 0.0;
};

/// Ising Hamiltonian
///   E(z) = sum_{i<j} Q_ij z_i z_j + sum_i h_i z_i + offset,   z in {+1,-1}^n,
/// with couplings stored sparsely in sorted (i, j) order, at most one entry
/// per pair.  norm_factor records the divisor applied by the most recent
/// normalize() (1 when none was applied); multiplying energies by it
/// recovers the pre-normalization scale.
class IsingModel {
 public:
  explicit IsingModel(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  const std::vector<double>& fields() const { return fields_; }
  double field(std::size_t i) const;
  /// Coupling value for a pair (0 when absent); order of i, j is free.
  double coupling(std::size_t i, std::size_t j) const;
  double offset() const { return offset_; }
  double norm_factor() const { return norm_factor_; }

  /// Largest coefficient magnitude, max over |Q_ij| and |h_i| (offset
  /// excluded); 0 for an identically zero model.
  double max_coefficient() const;

  void add_coupling(std::size_t i, std::size_t j, double value);
  void add_field(std::size_t i, double value);
  void set_offset(double value) { offset_ = value; }
  void set_norm_factor(double value);

 private:
  std::size_t n_;
  std::vector<Coupling> couplings_;
  std::vector<double> fields_;
  double offset_ = 0.0;
  double norm_factor_ = 1.0;
};

/// Exact change of variables x_i = (1 - z_i) / 2 (bit 1 -> spin -1):
/// energies agree with the QUBO on every assignment, and norm_factor is 1.
IsingModel qubo_to_ising(const Qubo& qubo);

/// Divides all couplings, fields, and the offset by max_coefficient(),
/// recording it as norm_factor.  An identically zero model is returned
/// unchanged with norm_factor 1.  Ground states are preserved.
IsingModel normalize(const IsingModel& model);

/// E(z) for the spin image of a bit assignment (z_i = 1 - 2 x_i).
double ising_energy(const IsingModel& model, const Assignment& x);

/// Energies of all 2^n basis states, indexed by basis-state index
/// (x_0 = least-significant bit), with the offset EXCLUDED — this is the
/// diagonal the cost phase exponentiates.  Requires n_qubits <= 26.
std::vector<double> cost_diagonal(const IsingModel& model);

/// Plain-text coordinate dump: comment header (n_qubits, offset,
/// norm_factor), then one "i j value" line per coupling and "i i value"
/// per nonzero field, in sorted order, doubles printed exactly.
void write_coordinate_format(std::ostream& out, const IsingModel& model);

}  // namespace qaoatl

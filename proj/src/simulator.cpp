#include "qaoatl/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "qaoatl/bitops.hpp"
#include "qaoatl/rng.hpp"

namespace qaoatl {

void QaoaParams::validate() const {
  if (gammas.empty()) throw RangeError("QaoaParams: needs at least one layer");
  if (gammas.size() != betas.size())
    throw DimensionError("QaoaParams: gammas has " + std::to_string(gammas.size()) +
                         " entries, betas has " + std::to_string(betas.size()));
  for (const double g : gammas)
    if (!std::isfinite(g)) throw RangeError("QaoaParams: non-finite gamma");
  for (const double b : betas)
    if (!std::isfinite(b)) throw RangeError("QaoaParams: non-finite beta");
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

std::size_t SampleSet::total_shots() const {
  std::size_t t = 0;
  for (const auto& [bits, count] : counts) t += count;
  return t;
}

Evolver::Evolver(const IsingModel& model) : n_(model.n_qubits()), offset_(model.offset()) {
  if (n_ > kMaxSimQubits)
    throw ResourceError("Evolver: " + std::to_string(n_) + " qubits exceeds the dense cap of " +
                        std::to_string(kMaxSimQubits));
  diag_ = cost_diagonal(model);
}

StateVector Evolver::evolve(const QaoaParams& params) const {
  params.validate();
  const std::size_t dim = std::size_t{1} << n_;
  StateVector state;
  state.n_qubits = n_;
  state.amplitudes.assign(dim, std::complex<double>(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  auto* amp = state.amplitudes.data();

  for (std::size_t layer = 0; layer < params.p(); ++layer) {
    const double gamma = params.gammas[layer];
    for (std::size_t k = 0; k < dim; ++k)
      amp[k] *= std::polar(1.0, -gamma * diag_[k]);

    const double c = std::cos(params.betas[layer]);
    const std::complex<double> is(0.0, std::sin(params.betas[layer]));
    for (std::size_t q = 0; q < n_; ++q) {
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
          const std::size_t k0 = base + off;
          const std::size_t k1 = k0 + stride;
          const std::complex<double> a0 = amp[k0];
          const std::complex<double> a1 = amp[k1];
          amp[k0] = c * a0 + is * a1;
          amp[k1] = is * a0 + c * a1;
        }
      }
    }
  }
  return state;
}

double Evolver::expectation(const StateVector& state) const {
  if (state.n_qubits != n_ || state.amplitudes.size() != diag_.size())
    throw DimensionError("Evolver::expectation: state does not match the model's qubit count");
  double e = 0.0;
  for (std::size_t k = 0; k < diag_.size(); ++k)
    e += std::norm(state.amplitudes[k]) * diag_[k];
  return e + offset_;
}

StateVector evolve(const IsingModel& model, const QaoaParams& params) {
  return Evolver(model).evolve(params);
}

double expectation(const StateVector& state, const IsingModel& model) {
  return Evolver(model).expectation(state);
}

double probability_of(const StateVector& state, const std::vector<std::string>& bitstrings) {
  std::vector<std::uint64_t> indices;
  indices.reserve(bitstrings.size());
  for (const auto& bits : bitstrings) {
    if (bits.size() != state.n_qubits)
      throw DimensionError("probability_of: bitstring '" + bits + "' does not match the qubit count");
    indices.push_back(index_of(assignment_from_bitstring(bits)));
  }
  std::vector<std::uint64_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("probability_of: duplicate bitstring in target set");
  double p = 0.0;
  for (const auto idx : indices) p += std::norm(state.amplitudes[idx]);
  return p;
}

SampleSet sample(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw RangeError("sample: shots must be positive");
  const std::size_t dim = state.amplitudes.size();
  std::vector<double> cumulative(dim);
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    acc += std::norm(state.amplitudes[k]);
    cumulative[k] = acc;
  }
  if (!(acc > 0.0)) throw NumericError("sample: state has zero norm");

  Rng rng(seed);
  std::map<std::uint64_t, std::size_t> counts_by_index;
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform_real01() * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cumulative.begin(), dim - 1);
    ++counts_by_index[idx];
  }

  SampleSet out;
  out.n_qubits = state.n_qubits;
  for (const auto& [idx, count] : counts_by_index)
    out.counts[bitstring_from_index(idx, state.n_qubits)] = count;
  return out;
}

}  // namespace qaoatl

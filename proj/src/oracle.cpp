#include "qaoatl/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>

#include "qaoatl/bitops.hpp"

namespace qaoatl {

namespace {

constexpr std::size_t kResyncInterval = 1u << 16;  // bounds Gray-walk float drift
constexpr std::size_t kMaxGroundStates = 1u << 22;

struct Neighbor {
  std::uint32_t qubit;
  double value;
};

/// Energy recomputed from scratch for the current spin vector.
double full_energy(const IsingModel& m, const std::vector<int>& z) {
  double e = m.offset();
  for (const auto& c : m.couplings()) e += c.value * z[c.i] * z[c.j];
  for (std::size_t i = 0; i < z.size(); ++i) e += m.field(i) * z[i];
  return e;
}

/// Walks all 2^n states in Gray-code order, invoking visit(index, energy).
template <typename Visit>
void gray_walk(const IsingModel& m, Visit&& visit) {
  const std::size_t n = m.n_qubits();
  const std::uint64_t count = std::uint64_t{1} << n;

  std::vector<std::vector<Neighbor>> adjacency(n);
  for (const auto& c : m.couplings()) {
    adjacency[c.i].push_back({c.j, c.value});
    adjacency[c.j].push_back({c.i, c.value});
  }

  std::vector<int> z(n, 1);  // index 0: all bits 0, all spins +1
  double energy = full_energy(m, z);
  std::uint64_t index = 0;
  visit(index, energy);

  for (std::uint64_t k = 1; k < count; ++k) {
    const unsigned flip = std::countr_zero(k);
    double local = m.field(flip);
    for (const auto& nb : adjacency[flip]) local += nb.value * z[nb.qubit];
    energy -= 2.0 * z[flip] * local;
    z[flip] = -z[flip];
    index ^= std::uint64_t{1} << flip;
    if ((k & (kResyncInterval - 1)) == 0) energy = full_energy(m, z);
    visit(index, energy);
  }
}

using CMat = std::vector<std::complex<double>>;  // row-major dim x dim

CMat identity(std::size_t dim) {
  CMat m(dim * dim, {0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
  return m;
}

CMat matmul(const CMat& a, const CMat& b, std::size_t dim) {
  CMat out(dim * dim, {0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const std::complex<double> aik = a[i * dim + k];
      if (aik == std::complex<double>(0.0, 0.0)) continue;
      const auto* brow = &b[k * dim];
      auto* orow = &out[i * dim];
      for (std::size_t j = 0; j < dim; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

double max_abs(const CMat& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

double one_norm(const CMat& a, std::size_t dim) {
  double m = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < dim; ++i) col += std::abs(a[i * dim + j]);
    m = std::max(m, col);
  }
  return m;
}

/// exp(A) by scaling-and-squaring with a Taylor series on the scaled
/// matrix; accurate to ~1e-14 for the operator norms that arise here.
CMat matexp(const CMat& a, std::size_t dim) {
  const double scale = one_norm(a, dim);
  int squarings = 0;
  double factor = 1.0;
  while (scale * factor > 0.5 && squarings < 60) {
    factor *= 0.5;
    ++squarings;
  }

  CMat scaled(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) scaled[k] = a[k] * factor;

  CMat result = identity(dim);
  CMat term = identity(dim);
  for (int order = 1; order <= 40; ++order) {
    term = matmul(term, scaled, dim);
    const double inv = 1.0 / static_cast<double>(order);
    for (auto& v : term) v *= inv;
    for (std::size_t k = 0; k < result.size(); ++k) result[k] += term[k];
    if (max_abs(term) < 1e-20) break;
  }

  for (int s = 0; s < squarings; ++s) result = matmul(result, result, dim);
  return result;
}

std::vector<std::complex<double>> matvec(const CMat& a, const std::vector<std::complex<double>>& x,
                                         std::size_t dim) {
  std::vector<std::complex<double>> out(dim, {0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) {
    std::complex<double> acc(0.0, 0.0);
    const auto* row = &a[i * dim];
    for (std::size_t j = 0; j < dim; ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace

GroundTruth brute_force(const IsingModel& model, bool with_histogram) {
  const std::size_t n = model.n_qubits();
  if (n > kMaxBruteForceQubits)
    throw ResourceError("brute_force: " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(kMaxBruteForceQubits));

  GroundTruth truth;
  if (with_histogram) truth.energy_histogram.emplace();

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint64_t, double>> candidates;

  gray_walk(model, [&](std::uint64_t index, double energy) {
    if (with_histogram) {
      const double key = std::round(energy / kDegeneracyTol) * kDegeneracyTol;
      ++(*truth.energy_histogram)[key];
    }
    if (energy < best) {
      best = energy;
      if (candidates.size() > kMaxGroundStates) {
        std::erase_if(candidates, [&](const auto& c) { return c.second > best + kDegeneracyTol; });
      }
    }
    if (energy <= best + kDegeneracyTol) {
      candidates.emplace_back(index, energy);
      if (candidates.size() > 2 * kMaxGroundStates)
        throw ResourceError("brute_force: degenerate ground manifold exceeds the supported size");
    }
  });

  truth.ground_energy = best;
  for (const auto& [index, energy] : candidates)
    if (energy <= best + kDegeneracyTol)
      truth.ground_states.push_back(bitstring_from_index(index, n));
  std::sort(truth.ground_states.begin(), truth.ground_states.end());
  return truth;
}

StateVector dense_reference(const IsingModel& model, const QaoaParams& params) {
  params.validate();
  const std::size_t n = model.n_qubits();
  if (n > kMaxDenseReferenceQubits)
    throw ResourceError("dense_reference: " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(kMaxDenseReferenceQubits));
  const std::size_t dim = std::size_t{1} << n;

  // Offset-free cost energies, derived here without cost_diagonal().
  std::vector<double> energies(dim, 0.0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double e = 0.0;
    for (const auto& c : model.couplings()) {
      const int zi = ((idx >> c.i) & 1u) ? -1 : 1;
      const int zj = ((idx >> c.j) & 1u) ? -1 : 1;
      e += c.value * zi * zj;
    }
    for (std::size_t q = 0; q < n; ++q)
      e += model.field(q) * (((idx >> q) & 1u) ? -1.0 : 1.0);
    energies[idx] = e;
  }

  CMat cost_h(dim * dim, {0.0, 0.0});
  for (std::size_t idx = 0; idx < dim; ++idx) cost_h[idx * dim + idx] = energies[idx];

  CMat mixer_h(dim * dim, {0.0, 0.0});  // sum_q X_q
  for (std::size_t idx = 0; idx < dim; ++idx)
    for (std::size_t q = 0; q < n; ++q)
      mixer_h[idx * dim + (idx ^ (std::size_t{1} << q))] = 1.0;

  std::vector<std::complex<double>> state(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  const std::complex<double> minus_i(0.0, -1.0);
  const std::complex<double> plus_i(0.0, 1.0);

  for (std::size_t layer = 0; layer < params.p(); ++layer) {
    CMat a(dim * dim);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = minus_i * params.gammas[layer] * cost_h[k];
    state = matvec(matexp(a, dim), state, dim);

    for (std::size_t k = 0; k < a.size(); ++k) a[k] = plus_i * params.betas[layer] * mixer_h[k];
    state = matvec(matexp(a, dim), state, dim);
  }

  StateVector out;
  out.n_qubits = n;
  out.amplitudes = std::move(state);
  return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits || a.amplitudes.size() != b.amplitudes.size())
    throw DimensionError("fidelity: states have different qubit counts");
  std::complex<double> overlap(0.0, 0.0);
  for (std::size_t k = 0; k < a.amplitudes.size(); ++k)
    overlap += std::conj(a.amplitudes[k]) * b.amplitudes[k];
  return std::norm(overlap);
}

}  // namespace qaoatl

#include "qaoatl/mitigation.hpp"

#include <set>

#include "qaoatl/bitops.hpp"

namespace qaoatl {

namespace {

struct Neighbor {
  std::uint32_t qubit;
  double value;
};

}  // namespace

std::pair<SampleSet, MitigationReport> mitigate(const SampleSet& samples, const IsingModel& model,
                                                const std::vector<std::string>& ground_states) {
  const std::size_t n = model.n_qubits();
  if (samples.n_qubits != n)
    throw DimensionError("mitigate: sample set and model disagree on the qubit count");
  if (samples.counts.empty()) throw InputError("mitigate: empty sample set");

  std::set<std::string> ground(ground_states.begin(), ground_states.end());
  for (const auto& g : ground)
    if (g.size() != n) throw DimensionError("mitigate: ground state '" + g + "' has the wrong length");

  std::vector<std::vector<Neighbor>> adjacency(n);
  for (const auto& c : model.couplings()) {
    adjacency[c.i].push_back({c.j, c.value});
    adjacency[c.j].push_back({c.i, c.value});
  }

  SampleSet mitigated;
  mitigated.n_qubits = n;
  MitigationReport report;
  std::size_t total = 0;
  std::size_t raw_optimal = 0;
  std::size_t mitigated_optimal = 0;
  std::size_t within_distance1 = 0;

  for (const auto& [bits, count] : samples.counts) {
    if (bits.size() != n)
      throw DimensionError("mitigate: sample '" + bits + "' has the wrong length");
    total += count;

    Assignment x = assignment_from_bitstring(bits);
    // Energy change from flipping spin k: -2 z_k (h_k + sum_j Q_kj z_j).
    double best_delta = 0.0;
    std::size_t best_flip = n;  // n = keep the sample as is
    for (std::size_t k = 0; k < n; ++k) {
      double local = model.field(k);
      for (const auto& nb : adjacency[k]) local += nb.value * x.spin(nb.qubit);
      const double delta = -2.0 * x.spin(k) * local;
      if (delta < best_delta) {
        best_delta = delta;
        best_flip = k;
      }
    }

    bool in_ground = ground.count(bits) != 0;
    if (in_ground) raw_optimal += count;

    bool near_ground = in_ground;
    for (std::size_t k = 0; !near_ground && k < n; ++k) {
      std::string flipped = bits;
      flipped[k] = flipped[k] == '0' ? '1' : '0';
      near_ground = ground.count(flipped) != 0;
    }
    if (near_ground) within_distance1 += count;

    std::string out_bits = bits;
    if (best_flip < n) {
      out_bits[best_flip] = out_bits[best_flip] == '0' ? '1' : '0';
      report.moved_samples += count;
    }
    if (ground.count(out_bits) != 0) mitigated_optimal += count;
    mitigated.counts[out_bits] += count;
  }

  report.raw_optimal_fraction = static_cast<double>(raw_optimal) / static_cast<double>(total);
  report.mitigated_optimal_fraction = static_cast<double>(mitigated_optimal) / static_cast<double>(total);
  report.raw_within_distance1_fraction =
      static_cast<double>(within_distance1) / static_cast<double>(total);
  return {std::move(mitigated), report};
}

}  // namespace qaoatl

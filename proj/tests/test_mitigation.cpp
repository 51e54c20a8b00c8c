#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <doctest.h>

#include "qaoatl/encoding.hpp"
#include "qaoatl/ising.hpp"
#include "qaoatl/mitigation.hpp"
#include "qaoatl/optimizer.hpp"
#include "qaoatl/oracle.hpp"
#include "qaoatl/problems.hpp"
#include "qaoatl/rng.hpp"
#include "qaoatl/simulator.hpp"

using namespace qaoatl;

namespace {

SampleSet make_samples(std::size_t n, std::initializer_list<std::pair<const char*, std::size_t>> rows) {
  SampleSet s;
  s.n_qubits = n;
  for (const auto& [bits, count] : rows) s.counts[bits] = count;
  return s;
}

double mean_energy(const SampleSet& samples, const IsingModel& m) {
  double total = 0.0, shots = 0.0;
  for (const auto& [bits, count] : samples.counts) {
    total += ising_energy(m, assignment_from_bitstring(bits)) * static_cast<double>(count);
    shots += static_cast<double>(count);
  }
  return total / shots;
}

}  // namespace

TEST_SUITE("mitigation") {
  TEST_CASE("samples already on a ground state never move") {
    IsingModel m(3);
    m.add_field(0, 1.0);
    m.add_field(1, 1.0);
    m.add_field(2, 1.0);  // unique ground state 111
    const auto samples = make_samples(3, {{"111", 40}});
    const auto [out, report] = mitigate(samples, m, {"111"});
    CHECK(out.counts.at("111") == 40);
    CHECK(report.raw_optimal_fraction == 1.0);
    CHECK(report.mitigated_optimal_fraction == 1.0);
    CHECK(report.raw_within_distance1_fraction == 1.0);
    CHECK(report.moved_samples == 0);
  }

  TEST_CASE("a single flipped bit is recovered and fractions are exact") {
    IsingModel m(3);
    m.add_field(0, 1.0);
    m.add_field(1, 1.0);
    m.add_field(2, 1.0);
    // 011 is one flip from the ground state; 000 is three flips away
    const auto samples = make_samples(3, {{"111", 10}, {"011", 30}, {"000", 60}});
    const auto [out, report] = mitigate(samples, m, {"111"});
    CHECK(report.raw_optimal_fraction == 0.1);
    CHECK(report.raw_within_distance1_fraction == 0.4);  // 111 and 011
    CHECK(report.mitigated_optimal_fraction == 0.4);
    CHECK(report.moved_samples == 90);  // 000 moves too, just not onto a ground state
    CHECK(out.counts.at("111") == 40);
    CHECK(out.counts.at("100") == 60);  // 000 flips its lowest improving bit
    CHECK(out.total_shots() == 100);
  }

  TEST_CASE("ties keep the sample in place on a zero model") {
    IsingModel m(2);  // every flip is energy-neutral: nothing may move
    const auto samples = make_samples(2, {{"01", 5}, {"10", 7}});
    const auto [out, report] = mitigate(samples, m, {"00", "01", "10", "11"});
    CHECK(out.counts == samples.counts);
    CHECK(report.moved_samples == 0);
    CHECK(report.raw_optimal_fraction == 1.0);
  }

  TEST_CASE("equally improving flips choose the lowest variable index") {
    // fields (-1, -1): both bits of "11" want to flip with the same gain
    IsingModel m(2);
    m.add_field(0, -1.0);
    m.add_field(1, -1.0);
    const auto samples = make_samples(2, {{"11", 1}});
    const auto [out, report] = mitigate(samples, m, {"00"});
    CHECK(out.counts.count("01") == 1);  // bit 0 flipped, bit 1 untouched
    CHECK(report.moved_samples == 1);
    CHECK(report.mitigated_optimal_fraction == 0.0);
  }

  TEST_CASE("mitigation never raises a sample's energy and only moves strict improvements") {
    const auto inst = generate(ProblemKind::Maxcut, 8, 21);
    const auto m = normalize(qubo_to_ising(to_qubo(inst)));
    const auto truth = brute_force(m);
    Rng rng(99);
    SampleSet noisy;
    noisy.n_qubits = 8;
    for (int k = 0; k < 400; ++k)
      noisy.counts[bitstring_from_index(rng.next_word() & 0xff, 8)] += 1;

    const auto [out, report] = mitigate(noisy, m, truth.ground_states);
    CHECK(out.total_shots() == noisy.total_shots());
    CHECK(mean_energy(out, m) <= mean_energy(noisy, m));
    CHECK(report.mitigated_optimal_fraction >= report.raw_optimal_fraction);
    // mitigation can't reach beyond one flip
    CHECK(report.mitigated_optimal_fraction <= report.raw_within_distance1_fraction + 1e-12);

    // every output string is reachable within one flip of some input, and
    // each moved string strictly lowered its energy
    for (const auto& [bits, count] : out.counts) {
      bool reachable = false;
      for (const auto& [src, src_count] : noisy.counts) {
        std::size_t dist = 0;
        for (std::size_t i = 0; i < 8; ++i) dist += bits[i] != src[i];
        if (dist <= 1) {
          reachable = true;
          break;
        }
      }
      CHECK(reachable);
    }
  }

  TEST_CASE("noisy samples from a real circuit get measurably cleaner") {
    const auto inst = generate(ProblemKind::Kp, 8, 3);
    const auto m = normalize(qubo_to_ising(to_qubo(inst)));
    const auto truth = brute_force(m);

    OptimizerConfig config;
    config.max_evals = 400;
    const auto result = optimize(m, linear_ramp(5), config);
    const auto state = evolve(m, result.best_params);
    auto samples = sample(state, 2000, 17);

    // inject 3% single-bit readout noise
    Rng rng(18);
    SampleSet noisy;
    noisy.n_qubits = samples.n_qubits;
    for (const auto& [bits, count] : samples.counts) {
      for (std::size_t shot = 0; shot < count; ++shot) {
        std::string b = bits;
        for (auto& ch : b)
          if (rng.uniform_real01() < 0.03) ch = ch == '0' ? '1' : '0';
        noisy.counts[b] += 1;
      }
    }

    const auto [clean, report] = mitigate(noisy, m, truth.ground_states);
    CHECK(report.mitigated_optimal_fraction > report.raw_optimal_fraction);
    CHECK(mean_energy(clean, m) < mean_energy(noisy, m));
  }

  TEST_CASE("input validation") {
    IsingModel m(3);
    const auto samples = make_samples(3, {{"010", 3}});
    SampleSet wrong_width;
    wrong_width.n_qubits = 2;
    wrong_width.counts["01"] = 1;
    CHECK_THROWS_AS(mitigate(wrong_width, m, {}), DimensionError);

    SampleSet empty;
    empty.n_qubits = 3;
    CHECK_THROWS_AS(mitigate(empty, m, {}), InputError);

    CHECK_THROWS_AS(mitigate(samples, m, {"0101"}), DimensionError);

    SampleSet bad_row;
    bad_row.n_qubits = 3;
    bad_row.counts["01"] = 1;
    CHECK_THROWS_AS(mitigate(bad_row, m, {"010"}), DimensionError);
  }
}

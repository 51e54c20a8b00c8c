#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <doctest.h>

#include "qaoatl/problems.hpp"

using namespace qaoatl;

namespace {

/// All assignments of n bits, as indices 0 .. 2^n - 1.
template <typename Fn>
void for_all_assignments(std::size_t n, Fn&& fn) {
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) fn(assignment_from_index(idx, n));
}

}  // namespace

TEST_SUITE("problems") {
  TEST_CASE("kind names round trip") {
    for (const auto kind : {ProblemKind::Tsp, ProblemKind::Bpp, ProblemKind::Kp, ProblemKind::Po,
                            ProblemKind::Mis, ProblemKind::Maxcut})
      CHECK(kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(kind_from_string("sudoku"), RangeError);
  }

  TEST_CASE("variable counts") {
    CHECK(generate(ProblemKind::Tsp, 3, 1).n_vars() == 9);
    CHECK(generate(ProblemKind::Bpp, 3, 1).n_vars() == 12);  // 3*3 placements + 3 bin flags
    CHECK(generate(ProblemKind::Kp, 8, 1).n_vars() == 8);
    CHECK(generate(ProblemKind::Po, 8, 1).n_vars() == 8);
    CHECK(generate(ProblemKind::Mis, 12, 1).n_vars() == 12);
    CHECK(generate(ProblemKind::Maxcut, 12, 1).n_vars() == 12);
  }

  TEST_CASE("unsupported sizes raise range errors") {
    CHECK_THROWS_AS(generate(ProblemKind::Tsp, 2, 1), RangeError);
    CHECK_THROWS_AS(generate(ProblemKind::Tsp, 9, 1), RangeError);
    CHECK_THROWS_AS(generate(ProblemKind::Bpp, 1, 1), RangeError);
    CHECK_THROWS_AS(generate(ProblemKind::Bpp, 9, 1), RangeError);
    CHECK_THROWS_AS(generate(ProblemKind::Kp, 1, 1), RangeError);
    CHECK_THROWS_AS(generate(ProblemKind::Kp, 41, 1), RangeError);
    CHECK_THROWS_AS(generate(ProblemKind::Mis, 41, 1), RangeError);
  }

  TEST_CASE("generation is deterministic in the seed") {
    for (const auto kind : {ProblemKind::Tsp, ProblemKind::Bpp, ProblemKind::Kp, ProblemKind::Po,
                            ProblemKind::Mis, ProblemKind::Maxcut}) {
      const std::size_t size = kind == ProblemKind::Tsp || kind == ProblemKind::Bpp ? 4 : 9;
      CHECK(to_json_string(generate(kind, size, 77)) == to_json_string(generate(kind, size, 77)));
      CHECK(to_json_string(generate(kind, size, 77)) != to_json_string(generate(kind, size, 78)));
    }
  }

  TEST_CASE("tsp distances are symmetric and positive with the stated scale") {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto inst = generate(ProblemKind::Tsp, 5, seed);
      const auto& t = inst.tsp();
      REQUIRE(t.dist.size() == 5);
      for (std::size_t i = 0; i < 5; ++i) {
        CHECK(t.dist[i][i] == 0.0);
        for (std::size_t j = i + 1; j < 5; ++j) {
          CHECK(t.dist[i][j] == t.dist[j][i]);
          CHECK(t.dist[i][j] > 0.0);
          sum += t.dist[i][j];
          ++count;
        }
      }
    }
    // Normal(10, 0.1): the sample mean of 500 draws is within 10 +- 0.05
    CHECK(sum / static_cast<double>(count) == doctest::Approx(10.0).epsilon(0.005));
  }

  TEST_CASE("bpp draws weights in {1..10} with capacity 20 and one bin per item") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const auto inst = generate(ProblemKind::Bpp, 4, seed);
      const auto& b = inst.bpp();
      CHECK(b.max_weight == 20);
      CHECK(b.n_bins == 4);
      REQUIRE(b.weights.size() == 4);
      for (const int w : b.weights) {
        CHECK(w >= 1);
        CHECK(w <= 10);
      }
    }
  }

  TEST_CASE("kp draws values in {5..63}, weights in {1..20}, capacity = half the total weight") {
    std::set<int> seen_values;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
      const auto inst = generate(ProblemKind::Kp, 6, seed);
      const auto& k = inst.kp();
      for (const int v : k.values) {
        CHECK(v >= 5);
        CHECK(v <= 63);
        seen_values.insert(v);
      }
      for (const int w : k.weights) {
        CHECK(w >= 1);
        CHECK(w <= 20);
      }
      CHECK(k.max_weight == std::accumulate(k.weights.begin(), k.weights.end(), 0) / 2);
    }
    CHECK(seen_values.size() > 40);  // the value range is actually exercised
  }

  TEST_CASE("po draws returns in [0,1), quantized covariances, costs in [0.5,1.5)") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const auto inst = generate(ProblemKind::Po, 5, seed);
      const auto& p = inst.po();
      CHECK(p.risk_factor == 1.0);
      double total_cost = 0.0;
      for (const double r : p.returns) {
        CHECK(r >= 0.0);
        CHECK(r < 1.0);
      }
      for (const double c : p.costs) {
        CHECK(c >= 0.5);
        CHECK(c < 1.5);
        total_cost += c;
      }
      CHECK(p.budget == total_cost / 2.0);
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
          CHECK(p.cov[i][j] == p.cov[j][i]);
          const double v = p.cov[i][j];
          CHECK((v == -0.1 || v == 0.0 || v == 0.1 || v == 0.2));
        }
    }
    GenOptions opts;
    opts.po_risk_factor = 2.5;
    CHECK(generate(ProblemKind::Po, 5, 1, opts).po().risk_factor == 2.5);
  }

  TEST_CASE("graph problems draw ordered edges with their stated densities and weights") {
    std::size_t mis_edges = 0, maxcut_edges = 0;
    const std::size_t pairs_per_instance = 10 * 9 / 2;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const auto mis = generate(ProblemKind::Mis, 10, seed);
      for (const auto& e : mis.graph().edges) {
        CHECK(e.u < e.v);
        CHECK(e.v < 10);
        CHECK(e.weight == 1.0);
      }
      CHECK(mis.graph().node_weights == std::vector<double>(10, 1.0));
      mis_edges += mis.graph().edges.size();

      const auto cut = generate(ProblemKind::Maxcut, 10, seed);
      for (const auto& e : cut.graph().edges) {
        CHECK(e.u < e.v);
        CHECK(e.weight > 0.0);
        CHECK(e.weight <= 1.0);
      }
      maxcut_edges += cut.graph().edges.size();
    }
    // densities 0.5 and 0.7 over 200 * 45 pairs; allow 5 sigma (~330)
    CHECK(std::abs(static_cast<double>(mis_edges) - 0.5 * 200 * pairs_per_instance) < 350);
    CHECK(std::abs(static_cast<double>(maxcut_edges) - 0.7 * 200 * pairs_per_instance) < 350);
  }

  TEST_CASE("kp evaluation: empty selection is feasible with zero value") {
    const auto inst = generate(ProblemKind::Kp, 6, 3);
    const auto r = evaluate(inst, Assignment(6));
    CHECK(r.objective == 0.0);
    CHECK(r.feasible);
  }

  TEST_CASE("kp evaluation matches a direct sum and respects the capacity") {
    const auto inst = generate(ProblemKind::Kp, 8, 5);
    const auto& k = inst.kp();
    for_all_assignments(8, [&](const Assignment& x) {
      int value = 0, load = 0;
      for (std::size_t i = 0; i < 8; ++i)
        if (x[i]) {
          value += k.values[i];
          load += k.weights[i];
        }
      const auto r = evaluate(inst, x);
      CHECK(r.objective == static_cast<double>(value));
      CHECK(r.feasible == (load <= k.max_weight));
    });
  }

  TEST_CASE("mis evaluation: an adjacent pair is infeasible with objective 2") {
    // find an instance whose first two nodes are adjacent
    for (std::uint64_t seed = 1;; ++seed) {
      REQUIRE(seed < 500);
      const auto inst = generate(ProblemKind::Mis, 4, seed);
      const auto& g = inst.graph();
      const bool has01 = std::any_of(g.edges.begin(), g.edges.end(),
                                     [](const GraphEdge& e) { return e.u == 0 && e.v == 1; });
      if (!has01) continue;
      const auto r = evaluate(inst, assignment_from_bitstring("1100"));
      CHECK(r.objective == 2.0);
      CHECK_FALSE(r.feasible);
      break;
    }
  }

  TEST_CASE("mis evaluation: an edgeless instance accepts every vertex") {
    for (std::uint64_t seed = 1;; ++seed) {
      REQUIRE(seed < 2000);
      const auto inst = generate(ProblemKind::Mis, 4, seed);
      if (!inst.graph().edges.empty()) continue;
      const auto r = evaluate(inst, assignment_from_bitstring("1111"));
      CHECK(r.objective == 4.0);
      CHECK(r.feasible);
      break;
    }
  }

  TEST_CASE("bpp evaluation: exhaustive minimum matches the closed-form bin count") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto inst = generate(ProblemKind::Bpp, 3, seed);
      const auto& b = inst.bpp();
      double best = 1e9;
      for_all_assignments(12, [&](const Assignment& x) {
        const auto r = evaluate(inst, x);
        if (r.feasible) best = std::min(best, r.objective);
      });
      // weights are each <= 10 and the capacity is 20, so two bins always
      // suffice for three items; one bin iff everything fits together
      const int total = std::accumulate(b.weights.begin(), b.weights.end(), 0);
      const double expected = total <= b.max_weight ? 1.0 : 2.0;
      CHECK(best == expected);
    }
  }

  TEST_CASE("bpp evaluation rejects unplaced items and closed-but-used bins") {
    const auto inst = generate(ProblemKind::Bpp, 3, 1);
    Assignment x(12);
    CHECK_FALSE(evaluate(inst, x).feasible);  // nothing placed
    x[bpp_item_var(3, 0, 0)] = 1;
    x[bpp_item_var(3, 1, 0)] = 1;
    x[bpp_item_var(3, 2, 0)] = 1;
    CHECK_FALSE(evaluate(inst, x).feasible);  // bin 0 used but not open
  }

  TEST_CASE("tsp evaluation: the identity tour is feasible and sums adjacent distances") {
    const auto inst = generate(ProblemKind::Tsp, 4, 9);
    const auto& t = inst.tsp();
    Assignment x(16);
    for (std::size_t i = 0; i < 4; ++i) x[tsp_var(4, i, i)] = 1;
    const auto r = evaluate(inst, x);
    CHECK(r.feasible);
    const double expected = t.dist[0][1] + t.dist[1][2] + t.dist[2][3] + t.dist[3][0];
    CHECK(r.objective == doctest::Approx(expected).epsilon(1e-12));

    x[tsp_var(4, 0, 0)] = 0;  // city 0 unplaced
    CHECK_FALSE(evaluate(inst, x).feasible);
  }

  TEST_CASE("po evaluation: single assets and the empty portfolio") {
    const auto inst = generate(ProblemKind::Po, 6, 11);
    const auto& p = inst.po();
    CHECK(evaluate(inst, Assignment(6)).objective == 0.0);
    CHECK(evaluate(inst, Assignment(6)).feasible);
    for (std::size_t i = 0; i < 6; ++i) {
      Assignment x(6);
      x[i] = 1;
      const auto r = evaluate(inst, x);
      CHECK(r.objective == doctest::Approx(p.returns[i] - p.risk_factor * p.cov[i][i]).epsilon(1e-12));
      CHECK(r.feasible == (p.costs[i] <= p.budget));
    }
  }

  TEST_CASE("maxcut evaluation: always feasible, invariant under complementing the cut") {
    const auto inst = generate(ProblemKind::Maxcut, 8, 13);
    for (std::uint64_t idx = 0; idx < 256; idx += 7) {
      const Assignment x = assignment_from_index(idx, 8);
      const Assignment y = assignment_from_index(~idx & 0xff, 8);
      const auto rx = evaluate(inst, x);
      CHECK(rx.feasible);
      CHECK(rx.objective == doctest::Approx(evaluate(inst, y).objective).epsilon(1e-12));
    }
  }

  TEST_CASE("evaluate rejects assignments of the wrong length") {
    CHECK_THROWS_AS(evaluate(generate(ProblemKind::Kp, 6, 1), Assignment(5)), DimensionError);
  }

  TEST_CASE("JSON round trip is lossless for every kind") {
    for (const auto kind : {ProblemKind::Tsp, ProblemKind::Bpp, ProblemKind::Kp, ProblemKind::Po,
                            ProblemKind::Mis, ProblemKind::Maxcut}) {
      const std::size_t size = kind == ProblemKind::Tsp || kind == ProblemKind::Bpp ? 4 : 10;
      const auto inst = generate(kind, size, 2024);
      const std::string text = to_json_string(inst);
      const auto back = problem_from_json_string(text);
      CHECK(back.kind() == inst.kind());
      CHECK(back.size() == inst.size());
      CHECK(back.seed() == inst.seed());
      CHECK(to_json_string(back) == text);
    }
  }

  TEST_CASE("JSON parsing rejects malformed input") {
    CHECK_THROWS_AS(problem_from_json_string("not json"), InputError);
    CHECK_THROWS_AS(problem_from_json_string("{\"kind\":\"kp\"}"), InputError);
    const std::string bad_edge =
        R"({"kind":"mis","size":3,"seed":1,"data":{"n_nodes":3,"edges":[[2,1,1.0]],"node_weights":[1,1,1]}})";
    CHECK_THROWS_AS(problem_from_json_string(bad_edge), InputError);
  }

  TEST_CASE("payload accessors enforce the kind") {
    const auto inst = generate(ProblemKind::Kp, 6, 1);
    CHECK_THROWS_AS(inst.tsp(), ConfigError);
    CHECK_NOTHROW(inst.kp());
  }
}

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qaoatl/bitops.hpp"
#include "qaoatl/errors.hpp"
#include "qaoatl/problems.hpp"

namespace qaoatl {

/// Penalty coefficients for constrained encodings.  lambda0 multiplies
/// squared equality penalties; lambda1/lambda2 are the linear/quadratic
/// coefficients of the unbalanced inequality penalty
///   xi(h) = -lambda1 * h + lambda2 * h^2,
/// where h(x) >= 0 on the feasible side of the constraint.  Fields left
/// unset fall back to nothing: an encoding that needs a missing
/// coefficient raises ConfigError.
struct PenaltyConfig {
  std::optional<double> lambda0;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
};

/// Tuned defaults per problem kind: tsp lambda0 = 23; bpp (15, 4.2, 0.4);
/// kp (0.96, 0.04); po (0.97, 0.06); mis (-1, 1) shown for reference
/// although the mis encoding uses a fixed +2 x_u x_v edge term; maxcut is
/// unconstrained and takes none.
PenaltyConfig default_penalties(ProblemKind kind);

/// One term of a linear form sum_i coeff_i * x_{index_i}.
struct LinTerm {
  std::size_t index = 0;
  double coeff = 0.0;
};

/// Dense QUBO in n binary variables:
///   energy(x) = sum_i q_ii x_i + 2 sum_{i<j} q_ij x_i x_j + offset
///             = x^T Q x + offset  (Q symmetric, x in {0,1}^n).
/// Linear coefficients live on the diagonal; the matrix is kept exactly
/// symmetric by construction.
class Qubo {
 public:
  explicit Qubo(std::size_t n_vars);

  std::size_t num_vars() const { return n_; }
  double coefficient(std::size_t i, std::size_t j) const;
  double offset() const { return offset_; }

  /// Adds c * x_i (accumulates onto the diagonal).
  void add_linear(std::size_t i, double c);

  /// Adds c * x_i x_j for i != j (split evenly across q_ij and q_ji).
  void add_product(std::size_t i, std::size_t j, double c);

  void add_offset(double c) { offset_ += c; }

  /// Adds scale * (sum_k terms_k + constant)^2, expanded exactly.
  void add_squared_linear_form(std::span<const LinTerm> terms, double constant, double scale);

  /// Adds the unbalanced penalty -lambda1 * h + lambda2 * h^2 for the
  /// linear form h(x) = sum_k terms_k + constant (h >= 0 iff feasible).
  void add_unbalanced_penalty(std::span<const LinTerm> terms, double constant,
                              double lambda1, double lambda2);

  double energy(const Assignment& x) const;

 private:
  void check_index(std::size_t i) const;

  std::size_t n_;
  std::vector<double> q_;  // row-major n x n, symmetric
  double offset_ = 0.0;
};

/// QUBO encoding of an instance under the given penalties.  Constrained
/// problems follow the unbalanced-penalization scheme: equality
/// constraints enter as lambda0 * (violation)^2, inequality constraints
/// as -lambda1 * h + lambda2 * h^2 with h the signed slack.  Maximization
/// objectives are negated so lower energy is always better.  Knapsack
/// values are scaled by the maximum value, and its weights and capacity
/// by the maximum weight, putting every term on the unit scale the
/// penalty defaults are tuned for.  The mis encoding is -sum_i w_i x_i
/// plus a fixed +2 x_u x_v per edge; maxcut contributes
/// 2 w_uv x_u x_v - w_uv (x_u + x_v) per edge.
Qubo to_qubo(const ProblemInstance& instance, const PenaltyConfig& penalties);

/// Convenience overload using default_penalties(instance.kind()).
Qubo to_qubo(const ProblemInstance& instance);

}  // namespace qaoatl

#include "qaoatl/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "qaoatl/format.hpp"

namespace qaoatl {

namespace {

struct BudgetExhausted {};

QaoaParams unflatten(const std::vector<double>& x) {
  const std::size_t p = x.size() / 2;
  QaoaParams params;
  params.gammas.assign(x.begin(), x.begin() + p);
  params.betas.assign(x.begin() + p, x.end());
  return params;
}

}  // namespace

QaoaParams linear_ramp(std::size_t p, double delta) {
  if (p == 0) throw RangeError("linear_ramp: p must be positive");
  if (!std::isfinite(delta)) throw RangeError("linear_ramp: delta must be finite");
  QaoaParams params;
  params.gammas.resize(p);
  params.betas.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    const double f = (static_cast<double>(k) + 0.5) / static_cast<double>(p);
    params.gammas[k] = delta * f;
    params.betas[k] = delta * (1.0 - f);
  }
  return params;
}

OptimizeResult optimize(const IsingModel& model, const QaoaParams& init, const OptimizerConfig& config) {
  init.validate();
  if (config.max_evals == 0) throw ConfigError("optimize: max_evals must be >= 1");
  if (!(config.initial_step > 0.0)) throw ConfigError("optimize: initial_step must be positive");
  if (config.tolerance < 0.0) throw ConfigError("optimize: tolerance must be nonnegative");

  const Evolver evolver(model);
  const std::size_t dim = 2 * init.p();

  OptimizeResult result;
  auto objective = [&](const std::vector<double>& x) -> double {
    if (result.trace.size() >= config.max_evals) throw BudgetExhausted{};
    const QaoaParams params = unflatten(x);
    const double value = evolver.expectation(evolver.evolve(params));
    if (!std::isfinite(value)) throw NumericError("optimize: objective evaluated to a non-finite value");
    result.trace.push_back({result.trace.size(), params, value});
    return value;
  };

  std::vector<double> x0 = init.gammas;
  x0.insert(x0.end(), init.betas.begin(), init.betas.end());

  std::vector<std::vector<double>> simplex(dim + 1, x0);
  std::vector<double> fvals(dim + 1);
  for (std::size_t k = 0; k < dim; ++k) simplex[k + 1][k] += config.initial_step;

  try {
    for (std::size_t k = 0; k <= dim; ++k) fvals[k] = objective(simplex[k]);

    // Nelder-Mead with the standard reflection/expansion/contraction/shrink
    // coefficients (1, 2, 1/2, 1/2).
    while (true) {
      std::vector<std::size_t> order(dim + 1);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });

      double spread = 0.0;
      for (std::size_t k = 0; k <= dim; ++k)
        spread = std::max(spread, std::abs(fvals[order[k]] - fvals[order[0]]));
      if (spread <= config.tolerance) break;

      const std::size_t best = order[0];
      const std::size_t second_worst = order[dim - 1];
      const std::size_t worst = order[dim];

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t k = 0; k <= dim; ++k) {
        if (k == worst) continue;
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[k][d];
      }
      for (std::size_t d = 0; d < dim; ++d) centroid[d] /= static_cast<double>(dim);

      auto blend = [&](double t) {  // centroid + t * (centroid - worst)
        std::vector<double> x(dim);
        for (std::size_t d = 0; d < dim; ++d)
          x[d] = centroid[d] + t * (centroid[d] - simplex[worst][d]);
        return x;
      };

      const std::vector<double> reflected = blend(1.0);
      const double f_reflected = objective(reflected);

      if (f_reflected < fvals[best]) {
        const std::vector<double> expanded = blend(2.0);
        const double f_expanded = objective(expanded);
        if (f_expanded < f_reflected) {
          simplex[worst] = expanded;
          fvals[worst] = f_expanded;
        } else {
          simplex[worst] = reflected;
          fvals[worst] = f_reflected;
        }
        continue;
      }
      if (f_reflected < fvals[second_worst]) {
        simplex[worst] = reflected;
        fvals[worst] = f_reflected;
        continue;
      }

      const bool outside = f_reflected < fvals[worst];
      const std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
      const double f_contracted = objective(contracted);
      const double bar = outside ? f_reflected : fvals[worst];
      if (f_contracted < bar) {
        simplex[worst] = contracted;
        fvals[worst] = f_contracted;
        continue;
      }

      for (std::size_t k = 0; k <= dim; ++k) {  // shrink toward the best vertex
        if (k == best) continue;
        for (std::size_t d = 0; d < dim; ++d)
          simplex[k][d] = simplex[best][d] + 0.5 * (simplex[k][d] - simplex[best][d]);
        fvals[k] = objective(simplex[k]);
      }
    }
  } catch (const BudgetExhausted&) {
    // fall through with the evaluations made so far
  }

  if (result.trace.empty()) throw ConfigError("optimize: budget allowed no evaluations");
  std::size_t best_at = 0;
  for (std::size_t k = 1; k < result.trace.size(); ++k)
    if (result.trace[k].expectation < result.trace[best_at].expectation) best_at = k;
  result.best_params = result.trace[best_at].params;
  result.best_expectation = result.trace[best_at].expectation;
  result.n_evals = result.trace.size();
  return result;
}

void write_trace_csv(std::ostream& out, const OptimizeResult& result) {
  if (result.trace.empty()) throw ConfigError("write_trace_csv: empty trace");
  const std::size_t p = result.trace.front().params.p();
  out << "eval_index,expectation";
  for (std::size_t k = 0; k < p; ++k) out << ",gamma_" << k;
  for (std::size_t k = 0; k < p; ++k) out << ",beta_" << k;
  out << "\n";
  for (const auto& point : result.trace) {
    out << point.eval_index << "," << format_double(point.expectation);
    for (const double g : point.params.gammas) out << "," << format_double(g);
    for (const double b : point.params.betas) out << "," << format_double(b);
    out << "\n";
  }
}

}  // namespace qaoatl

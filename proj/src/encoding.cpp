#include "qaoatl/encoding.hpp"

#include <algorithm>
#include <string>

namespace qaoatl {

namespace {

double require_lambda(const std::optional<double>& value, const char* name, ProblemKind kind) {
  if (!value) {
    throw ConfigError("to_qubo: " + to_string(kind) + " encoding requires penalty coefficient " +
                      std::string(name));
  }
  return *value;
}

void require_nonneg_lambda2(double lambda2) {
  if (lambda2 < 0.0)
    throw ConfigError("to_qubo: lambda2 must be nonnegative for inequality penalties");
}

/// Equality penalty lambda0 * (sum_k terms_k + constant)^2.
void add_equality_penalty(Qubo& q, std::span<const LinTerm> terms, double constant, double lambda0) {
  q.add_squared_linear_form(terms, constant, lambda0);
}

Qubo encode_tsp(const TspInstance& inst, const PenaltyConfig& pen) {
  const double lambda0 = require_lambda(pen.lambda0, "lambda0", ProblemKind::Tsp);
  const std::size_t n = inst.n_cities;
  Qubo q(n * n);

  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t tn = (t + 1) % n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) q.add_product(tsp_var(n, i, t), tsp_var(n, j, tn), inst.dist[i][j]);
  }

  std::vector<LinTerm> terms(n);
  for (std::size_t t = 0; t < n; ++t) {  // one city per position
    for (std::size_t i = 0; i < n; ++i) terms[i] = {tsp_var(n, i, t), 1.0};
    add_equality_penalty(q, terms, -1.0, lambda0);
  }
  for (std::size_t i = 0; i < n; ++i) {  // one position per city
    for (std::size_t t = 0; t < n; ++t) terms[t] = {tsp_var(n, i, t), 1.0};
    add_equality_penalty(q, terms, -1.0, lambda0);
  }
  return q;
}

Qubo encode_bpp(const BppInstance& inst, const PenaltyConfig& pen) {
  const double lambda0 = require_lambda(pen.lambda0, "lambda0", ProblemKind::Bpp);
  const double lambda1 = require_lambda(pen.lambda1, "lambda1", ProblemKind::Bpp);
  const double lambda2 = require_lambda(pen.lambda2, "lambda2", ProblemKind::Bpp);
  require_nonneg_lambda2(lambda2);
  const std::size_t n = inst.n_items;
  const std::size_t m = inst.n_bins;
  Qubo q(n * m + m);

  for (std::size_t j = 0; j < m; ++j) q.add_linear(bpp_bin_var(n, m, j), 1.0);

  std::vector<LinTerm> terms;
  for (std::size_t i = 0; i < n; ++i) {  // each item in exactly one bin
    terms.clear();
    for (std::size_t j = 0; j < m; ++j) terms.push_back({bpp_item_var(m, i, j), 1.0});
    add_equality_penalty(q, terms, -1.0, lambda0);
  }
  for (std::size_t j = 0; j < m; ++j) {  // bin capacity: W y_j - sum_i w_i x_ij >= 0
    terms.clear();
    terms.push_back({bpp_bin_var(n, m, j), static_cast<double>(inst.max_weight)});
    for (std::size_t i = 0; i < n; ++i)
      terms.push_back({bpp_item_var(m, i, j), -static_cast<double>(inst.weights[i])});
    q.add_unbalanced_penalty(terms, 0.0, lambda1, lambda2);
  }
  return q;
}

Qubo encode_kp(const KpInstance& inst, const PenaltyConfig& pen) {
  const double lambda1 = require_lambda(pen.lambda1, "lambda1", ProblemKind::Kp);
  const double lambda2 = require_lambda(pen.lambda2, "lambda2", ProblemKind::Kp);
  require_nonneg_lambda2(lambda2);
  const std::size_t n = inst.n_items;
  Qubo q(n);

  const double vmax = static_cast<double>(*std::max_element(inst.values.begin(), inst.values.end()));
  const double wmax = static_cast<double>(*std::max_element(inst.weights.begin(), inst.weights.end()));
  if (vmax <= 0.0 || wmax <= 0.0)
    throw ConfigError("to_qubo: kp values and weights must be positive");

  for (std::size_t i = 0; i < n; ++i) q.add_linear(i, -inst.values[i] / vmax);

  std::vector<LinTerm> terms;  // capacity: W - sum_i w_i x_i >= 0, on the unit scale
  for (std::size_t i = 0; i < n; ++i) terms.push_back({i, -inst.weights[i] / wmax});
  q.add_unbalanced_penalty(terms, inst.max_weight / wmax, lambda1, lambda2);
  return q;
}

Qubo encode_po(const PoInstance& inst, const PenaltyConfig& pen) {
  const double lambda1 = require_lambda(pen.lambda1, "lambda1", ProblemKind::Po);
  const double lambda2 = require_lambda(pen.lambda2, "lambda2", ProblemKind::Po);
  require_nonneg_lambda2(lambda2);
  const std::size_t n = inst.n_assets;
  Qubo q(n);

  for (std::size_t i = 0; i < n; ++i) {
    q.add_linear(i, -inst.returns[i] + inst.risk_factor * inst.cov[i][i]);
    for (std::size_t j = i + 1; j < n; ++j)
      q.add_product(i, j, 2.0 * inst.risk_factor * inst.cov[i][j]);
  }

  std::vector<LinTerm> terms;  // budget: B - sum_i c_i x_i >= 0
  for (std::size_t i = 0; i < n; ++i) terms.push_back({i, -inst.costs[i]});
  q.add_unbalanced_penalty(terms, inst.budget, lambda1, lambda2);
  return q;
}

Qubo encode_mis(const GraphInstance& inst) {
  Qubo q(inst.n_nodes);
  for (std::size_t i = 0; i < inst.n_nodes; ++i) q.add_linear(i, -inst.node_weights[i]);
  for (const auto& e : inst.edges) q.add_product(e.u, e.v, 2.0);
  return q;
}

Qubo encode_maxcut(const GraphInstance& inst) {
  Qubo q(inst.n_nodes);
  for (const auto& e : inst.edges) {
    q.add_product(e.u, e.v, 2.0 * e.weight);
    q.add_linear(e.u, -e.weight);
    q.add_linear(e.v, -e.weight);
  }
  return q;
}

}  // namespace

PenaltyConfig default_penalties(ProblemKind kind) {
  PenaltyConfig pen;
  switch (kind) {
    case ProblemKind::Tsp:
      pen.lambda0 = 23.0;
      break;
    case ProblemKind::Bpp:
      pen.lambda0 = 15.0;
      pen.lambda1 = 4.2;
      pen.lambda2 = 0.4;
      break;
    case ProblemKind::Kp:
      pen.lambda1 = 0.96;
      pen.lambda2 = 0.04;
      break;
    case ProblemKind::Po:
      pen.lambda1 = 0.97;
      pen.lambda2 = 0.06;
      break;
    case ProblemKind::Mis:
      pen.lambda1 = -1.0;
      pen.lambda2 = 1.0;
      break;
    case ProblemKind::Maxcut:
      break;
  }
  return pen;
}

Qubo::Qubo(std::size_t n_vars) : n_(n_vars), q_(n_vars * n_vars, 0.0) {
  if (n_vars == 0) throw RangeError("Qubo: needs at least one variable");
}

void Qubo::check_index(std::size_t i) const {
  if (i >= n_) {
    throw DimensionError("Qubo: variable index " + std::to_string(i) + " out of range for " +
                         std::to_string(n_) + " variables");
  }
}

double Qubo::coefficient(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  return q_[i * n_ + j];
}

void Qubo::add_linear(std::size_t i, double c) {
  check_index(i);
  q_[i * n_ + i] += c;
}

void Qubo::add_product(std::size_t i, std::size_t j, double c) {
  check_index(i);
  check_index(j);
  if (i == j) throw DimensionError("Qubo::add_product: requires distinct variables; use add_linear");
  q_[i * n_ + j] += 0.5 * c;
  q_[j * n_ + i] += 0.5 * c;
}

void Qubo::add_squared_linear_form(std::span<const LinTerm> terms, double constant, double scale) {
  // (sum_k a_k x_k + b)^2 = sum_k a_k (a_k + 2b) x_k
  //                       + sum_{k<l} 2 a_k a_l x_k x_l + b^2   (x^2 = x)
  for (std::size_t k = 0; k < terms.size(); ++k) {
    add_linear(terms[k].index, scale * terms[k].coeff * (terms[k].coeff + 2.0 * constant));
    for (std::size_t l = k + 1; l < terms.size(); ++l) {
      if (terms[k].index == terms[l].index)
        throw DimensionError("Qubo: linear form mentions a variable twice");
      add_product(terms[k].index, terms[l].index, scale * 2.0 * terms[k].coeff * terms[l].coeff);
    }
  }
  add_offset(scale * constant * constant);
}

void Qubo::add_unbalanced_penalty(std::span<const LinTerm> terms, double constant,
                                  double lambda1, double lambda2) {
  for (const auto& t : terms) add_linear(t.index, -lambda1 * t.coeff);
  add_offset(-lambda1 * constant);
  add_squared_linear_form(terms, constant, lambda2);
}

double Qubo::energy(const Assignment& x) const {
  if (x.size() != n_)
    throw DimensionError("Qubo::energy: assignment has " + std::to_string(x.size()) +
                         " bits, expected " + std::to_string(n_));
  double e = offset_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!x[i]) continue;
    e += q_[i * n_ + i];
    for (std::size_t j = i + 1; j < n_; ++j)
      if (x[j]) e += 2.0 * q_[i * n_ + j];
  }
  return e;
}

Qubo to_qubo(const ProblemInstance& instance, const PenaltyConfig& penalties) {
  switch (instance.kind()) {
    case ProblemKind::Tsp: return encode_tsp(instance.tsp(), penalties);
    case ProblemKind::Bpp: return encode_bpp(instance.bpp(), penalties);
    case ProblemKind::Kp: return encode_kp(instance.kp(), penalties);
    case ProblemKind::Po: return encode_po(instance.po(), penalties);
    case ProblemKind::Mis: return encode_mis(instance.graph());
    case ProblemKind::Maxcut: return encode_maxcut(instance.graph());
  }
  throw RangeError("to_qubo: unknown problem kind");
}

Qubo to_qubo(const ProblemInstance& instance) {
  return to_qubo(instance, default_penalties(instance.kind()));
}

}  // namespace qaoatl

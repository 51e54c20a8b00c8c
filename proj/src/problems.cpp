#include "qaoatl/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "qaoatl/rng.hpp"

namespace qaoatl {

namespace {

using nlohmann::json;

constexpr double kDistanceFloor = 1e-9;

void require_size(ProblemKind kind, std::size_t size, std::size_t lo, std::size_t hi) {
  if (size < lo || size > hi) {
    throw RangeError("generate: " + to_string(kind) + " supports sizes " + std::to_string(lo) +
                     " to " + std::to_string(hi) + ", got " + std::to_string(size));
  }
}

TspInstance gen_tsp(std::size_t n, Rng& rng) {
  TspInstance inst;
  inst.n_cities = n;
  inst.dist.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = rng.normal(10.0, 0.1);
      if (d <= kDistanceFloor) d = kDistanceFloor;
      inst.dist[i][j] = d;
      inst.dist[j][i] = d;
    }
  }
  return inst;
}

BppInstance gen_bpp(std::size_t n, Rng& rng) {
  BppInstance inst;
  inst.n_items = n;
  inst.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    inst.weights.push_back(static_cast<int>(rng.uniform_int(1, 10)));
  inst.max_weight = 20;
  inst.n_bins = n;
  return inst;
}

KpInstance gen_kp(std::size_t n, Rng& rng) {
  KpInstance inst;
  inst.n_items = n;
  inst.values.reserve(n);
  inst.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    inst.values.push_back(static_cast<int>(rng.uniform_int(5, 63)));
  for (std::size_t i = 0; i < n; ++i)
    inst.weights.push_back(static_cast<int>(rng.uniform_int(1, 20)));
  const int total = std::accumulate(inst.weights.begin(), inst.weights.end(), 0);
  inst.max_weight = total / 2;
  return inst;
}

PoInstance gen_po(std::size_t n, Rng& rng, const GenOptions& opts) {
  static constexpr double kCovLevels[4] = {-0.1, 0.0, 0.1, 0.2};
  PoInstance inst;
  inst.n_assets = n;
  inst.returns.reserve(n);
  for (std::size_t i = 0; i < n; ++i) inst.returns.push_back(rng.uniform_real01());
  inst.cov.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double s = kCovLevels[rng.uniform_int(0, 3)];
      inst.cov[i][j] = s;
      inst.cov[j][i] = s;
    }
  }
  inst.costs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) inst.costs.push_back(0.5 + rng.uniform_real01());
  inst.budget = std::accumulate(inst.costs.begin(), inst.costs.end(), 0.0) / 2.0;
  inst.risk_factor = opts.po_risk_factor;
  return inst;
}

GraphInstance gen_graph(std::size_t n, Rng& rng, double edge_prob, bool weighted_edges) {
  GraphInstance inst;
  inst.n_nodes = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform_real01() < edge_prob) {
        const double w = weighted_edges ? 1.0 - rng.uniform_real01() : 1.0;
        inst.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), w});
      }
    }
  }
  if (!weighted_edges) inst.node_weights.assign(n, 1.0);
  return inst;
}

EvalResult eval_tsp(const TspInstance& inst, const Assignment& x) {
  const std::size_t n = inst.n_cities;
  EvalResult r;
  r.feasible = true;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += x[tsp_var(n, i, t)];
    if (count != 1) r.feasible = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    for (std::size_t t = 0; t < n; ++t) count += x[tsp_var(n, i, t)];
    if (count != 1) r.feasible = false;
  }
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t tn = (t + 1) % n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!x[tsp_var(n, i, t)]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (x[tsp_var(n, j, tn)]) r.objective += inst.dist[i][j];
      }
    }
  }
  return r;
}

EvalResult eval_bpp(const BppInstance& inst, const Assignment& x) {
  const std::size_t n = inst.n_items;
  const std::size_t m = inst.n_bins;
  EvalResult r;
  r.feasible = true;
  for (std::size_t j = 0; j < m; ++j) r.objective += x[bpp_bin_var(n, m, j)];
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < m; ++j) count += x[bpp_item_var(m, i, j)];
    if (count != 1) r.feasible = false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    int load = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (x[bpp_item_var(m, i, j)]) load += inst.weights[i];
    const int capacity = x[bpp_bin_var(n, m, j)] ? inst.max_weight : 0;
    if (load > capacity) r.feasible = false;
  }
  return r;
}

EvalResult eval_kp(const KpInstance& inst, const Assignment& x) {
  EvalResult r;
  int load = 0;
  for (std::size_t i = 0; i < inst.n_items; ++i) {
    if (!x[i]) continue;
    r.objective += inst.values[i];
    load += inst.weights[i];
  }
  r.feasible = load <= inst.max_weight;
  return r;
}

EvalResult eval_po(const PoInstance& inst, const Assignment& x) {
  EvalResult r;
  double cost = 0.0;
  double risk = 0.0;
  for (std::size_t i = 0; i < inst.n_assets; ++i) {
    if (!x[i]) continue;
    r.objective += inst.returns[i];
    cost += inst.costs[i];
    for (std::size_t j = 0; j < inst.n_assets; ++j)
      if (x[j]) risk += inst.cov[i][j];
  }
  r.objective -= inst.risk_factor * risk;
  r.feasible = cost <= inst.budget;
  return r;
}

EvalResult eval_mis(const GraphInstance& inst, const Assignment& x) {
  EvalResult r;
  r.feasible = true;
  for (std::size_t i = 0; i < inst.n_nodes; ++i)
    if (x[i]) r.objective += inst.node_weights[i];
  for (const auto& e : inst.edges)
    if (x[e.u] && x[e.v]) r.feasible = false;
  return r;
}

EvalResult eval_maxcut(const GraphInstance& inst, const Assignment& x) {
  EvalResult r;
  r.feasible = true;
  for (const auto& e : inst.edges)
    if (x[e.u] != x[e.v]) r.objective += e.weight;
  return r;
}

json matrix_to_json(const std::vector<std::vector<double>>& m) {
  json rows = json::array();
  for (const auto& row : m) rows.push_back(row);
  return rows;
}

std::vector<std::vector<double>> matrix_from_json(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw InputError(std::string("problem JSON: ") + what + " must be an " + std::to_string(n) + "-row array");
  std::vector<std::vector<double>> m;
  m.reserve(n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n)
      throw InputError(std::string("problem JSON: ") + what + " rows must have length " + std::to_string(n));
    m.push_back(row.get<std::vector<double>>());
  }
  return m;
}

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Tsp: return "tsp";
    case ProblemKind::Bpp: return "bpp";
    case ProblemKind::Kp: return "kp";
    case ProblemKind::Po: return "po";
    case ProblemKind::Mis: return "mis";
    case ProblemKind::Maxcut: return "maxcut";
  }
  throw RangeError("to_string: unknown problem kind");
}

ProblemKind kind_from_string(const std::string& name) {
  if (name == "tsp") return ProblemKind::Tsp;
  if (name == "bpp") return ProblemKind::Bpp;
  if (name == "kp") return ProblemKind::Kp;
  if (name == "po") return ProblemKind::Po;
  if (name == "mis") return ProblemKind::Mis;
  if (name == "maxcut") return ProblemKind::Maxcut;
  throw RangeError("kind_from_string: unknown problem kind '" + name + "'");
}

ProblemInstance::ProblemInstance(ProblemKind kind, std::size_t size, std::uint64_t seed, Payload data)
    : kind_(kind), size_(size), seed_(seed), data_(std::move(data)) {}

std::size_t ProblemInstance::n_vars() const {
  switch (kind_) {
    case ProblemKind::Tsp: return tsp().n_cities * tsp().n_cities;
    case ProblemKind::Bpp: return bpp().n_items * bpp().n_bins + bpp().n_bins;
    case ProblemKind::Kp: return kp().n_items;
    case ProblemKind::Po: return po().n_assets;
    case ProblemKind::Mis:
    case ProblemKind::Maxcut: return graph().n_nodes;
  }
  throw RangeError("n_vars: unknown problem kind");
}

const TspInstance& ProblemInstance::tsp() const {
  if (const auto* p = std::get_if<TspInstance>(&data_)) return *p;
  throw ConfigError("instance payload is not tsp");
}
const BppInstance& ProblemInstance::bpp() const {
  if (const auto* p = std::get_if<BppInstance>(&data_)) return *p;
  throw ConfigError("instance payload is not bpp");
}
const KpInstance& ProblemInstance::kp() const {
  if (const auto* p = std::get_if<KpInstance>(&data_)) return *p;
  throw ConfigError("instance payload is not kp");
}
const PoInstance& ProblemInstance::po() const {
  if (const auto* p = std::get_if<PoInstance>(&data_)) return *p;
  throw ConfigError("instance payload is not po");
}
const GraphInstance& ProblemInstance::graph() const {
  if (const auto* p = std::get_if<GraphInstance>(&data_)) return *p;
  throw ConfigError("instance payload is not a graph");
}

ProblemInstance generate(ProblemKind kind, std::size_t size, std::uint64_t seed) {
  return generate(kind, size, seed, GenOptions{});
}

ProblemInstance generate(ProblemKind kind, std::size_t size, std::uint64_t seed, const GenOptions& opts) {
  Rng rng(seed);
  switch (kind) {
    case ProblemKind::Tsp:
      require_size(kind, size, 3, 8);
      return {kind, size, seed, gen_tsp(size, rng)};
    case ProblemKind::Bpp:
      require_size(kind, size, 2, 8);
      return {kind, size, seed, gen_bpp(size, rng)};
    case ProblemKind::Kp:
      require_size(kind, size, 2, 40);
      return {kind, size, seed, gen_kp(size, rng)};
    case ProblemKind::Po:
      require_size(kind, size, 2, 40);
      return {kind, size, seed, gen_po(size, rng, opts)};
    case ProblemKind::Mis:
      require_size(kind, size, 2, 40);
      return {kind, size, seed, gen_graph(size, rng, 0.5, false)};
    case ProblemKind::Maxcut:
      require_size(kind, size, 2, 40);
      return {kind, size, seed, gen_graph(size, rng, 0.7, true)};
  }
  throw RangeError("generate: unknown problem kind");
}

EvalResult evaluate(const ProblemInstance& instance, const Assignment& assignment) {
  if (assignment.size() != instance.n_vars()) {
    throw DimensionError("evaluate: assignment has " + std::to_string(assignment.size()) +
                         " bits, instance needs " + std::to_string(instance.n_vars()));
  }
  switch (instance.kind()) {
    case ProblemKind::Tsp: return eval_tsp(instance.tsp(), assignment);
    case ProblemKind::Bpp: return eval_bpp(instance.bpp(), assignment);
    case ProblemKind::Kp: return eval_kp(instance.kp(), assignment);
    case ProblemKind::Po: return eval_po(instance.po(), assignment);
    case ProblemKind::Mis: return eval_mis(instance.graph(), assignment);
    case ProblemKind::Maxcut: return eval_maxcut(instance.graph(), assignment);
  }
  throw RangeError("evaluate: unknown problem kind");
}

std::string to_json_string(const ProblemInstance& instance, int indent) {
  json j;
  j["kind"] = to_string(instance.kind());
  j["size"] = instance.size();
  j["seed"] = instance.seed();
  json d;
  switch (instance.kind()) {
    case ProblemKind::Tsp: {
      const auto& t = instance.tsp();
      d["n_cities"] = t.n_cities;
      d["dist"] = matrix_to_json(t.dist);
      break;
    }
    case ProblemKind::Bpp: {
      const auto& b = instance.bpp();
      d["n_items"] = b.n_items;
      d["weights"] = b.weights;
      d["max_weight"] = b.max_weight;
      d["n_bins"] = b.n_bins;
      break;
    }
    case ProblemKind::Kp: {
      const auto& k = instance.kp();
      d["n_items"] = k.n_items;
      d["values"] = k.values;
      d["weights"] = k.weights;
      d["max_weight"] = k.max_weight;
      break;
    }
    case ProblemKind::Po: {
      const auto& p = instance.po();
      d["n_assets"] = p.n_assets;
      d["returns"] = p.returns;
      d["cov"] = matrix_to_json(p.cov);
      d["costs"] = p.costs;
      d["budget"] = p.budget;
      d["risk_factor"] = p.risk_factor;
      break;
    }
    case ProblemKind::Mis:
    case ProblemKind::Maxcut: {
      const auto& g = instance.graph();
      d["n_nodes"] = g.n_nodes;
      json edges = json::array();
      for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.weight});
      d["edges"] = edges;
      d["node_weights"] = g.node_weights;
      break;
    }
  }
  j["data"] = d;
  return j.dump(indent) + "\n";
}

ProblemInstance problem_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("problem JSON: parse failed: ") + e.what());
  }
  try {
    const ProblemKind kind = kind_from_string(j.at("kind").get<std::string>());
    const auto size = j.at("size").get<std::size_t>();
    const auto seed = j.at("seed").get<std::uint64_t>();
    const json& d = j.at("data");
    switch (kind) {
      case ProblemKind::Tsp: {
        TspInstance t;
        t.n_cities = d.at("n_cities").get<std::size_t>();
        t.dist = matrix_from_json(d.at("dist"), t.n_cities, "dist");
        return {kind, size, seed, std::move(t)};
      }
      case ProblemKind::Bpp: {
        BppInstance b;
        b.n_items = d.at("n_items").get<std::size_t>();
        b.weights = d.at("weights").get<std::vector<int>>();
        b.max_weight = d.at("max_weight").get<int>();
        b.n_bins = d.at("n_bins").get<std::size_t>();
        if (b.weights.size() != b.n_items) throw InputError("problem JSON: bpp weights length mismatch");
        return {kind, size, seed, std::move(b)};
      }
      case ProblemKind::Kp: {
        KpInstance k;
        k.n_items = d.at("n_items").get<std::size_t>();
        k.values = d.at("values").get<std::vector<int>>();
        k.weights = d.at("weights").get<std::vector<int>>();
        k.max_weight = d.at("max_weight").get<int>();
        if (k.values.size() != k.n_items || k.weights.size() != k.n_items)
          throw InputError("problem JSON: kp values/weights length mismatch");
        return {kind, size, seed, std::move(k)};
      }
      case ProblemKind::Po: {
        PoInstance p;
        p.n_assets = d.at("n_assets").get<std::size_t>();
        p.returns = d.at("returns").get<std::vector<double>>();
        p.cov = matrix_from_json(d.at("cov"), p.n_assets, "cov");
        p.costs = d.at("costs").get<std::vector<double>>();
        p.budget = d.at("budget").get<double>();
        p.risk_factor = d.at("risk_factor").get<double>();
        if (p.returns.size() != p.n_assets || p.costs.size() != p.n_assets)
          throw InputError("problem JSON: po returns/costs length mismatch");
        return {kind, size, seed, std::move(p)};
      }
      case ProblemKind::Mis:
      case ProblemKind::Maxcut: {
        GraphInstance g;
        g.n_nodes = d.at("n_nodes").get<std::size_t>();
        for (const auto& e : d.at("edges")) {
          if (!e.is_array() || e.size() != 3) throw InputError("problem JSON: edges must be [u, v, weight] triples");
          GraphEdge edge{e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), e[2].get<double>()};
          if (edge.u >= edge.v || edge.v >= g.n_nodes)
            throw InputError("problem JSON: edge endpoints must satisfy u < v < n_nodes");
          g.edges.push_back(edge);
        }
        g.node_weights = d.at("node_weights").get<std::vector<double>>();
        return {kind, size, seed, std::move(g)};
      }
    }
    throw InputError("problem JSON: unknown kind");
  } catch (const json::exception& e) {
    throw InputError(std::string("problem JSON: ") + e.what());
  }
}

}  // namespace qaoatl

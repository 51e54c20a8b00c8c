#include "qaoatl/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "qaoatl/format.hpp"

namespace qaoatl {

namespace {

using nlohmann::json;

/// Linear-interpolation quantile of an ascending sample.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (sorted.size() == 1) return sorted.front();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

void finalize_stats(SweepCell& cell) {
  if (cell.probs.empty()) {
    cell.mean = cell.median = cell.q1 = cell.q3 = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  std::vector<double> sorted = cell.probs;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (const double v : sorted) sum += v;
  cell.mean = sum / static_cast<double>(sorted.size());
  cell.median = quantile(sorted, 0.5);
  cell.q1 = quantile(sorted, 0.25);
  cell.q3 = quantile(sorted, 0.75);
}

json provenance_to_json(const BankProvenance& prov) {
  return json{{"problem", prov.problem}, {"size", prov.size},     {"seed", prov.seed},
              {"delta", prov.delta},     {"budget", prov.budget}, {"best_expectation", prov.best_expectation}};
}

BankProvenance provenance_from_json(const json& j) {
  BankProvenance prov;
  prov.problem = j.at("problem").get<std::string>();
  prov.size = j.at("size").get<std::size_t>();
  prov.seed = j.at("seed").get<std::uint64_t>();
  prov.delta = j.at("delta").get<double>();
  prov.budget = j.at("budget").get<std::size_t>();
  prov.best_expectation = j.at("best_expectation").get<double>();
  return prov;
}

}  // namespace

double grover_baseline(std::size_t n_qubits) {
  return std::exp2(-0.5 * static_cast<double>(n_qubits));
}

TlMetrics transfer_run(const QaoaParams& params, const IsingModel& model, const GroundTruth& truth) {
  if (truth.ground_states.empty())
    throw ConfigError("transfer_run: ground truth lists no ground states");
  const Evolver evolver(model);
  const StateVector state = evolver.evolve(params);
  TlMetrics metrics;
  metrics.n_qubits = model.n_qubits();
  metrics.prob_optimal = probability_of(state, truth.ground_states);
  metrics.expectation = evolver.expectation(state);
  metrics.grover = grover_baseline(model.n_qubits());
  metrics.ground_energy = truth.ground_energy;
  metrics.n_ground_states = truth.ground_states.size();
  return metrics;
}

TlMetrics transfer_run(const QaoaParams& params, const IsingModel& model) {
  return transfer_run(params, model, brute_force(model));
}

void ParameterBank::put(const std::string& label, BankEntry entry) {
  if (label.empty()) throw ConfigError("ParameterBank: entry label must be nonempty");
  entry.params.validate();
  entries_[label] = std::move(entry);
}

bool ParameterBank::contains(const std::string& label) const { return entries_.count(label) != 0; }

const BankEntry& ParameterBank::get(const std::string& label) const {
  const auto it = entries_.find(label);
  if (it == entries_.end()) throw RangeError("ParameterBank: no entry labeled '" + label + "'");
  return it->second;
}

std::string ParameterBank::to_json_string(int indent) const {
  json entries = json::object();
  for (const auto& [label, entry] : entries_) {
    entries[label] = json{{"gammas", entry.params.gammas},
                          {"betas", entry.params.betas},
                          {"source", provenance_to_json(entry.provenance)}};
  }
  return json{{"entries", entries}}.dump(indent) + "\n";
}

ParameterBank ParameterBank::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("parameter bank JSON: parse failed: ") + e.what());
  }
  ParameterBank bank;
  try {
    for (const auto& [label, entry] : j.at("entries").items()) {
      BankEntry be;
      be.params.gammas = entry.at("gammas").get<std::vector<double>>();
      be.params.betas = entry.at("betas").get<std::vector<double>>();
      be.provenance = provenance_from_json(entry.at("source"));
      bank.put(label, std::move(be));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("parameter bank JSON: ") + e.what());
  }
  return bank;
}

SweepReport sweep(const std::string& source_label, const QaoaParams& params,
                  const std::vector<ProblemInstance>& targets,
                  const std::map<ProblemKind, PenaltyConfig>& penalties) {
  params.validate();
  SweepReport report;
  report.source_label = source_label;

  std::map<std::pair<int, std::size_t>, SweepCell> cells;
  for (const auto& target : targets) {
    const auto key = std::make_pair(static_cast<int>(target.kind()), target.size());
    auto& cell = cells[key];
    if (cell.seeds.empty() && cell.errors.empty()) {
      cell.kind = target.kind();
      cell.size = target.size();
      cell.n_qubits = target.n_vars();
      cell.grover = grover_baseline(target.n_vars());
    }
    try {
      const auto it = penalties.find(target.kind());
      const PenaltyConfig pen = it != penalties.end() ? it->second : default_penalties(target.kind());
      const IsingModel model = normalize(qubo_to_ising(to_qubo(target, pen)));
      const TlMetrics metrics = transfer_run(params, model);
      cell.seeds.push_back(target.seed());
      cell.probs.push_back(metrics.prob_optimal);
    } catch (const Error& e) {
      cell.errors.push_back(to_string(target.kind()) + "(" + std::to_string(target.size()) + ") seed " +
                            std::to_string(target.seed()) + ": " + e.what());
    }
  }

  for (auto& [key, cell] : cells) {
    finalize_stats(cell);
    report.cells.push_back(std::move(cell));
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report, ProblemKind kind) {
  out << "size,mean,median,q1,q3,grover\n";
  for (const auto& cell : report.cells) {
    if (cell.kind != kind) continue;
    out << cell.size << "," << format_double(cell.mean) << "," << format_double(cell.median) << ","
        << format_double(cell.q1) << "," << format_double(cell.q3) << "," << format_double(cell.grover)
        << "\n";
  }
}

std::vector<ProblemKind> kinds_in(const SweepReport& report) {
  std::vector<ProblemKind> kinds;
  for (const auto& cell : report.cells)
    if (std::find(kinds.begin(), kinds.end(), cell.kind) == kinds.end()) kinds.push_back(cell.kind);
  return kinds;
}

std::string to_json_string(const SweepReport& report, int indent) {
  json cells = json::array();
  for (const auto& cell : report.cells) {
    cells.push_back(json{{"kind", to_string(cell.kind)},
                         {"size", cell.size},
                         {"n_qubits", cell.n_qubits},
                         {"seeds", cell.seeds},
                         {"probs", cell.probs},
                         {"errors", cell.errors},
                         {"mean", cell.mean},
                         {"median", cell.median},
                         {"q1", cell.q1},
                         {"q3", cell.q3},
                         {"grover", cell.grover}});
  }
  return json{{"source_label", report.source_label}, {"cells", cells}}.dump(indent) + "\n";
}

}  // namespace qaoatl

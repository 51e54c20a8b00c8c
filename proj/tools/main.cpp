// qaoatl — QAOA transfer-learning workbench for Ising-encoded
// combinatorial optimization problems.
//
// Subcommands: generate, optimize, transfer, sample, schedule.  Outputs
// land in QAOATL_OUTPUT_DIR (default: the working directory) unless an
// explicit path is given; all writes are atomic (temp file + rename) and
// byte-deterministic for fixed inputs, with file timestamps honoring
// SOURCE_DATE_EPOCH.
//
// Exit codes: 0 success; 2 usage or contract violation; 3 resource cap
// exceeded; 4 numeric failure; 1 I/O or unexpected error.

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaoatl/annealing.hpp"
#include "qaoatl/encoding.hpp"
#include "qaoatl/format.hpp"
#include "qaoatl/ising.hpp"
#include "qaoatl/mitigation.hpp"
#include "qaoatl/optimizer.hpp"
#include "qaoatl/oracle.hpp"
#include "qaoatl/problems.hpp"
#include "qaoatl/simulator.hpp"
#include "qaoatl/transfer.hpp"

namespace {

using nlohmann::json;
using namespace qaoatl;

constexpr const char* kToolVersion = "0.1.0";

std::filesystem::path output_dir() {
  const char* env = std::getenv("QAOATL_OUTPUT_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".");
}

std::filesystem::path resolve_out(const std::string& explicit_path, const std::string& default_name) {
  if (!explicit_path.empty()) return explicit_path;
  return output_dir() / default_name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading '" + path.string() + "'");
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto parent = path.parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw IoError("failed while writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path.string() + "': " + ec.message());
}

/// UTC timestamp, reproducible when SOURCE_DATE_EPOCH is set.
std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    try {
      now = static_cast<std::time_t>(std::stoll(env));
    } catch (const std::exception&) {
      throw ConfigError("SOURCE_DATE_EPOCH is not an integer");
    }
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct PenaltyFlags {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool has0 = false;
  bool has1 = false;
  bool has2 = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lambda0", lambda0, "Override the equality penalty coefficient")
        ->trigger_on_parse()
        ->each([this](const std::string&) { has0 = true; });
    cmd->add_option("--lambda1", lambda1, "Override the linear inequality penalty coefficient")
        ->trigger_on_parse()
        ->each([this](const std::string&) { has1 = true; });
    cmd->add_option("--lambda2", lambda2, "Override the quadratic inequality penalty coefficient")
        ->trigger_on_parse()
        ->each([this](const std::string&) { has2 = true; });
  }

  PenaltyConfig resolve(ProblemKind kind) const {
    PenaltyConfig pen = default_penalties(kind);
    if (has0) pen.lambda0 = lambda0;
    if (has1) pen.lambda1 = lambda1;
    if (has2) pen.lambda2 = lambda2;
    return pen;
  }

  json to_json() const {
    json j = json::object();
    if (has0) j["lambda0"] = lambda0;
    if (has1) j["lambda1"] = lambda1;
    if (has2) j["lambda2"] = lambda2;
    return j;
  }
};

/// Flags shared by subcommands that need one problem instance: either a
/// JSON file or an inline (kind, size, seed) generation request.
struct InstanceFlags {
  std::string path;
  std::string kind;
  std::size_t size = 0;
  std::uint64_t seed = 1;
  double risk_factor = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--instance", path, "Instance JSON file (overrides --kind/--size/--seed)");
    cmd->add_option("--kind", kind, "Problem kind: tsp, bpp, kp, po, mis, maxcut");
    cmd->add_option("--size", size, "Instance size (cities/items/assets/nodes)");
    cmd->add_option("--seed", seed, "Instance seed")->capture_default_str();
    cmd->add_option("--risk-factor", risk_factor, "Portfolio risk factor q")->capture_default_str();
  }

  ProblemInstance load() const {
    if (!path.empty()) return problem_from_json_string(read_file(path));
    if (kind.empty() || size == 0)
      throw ConfigError("needs either --instance or both --kind and --size");
    GenOptions opts;
    opts.po_risk_factor = risk_factor;
    return generate(kind_from_string(kind), size, seed, opts);
  }
};

json params_to_json(const QaoaParams& params) {
  return json{{"gammas", params.gammas}, {"betas", params.betas}};
}

json record_header(const std::string& command) {
  return json{{"created_at", timestamp_utc()}, {"tool_version", kToolVersion}, {"command", command}};
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t pos = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(token, &pos);
    } catch (const std::exception&) {
      throw ConfigError("bad size '" + token + "' in size list");
    }
    if (pos != token.size() || value == 0) throw ConfigError("bad size '" + token + "' in size list");
    sizes.push_back(value);
  }
  if (sizes.empty()) throw ConfigError("size list is empty");
  return sizes;
}

std::vector<ProblemKind> parse_kind_list(const std::string& text) {
  std::vector<ProblemKind> kinds;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    kinds.push_back(kind_from_string(token));
  }
  if (kinds.empty()) throw ConfigError("kind list is empty");
  return kinds;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  InstanceFlags instance;
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  if (!args.instance.kind.empty() && args.instance.size == 0)
    throw ConfigError("generate: --size is required with --kind");
  if (args.instance.kind.empty())
    throw ConfigError("generate: --kind is required");
  const ProblemInstance inst = args.instance.load();
  const std::string name = to_string(inst.kind()) + "_" + std::to_string(inst.size()) + "_" +
                           std::to_string(inst.seed()) + ".json";
  const auto path = resolve_out(args.out, name);
  write_file_atomic(path, to_json_string(inst));
  std::cout << "wrote " << path.string() << " (" << inst.n_vars() << " variables)\n";
  return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  InstanceFlags instance;
  PenaltyFlags penalties;
  std::size_t p = 10;
  double delta = 0.7;
  std::size_t budget_multiplier = 20;
  double initial_step = 0.05;
  double tolerance = 1e-8;
  std::string label;
  std::string bank_path;
  std::string trace_path;
};

int run_optimize(const OptimizeArgs& args) {
  const ProblemInstance inst = args.instance.load();
  const PenaltyConfig pen = args.penalties.resolve(inst.kind());
  const IsingModel model = normalize(qubo_to_ising(to_qubo(inst, pen)));
  const std::size_t n_qubits = model.n_qubits();

  const QaoaParams init = linear_ramp(args.p, args.delta);
  const std::size_t budget = args.budget_multiplier * n_qubits * args.p;

  const std::string label =
      !args.label.empty() ? args.label : to_string(inst.kind()) + std::to_string(inst.size());

  OptimizeResult result;
  if (budget == 0) {  // keep the ramp untouched, but still record its value
    const Evolver evolver(model);
    result.best_params = init;
    result.best_expectation = evolver.expectation(evolver.evolve(init));
    result.n_evals = 1;
    result.trace.push_back({0, init, result.best_expectation});
  } else {
    OptimizerConfig config;
    config.max_evals = budget;
    config.initial_step = args.initial_step;
    config.tolerance = args.tolerance;
    result = optimize(model, init, config);
  }

  const auto bank_file = resolve_out(args.bank_path, "bank.json");
  ParameterBank bank;
  if (std::filesystem::exists(bank_file)) bank = ParameterBank::from_json_string(read_file(bank_file));
  BankEntry entry;
  entry.params = result.best_params;
  entry.provenance = {to_string(inst.kind()), inst.size(),          inst.seed(),
                      args.delta,             budget != 0 ? result.n_evals : 0, result.best_expectation};
  bank.put(label, entry);
  write_file_atomic(bank_file, bank.to_json_string());

  const auto trace_file = resolve_out(args.trace_path, "trace_" + label + ".csv");
  std::ostringstream trace;
  write_trace_csv(trace, result);
  write_file_atomic(trace_file, trace.str());

  std::cout << "instance " << to_string(inst.kind()) << "(" << inst.size() << ") seed " << inst.seed()
            << ": " << n_qubits << " qubits\n";
  std::cout << "budget " << budget << " evaluations, used " << result.n_evals << "\n";
  std::cout << "best expectation " << format_double(result.best_expectation) << "\n";
  if (n_qubits <= 20) {
    const GroundTruth truth = brute_force(model);
    const Evolver evolver(model);
    const double p_init = probability_of(evolver.evolve(init), truth.ground_states);
    const double p_best = probability_of(evolver.evolve(result.best_params), truth.ground_states);
    std::cout << "ground-state probability: ramp " << format_double(p_init) << ", best "
              << format_double(p_best) << " (grover " << format_double(grover_baseline(n_qubits))
              << ")\n";
  }
  std::cout << "bank entry '" << label << "' -> " << bank_file.string() << "\n";
  std::cout << "trace -> " << trace_file.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- transfer

struct TransferArgs {
  PenaltyFlags penalties;
  std::string bank_path;
  std::string entry;
  std::string kinds = "mis,maxcut,kp,po";
  std::string sizes = "8,12,14";
  std::size_t n_seeds = 5;
  std::uint64_t seed_base = 1;
  std::string out_prefix;
};

int run_transfer(const TransferArgs& args) {
  if (args.bank_path.empty()) throw ConfigError("transfer: --bank is required");
  const ParameterBank bank = ParameterBank::from_json_string(read_file(args.bank_path));
  const BankEntry& entry = bank.get(args.entry);

  const auto kinds = parse_kind_list(args.kinds);
  const auto sizes = parse_size_list(args.sizes);
  if (args.n_seeds == 0) throw ConfigError("transfer: --n-seeds must be positive");

  std::vector<ProblemInstance> targets;
  std::map<ProblemKind, PenaltyConfig> penalties;
  for (const ProblemKind kind : kinds) {
    penalties[kind] = args.penalties.resolve(kind);
    for (const std::size_t size : sizes)
      for (std::uint64_t s = 0; s < args.n_seeds; ++s)
        targets.push_back(generate(kind, size, args.seed_base + s));
  }

  const SweepReport report = sweep(args.entry, entry.params, targets, penalties);

  const std::string prefix = !args.out_prefix.empty() ? args.out_prefix : "transfer_" + args.entry;
  for (const ProblemKind kind : kinds_in(report)) {
    std::ostringstream csv;
    write_sweep_csv(csv, report, kind);
    const auto path = output_dir() / (prefix + "_" + to_string(kind) + ".csv");
    write_file_atomic(path, csv.str());
    std::cout << "wrote " << path.string() << "\n";
  }

  json record = record_header("transfer");
  record["config"] = json{{"bank", args.bank_path},       {"entry", args.entry},
                          {"kinds", args.kinds},          {"sizes", args.sizes},
                          {"n_seeds", args.n_seeds},      {"seed_base", args.seed_base},
                          {"penalty_overrides", args.penalties.to_json()}};
  record["source_entry"] = json{{"label", args.entry},
                                {"params", params_to_json(entry.params)},
                                {"source", json::parse(bank.to_json_string())["entries"][args.entry]["source"]}};
  record["report"] = json::parse(to_json_string(report));
  const auto record_path = output_dir() / (prefix + "_record.json");
  write_file_atomic(record_path, record.dump(2) + "\n");
  std::cout << "wrote " << record_path.string() << "\n";

  for (const auto& cell : report.cells) {
    std::cout << to_string(cell.kind) << " size " << cell.size << " (" << cell.n_qubits
              << " qubits): mean " << format_double(cell.mean) << " vs grover "
              << format_double(cell.grover) << (cell.mean >= cell.grover ? " [above]" : " [below]");
    if (!cell.errors.empty()) std::cout << " (" << cell.errors.size() << " failed)";
    std::cout << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  InstanceFlags instance;
  PenaltyFlags penalties;
  std::string bank_path;
  std::string entry;
  std::size_t p = 10;
  double delta = 0.7;
  std::size_t shots = 500;
  std::uint64_t sample_seed = 1;
  bool mitigate_flag = false;
  std::string out;
};

int run_sample(const SampleArgs& args) {
  const ProblemInstance inst = args.instance.load();
  const PenaltyConfig pen = args.penalties.resolve(inst.kind());
  const IsingModel model = normalize(qubo_to_ising(to_qubo(inst, pen)));

  QaoaParams params;
  std::string source = "linear_ramp";
  if (!args.bank_path.empty()) {
    if (args.entry.empty()) throw ConfigError("sample: --entry is required with --bank");
    const ParameterBank bank = ParameterBank::from_json_string(read_file(args.bank_path));
    params = bank.get(args.entry).params;
    source = args.entry;
  } else {
    params = linear_ramp(args.p, args.delta);
  }

  const StateVector state = evolve(model, params);
  const SampleSet samples = sample(state, args.shots, args.sample_seed);

  json out = record_header("sample");
  out["instance"] = json::parse(to_json_string(inst));
  out["params_source"] = source;
  out["params"] = params_to_json(params);
  out["shots"] = args.shots;
  out["sample_seed"] = args.sample_seed;
  json counts = json::object();
  for (const auto& [bits, count] : samples.counts) counts[bits] = count;
  out["counts"] = counts;

  if (args.mitigate_flag) {
    const GroundTruth truth = brute_force(model);
    const auto [fixed, report] = mitigate(samples, model, truth.ground_states);
    json fixed_counts = json::object();
    for (const auto& [bits, count] : fixed.counts) fixed_counts[bits] = count;
    out["mitigation"] = json{{"counts", fixed_counts},
                             {"raw_optimal_fraction", report.raw_optimal_fraction},
                             {"mitigated_optimal_fraction", report.mitigated_optimal_fraction},
                             {"raw_within_distance1_fraction", report.raw_within_distance1_fraction},
                             {"moved_samples", report.moved_samples},
                             {"ground_states", truth.ground_states}};
    std::cout << "optimal fraction raw " << format_double(report.raw_optimal_fraction) << " -> mitigated "
              << format_double(report.mitigated_optimal_fraction) << " (moved " << report.moved_samples
              << " shots)\n";
  }

  const std::string name = "samples_" + to_string(inst.kind()) + "_" + std::to_string(inst.size()) +
                           "_" + std::to_string(inst.seed()) + ".json";
  const auto path = resolve_out(args.out, name);
  write_file_atomic(path, out.dump(2) + "\n");
  std::cout << "wrote " << path.string() << " (" << samples.counts.size() << " distinct bitstrings)\n";
  return 0;
}

// ---------------------------------------------------------------- schedule

struct ScheduleArgs {
  std::string bank_path;
  std::string entry;
  std::string mode = "mixer";
  double t_f_us = 20.0;
  std::string table_path;
  std::string out;
};

int run_schedule(const ScheduleArgs& args) {
  if (args.bank_path.empty()) throw ConfigError("schedule: --bank is required");
  const ParameterBank bank = ParameterBank::from_json_string(read_file(args.bank_path));
  const BankEntry& entry = bank.get(args.entry);
  const ScheduleMode mode = schedule_mode_from_string(args.mode);

  ScheduleTable table = ScheduleTable::synthetic_linear();
  if (!args.table_path.empty()) {
    std::istringstream in(read_file(args.table_path));
    table = ScheduleTable::from_csv(in);
  }

  const Schedule sched = schedule_from_params(entry.params, table, mode, args.t_f_us);
  std::ostringstream csv;
  write_schedule_csv(csv, sched, mode, args.entry);
  const auto path = resolve_out(args.out, "schedule_" + args.entry + "_" + args.mode + ".csv");
  write_file_atomic(path, csv.str());
  std::cout << "wrote " << path.string() << " (" << sched.points.size() << " points)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA transfer-learning workbench for Ising-encoded optimization problems"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Draw a problem instance and write it as JSON");
  gen_args.instance.attach(gen);
  gen->add_option("--out", gen_args.out, "Output path (default: <kind>_<size>_<seed>.json)");

  OptimizeArgs opt_args;
  auto* opt = app.add_subcommand("optimize", "Optimize QAOA angles for an instance and bank them");
  opt_args.instance.attach(opt);
  opt_args.penalties.attach(opt);
  opt->add_option("--p", opt_args.p, "QAOA depth")->capture_default_str();
  opt->add_option("--delta", opt_args.delta, "Linear-ramp height")->capture_default_str();
  opt->add_option("--budget-multiplier", opt_args.budget_multiplier,
                  "Evaluation budget per qubit per layer; 0 banks the unoptimized ramp")
      ->capture_default_str();
  opt->add_option("--initial-step", opt_args.initial_step, "Initial simplex edge length")
      ->capture_default_str();
  opt->add_option("--tolerance", opt_args.tolerance, "Early-stop objective spread")->capture_default_str();
  opt->add_option("--label", opt_args.label, "Bank entry label (default: <kind><size>)");
  opt->add_option("--bank", opt_args.bank_path, "Parameter bank file (default: bank.json)");
  opt->add_option("--trace", opt_args.trace_path, "Trace CSV path (default: trace_<label>.csv)");

  TransferArgs tr_args;
  auto* tr = app.add_subcommand("transfer", "Evaluate banked angles across problem families");
  tr_args.penalties.attach(tr);
  tr->add_option("--bank", tr_args.bank_path, "Parameter bank file")->required();
  tr->add_option("--entry", tr_args.entry, "Bank entry label")->required();
  tr->add_option("--kinds", tr_args.kinds, "Comma-separated target kinds")->capture_default_str();
  tr->add_option("--sizes", tr_args.sizes, "Comma-separated target sizes")->capture_default_str();
  tr->add_option("--n-seeds", tr_args.n_seeds, "Instances per (kind, size)")->capture_default_str();
  tr->add_option("--seed-base", tr_args.seed_base, "First instance seed")->capture_default_str();
  tr->add_option("--out-prefix", tr_args.out_prefix, "Output prefix (default: transfer_<entry>)");

  SampleArgs sm_args;
  auto* sm = app.add_subcommand("sample", "Sample measurement shots from an evolved state");
  sm_args.instance.attach(sm);
  sm_args.penalties.attach(sm);
  sm->add_option("--bank", sm_args.bank_path, "Parameter bank file (omit to use a linear ramp)");
  sm->add_option("--entry", sm_args.entry, "Bank entry label");
  sm->add_option("--p", sm_args.p, "Ramp depth when no bank is given")->capture_default_str();
  sm->add_option("--delta", sm_args.delta, "Ramp height when no bank is given")->capture_default_str();
  sm->add_option("--shots", sm_args.shots, "Number of shots")->capture_default_str();
  sm->add_option("--sample-seed", sm_args.sample_seed, "Measurement seed")->capture_default_str();
  sm->add_flag("--mitigate", sm_args.mitigate_flag, "Apply single-bit-flip error mitigation");
  sm->add_option("--out", sm_args.out, "Output path (default: samples_<kind>_<size>_<seed>.json)");

  ScheduleArgs sc_args;
  auto* sc = app.add_subcommand("schedule", "Synthesize an annealing schedule from banked angles");
  sc->add_option("--bank", sc_args.bank_path, "Parameter bank file")->required();
  sc->add_option("--entry", sc_args.entry, "Bank entry label")->required();
  sc->add_option("--mode", sc_args.mode, "Matching mode: mixer or cost")->capture_default_str();
  sc->add_option("--t-f", sc_args.t_f_us, "Total anneal time in microseconds")->capture_default_str();
  sc->add_option("--table", sc_args.table_path, "Device table CSV (default: built-in linear table)");
  sc->add_option("--out", sc_args.out, "Output path (default: schedule_<entry>_<mode>.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return run_generate(gen_args);
    if (opt->parsed()) return run_optimize(opt_args);
    if (tr->parsed()) return run_transfer(tr_args);
    if (sm->parsed()) return run_sample(sm_args);
    if (sc->parsed()) return run_schedule(sc_args);
    throw ConfigError("no subcommand given");
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

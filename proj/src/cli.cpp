#include "lrdmd/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrdmd/csv_io.hpp"
#include "lrdmd/errors.hpp"
#include "lrdmd/modes.hpp"
#include "lrdmd/random.hpp"
#include "lrdmd/rom.hpp"
#include "lrdmd/snapshot_data.hpp"
#include "lrdmd/solvers.hpp"
#include "lrdmd/toy_bench.hpp"

#ifndef LRDMD_VERSION
#define LRDMD_VERSION "0.0.0"
#endif

namespace lrdmd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool strict_rank = false;
  double svd_tol = kDefaultRankTol;

  FitOptions fit_options() const {
    FitOptions o;
    o.svd_tol = svd_tol;
    o.strict_rank = strict_rank;
    return o;
  }
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Written next to every output artifact.
void write_manifest(const fs::path& path, const std::string& command, const json& parameters,
                    const GlobalOptions& global, const std::vector<fs::path>& inputs,
                    const std::vector<fs::path>& outputs) {
  json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["parameters"]["svd_tol"] = global.svd_tol;
  m["parameters"]["strict_rank"] = global.strict_rank;
  m["seed"] = global.seed_given ? json(global.seed) : json(nullptr);
  m["rng"] = std::string(NormalSampler::kName);
  m["inputs"] = json::array();
  for (const auto& p : inputs) m["inputs"].push_back(p.string());
  m["outputs"] = json::array();
  for (const auto& p : outputs) m["outputs"].push_back(p.string());
  m["version"] = LRDMD_VERSION;
  m["timestamp"] = utc_timestamp();
  write_text(path, m.dump(2) + "\n");
}

fs::path sidecar_manifest(const fs::path& artifact) {
  return fs::path(artifact.string() + ".manifest.json");
}

void require_rank(Eigen::Index k) {
  if (k < 1) throw ValidationError("rank must be >= 1");
}

Eigen::VectorXd resolve_theta(const std::string& source, const SnapshotSet& snapshots) {
  Eigen::VectorXd theta =
      source == "first" ? snapshots.first_state() : read_vector_csv(fs::path(source));
  if (theta.size() != snapshots.state_dim()) {
    throw ValidationError("theta has length " + std::to_string(theta.size()) +
                          ", expected n=" + std::to_string(snapshots.state_dim()));
  }
  return theta;
}

json rank_report_json(const RankReport& r) {
  return json{{"rank_x", r.rank_x},
              {"rank_y", r.rank_y},
              {"m", r.columns},
              {"n", r.state_dim},
              {"tolerance", r.tolerance},
              {"m_le_n", r.columns_within_dim},
              {"full_column_rank", r.full_column_rank}};
}

void emit_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

std::string complex_header(const std::string& prefix, Eigen::Index count) {
  std::string h;
  for (Eigen::Index i = 1; i <= count; ++i) {
    h += "," + prefix + std::to_string(i) + "_re," + prefix + std::to_string(i) + "_im";
  }
  return h;
}

std::string complex_cells(const std::complex<double>& z) {
  return "," + format_double(z.real()) + "," + format_double(z.imag());
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string setting = "ii";
  Eigen::Index n = 50;
  Eigen::Index r = 30;
  Eigen::Index m = 40;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, const GlobalOptions& g, std::ostream& out) {
  BenchConfig cfg;
  cfg.n = a.n;
  cfg.r = a.r;
  cfg.m = a.m;
  cfg.seed = g.seed;
  cfg.k_values = {1};
  cfg.validate();
  const auto dataset = make_bench_dataset(cfg, parse_setting(a.setting));
  const fs::path path(a.out);
  save_snapshots(dataset.snapshots, path);
  write_manifest(sidecar_manifest(path), "generate",
                 json{{"setting", a.setting}, {"n", a.n}, {"r", a.r}, {"m", a.m},
                      {"normalization", dataset.model.normalization}},
                 g, {}, {path});
  out << "wrote " << dataset.snapshots.trajectory_count() << " trajectories x "
      << dataset.snapshots.steps() << " snapshots to " << path.string() << '\n';
  return kSuccess;
}

struct ValidateArgs {
  std::string input;
  std::string out;
};

int cmd_validate(const ValidateArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto data = build_data_matrices(load_snapshots(a.input));
  const RankReport report = validate_rank_assumptions(data, g.svd_tol);
  const json j = rank_report_json(report);
  out << j.dump(2) << '\n';
  if (!a.out.empty()) {
    write_text(a.out, j.dump(2) + "\n");
    write_manifest(sidecar_manifest(a.out), "validate", json::object(), g, {a.input}, {a.out});
  }
  return kSuccess;
}

struct FitArgs {
  std::string input;
  std::string method = "optimal";
  Eigen::Index rank = 0;
  std::string out = "fit_out";
};

int cmd_fit(const FitArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const Method method = parse_method(a.method);
  if (method != Method::ExactFull) require_rank(a.rank);
  const auto data = build_data_matrices(load_snapshots(a.input));
  const RankReport report = validate_rank_assumptions(data, g.svd_tol);
  const DmdOperator op = fit(method, data, a.rank, g.fit_options());
  emit_warnings(op.warnings, err);
  const double residual = residual_norm(op, data);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_matrix_csv(op.left, dir / "left.csv");
  write_matrix_csv(op.right, dir / "right.csv");
  write_text(dir / "residual.txt", format_double(residual) + "\n");
  json diag = rank_report_json(report);
  diag["residual"] = residual;
  diag["y_norm"] = data.Y().norm();
  diag["declared_rank"] = op.declared_rank;
  diag["factor_rank"] = op.factor_rank();
  diag["method"] = std::string(to_string(op.method));
  diag["warnings"] = op.warnings;
  write_text(dir / "diagnostics.json", diag.dump(2) + "\n");
  write_manifest(dir / "manifest.json", "fit", json{{"method", a.method}, {"rank", a.rank}}, g,
                 {a.input},
                 {dir / "left.csv", dir / "right.csv", dir / "residual.txt",
                  dir / "diagnostics.json"});
  out << "method=" << to_string(op.method) << " rank=" << op.declared_rank
      << " residual=" << format_double(residual) << '\n';
  return kSuccess;
}

struct ModesArgs {
  std::string input;
  Eigen::Index rank = 0;
  std::string variant = "exact";
  std::string theta = "first";
  Eigen::Index horizon = 10;
  double pair_tol = 1e-8;
  std::string out = "modes_out";
};

int cmd_modes(const ModesArgs& a, const GlobalOptions& g, std::ostream& out,
              std::ostream& err) {
  require_rank(a.rank);
  const ModeVariant variant = parse_mode_variant(a.variant);
  if (a.horizon < 1) throw ValidationError("horizon must be >= 1");
  const auto snapshots = load_snapshots(a.input);
  const auto data = build_data_matrices(snapshots);
  const Eigen::VectorXd theta = resolve_theta(a.theta, snapshots);

  const OptimalFit fitted = fit_optimal_lowrank_dmd(data, a.rank, g.fit_options());
  emit_warnings(fitted.op.warnings, err);
  const DmdModes modes = compute_modes(fitted.factors, variant, g.svd_tol);
  emit_warnings(modes.warnings, err);
  const double op_norm = fitted.op.frobenius_norm();
  const EigenpairReport report = verify_eigenpairs(modes, fitted.op, a.pair_tol * op_norm);
  const AmplitudeSchedule amps = amplitudes(modes, theta, a.horizon);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::string ev = "index,lambda_re,lambda_im\n";
  for (Eigen::Index i = 0; i < modes.count(); ++i) {
    ev += std::to_string(i + 1) + complex_cells(modes.eigenvalues(i)) + "\n";
  }
  write_text(dir / "eigenvalues.csv", ev);

  std::string mt = "row" + complex_header("phi", modes.count()) + "\n";
  for (Eigen::Index r = 0; r < modes.modes.rows(); ++r) {
    mt += std::to_string(r);
    for (Eigen::Index i = 0; i < modes.count(); ++i) mt += complex_cells(modes.modes(r, i));
    mt += "\n";
  }
  write_text(dir / "modes.csv", mt);

  std::string at = "t" + complex_header("nu", modes.count()) + "\n";
  for (Eigen::Index t = 0; t < amps.values.rows(); ++t) {
    at += std::to_string(t + 1);
    for (Eigen::Index i = 0; i < modes.count(); ++i) at += complex_cells(amps.values(t, i));
    at += "\n";
  }
  write_text(dir / "amplitudes.csv", at);

  std::string rt = "index,residual,tolerance,pass\n";
  for (std::size_t i = 0; i < report.residuals.size(); ++i) {
    rt += std::to_string(i + 1) + "," + format_double(report.residuals[i]) + "," +
          format_double(report.tolerance) + "," + (report.passed[i] ? "1" : "0") + "\n";
  }
  write_text(dir / "eigenpair_residuals.csv", rt);

  write_manifest(dir / "manifest.json", "modes",
                 json{{"rank", a.rank}, {"variant", a.variant}, {"theta", a.theta},
                      {"horizon", a.horizon}, {"pair_tol", a.pair_tol}},
                 g, {a.input},
                 {dir / "eigenvalues.csv", dir / "modes.csv", dir / "amplitudes.csv",
                  dir / "eigenpair_residuals.csv"});
  out << "modes=" << modes.count() << " variant=" << to_string(variant)
      << " max_eigenpair_residual=" << format_double(report.max_residual())
      << " relative=" << format_double(op_norm > 0 ? report.max_residual() / op_norm : 0.0)
      << " all_pass=" << (report.all_passed() ? "true" : "false") << '\n';
  return kSuccess;
}

struct SimulateArgs {
  std::string input;
  Eigen::Index rank = 0;
  Eigen::Index horizon = 10;
  std::string path = "reduced";
  std::string theta = "first";
  std::string variant = "exact";
  Eigen::Index stride = 1;
  std::string out = "trajectory.csv";
};

int cmd_simulate(const SimulateArgs& a, const GlobalOptions& g, std::ostream& out,
                 std::ostream& err) {
  require_rank(a.rank);
  if (a.horizon < 1) throw ValidationError("horizon must be >= 1");
  if (a.path != "reduced" && a.path != "modal") {
    throw ValidationError("unknown path '" + a.path + "' (expected reduced|modal)");
  }
  const ModeVariant variant = parse_mode_variant(a.variant);
  const auto snapshots = load_snapshots(a.input);
  const auto data = build_data_matrices(snapshots);
  const Eigen::VectorXd theta = resolve_theta(a.theta, snapshots);
  const OptimalFit fitted = fit_optimal_lowrank_dmd(data, a.rank, g.fit_options());
  emit_warnings(fitted.op.warnings, err);

  SimulationOptions sim;
  sim.stride = a.stride;
  RomTrajectory traj;
  if (a.path == "reduced") {
    traj = simulate_reduced(fitted.factors, theta, a.horizon, sim);
  } else {
    const DmdModes modes = compute_modes(fitted.factors, variant, g.svd_tol);
    emit_warnings(modes.warnings, err);
    traj = reconstruct_from_modes(modes, amplitudes(modes, theta, a.horizon), sim);
  }
  emit_warnings(traj.warnings, err);

  const fs::path path(a.out);
  write_text(path, trajectory_to_csv(traj));
  write_manifest(sidecar_manifest(path), "simulate",
                 json{{"rank", a.rank}, {"horizon", a.horizon}, {"path", a.path},
                      {"theta", a.theta}, {"variant", a.variant}, {"stride", a.stride}},
                 g, {a.input}, {path});
  out << "wrote " << traj.states.size() << " states to " << path.string() << '\n';
  return kSuccess;
}

struct BenchArgs {
  std::string config;
  std::optional<Eigen::Index> n, r, m;
  std::optional<std::string> settings, methods, k_values, out;
  std::optional<unsigned> threads;
  bool timing = false;
};

int cmd_bench(const BenchArgs& a, const GlobalOptions& g, std::ostream& out) {
  BenchConfig cfg = a.config.empty() ? BenchConfig{} : load_bench_config(a.config);
  if (a.n) cfg.n = *a.n;
  if (a.r) cfg.r = *a.r;
  if (a.m) cfg.m = *a.m;
  if (a.settings) {
    cfg.settings.clear();
    std::stringstream s(*a.settings);
    for (std::string item; std::getline(s, item, ',');) cfg.settings.push_back(parse_setting(item));
  }
  if (a.methods) {
    cfg.methods.clear();
    std::stringstream s(*a.methods);
    for (std::string item; std::getline(s, item, ',');) {
      cfg.methods.push_back(parse_method_letter(item));
    }
  }
  if (a.k_values) cfg.k_values = parse_index_list(*a.k_values);
  if (a.out) cfg.output = *a.out;
  if (a.threads) cfg.threads = *a.threads;
  if (a.timing) cfg.timing = true;
  if (g.seed_given) {
    cfg.seed = g.seed;
    cfg.seed_given = true;
  }
  if (!cfg.seed_given) throw ValidationError("bench requires --seed (or a seed key in the config)");
  cfg.svd_tol = g.svd_tol;
  cfg.validate();

  const BenchResult result = run_benchmark(cfg);
  write_text(cfg.output, result.to_csv());

  json params;
  params["n"] = cfg.n;
  params["r"] = cfg.r;
  params["m"] = cfg.m;
  params["settings"] = json::array();
  for (auto s : cfg.settings) params["settings"].push_back(std::string(to_string(s)));
  params["methods"] = json::array();
  for (auto mth : cfg.methods) params["methods"].push_back(std::string(1, method_letter(mth)));
  params["k_values"] = cfg.resolved_k_values();
  params["threads"] = cfg.threads;
  params["timing"] = cfg.timing;
  GlobalOptions mg = g;
  mg.seed = cfg.seed;
  mg.seed_given = true;
  std::vector<fs::path> inputs;
  if (!a.config.empty()) inputs.emplace_back(a.config);
  write_manifest(sidecar_manifest(cfg.output), "bench", params, mg, inputs, {cfg.output});

  std::size_t failures = 0;
  for (const auto& row : result.rows) failures += row.error.has_value() ? 1 : 0;
  out << "wrote " << result.rows.size() << " rows to " << cfg.output.string();
  if (failures > 0) out << " (" << failures << " failed fits)";
  out << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal low-rank dynamic mode decomposition"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", LRDMD_VERSION);

  GlobalOptions global;
  auto* seed_opt = app.add_option("--seed", global.seed, "RNG seed")->capture_default_str();
  app.add_flag("--strict-rank", global.strict_rank, "Treat rank-deficient X as an error");
  app.add_option("--svd-tol", global.svd_tol, "Relative singular-value threshold")
      ->capture_default_str();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a toy snapshot CSV");
  generate->add_option("--setting", gen.setting, "i | ii | iii")->capture_default_str();
  generate->add_option("--n", gen.n)->capture_default_str();
  generate->add_option("--r", gen.r)->capture_default_str();
  generate->add_option("--m", gen.m)->capture_default_str();
  generate->add_option("--out", gen.out, "Output CSV")->required();

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Report numerical ranks of X and Y");
  validate->add_option("--input", val.input, "Snapshot CSV")->required();
  validate->add_option("--out", val.out, "Optional JSON report");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a DMD operator");
  fit_cmd->add_option("--input", fit_args.input, "Snapshot CSV")->required();
  fit_cmd->add_option("--method", fit_args.method, "optimal | truncated | projected | exact")
      ->capture_default_str();
  fit_cmd->add_option("--rank", fit_args.rank, "Target rank k");
  fit_cmd->add_option("--out", fit_args.out, "Output directory")->capture_default_str();

  ModesArgs modes_args;
  auto* modes_cmd = app.add_subcommand("modes", "Low-rank DMD modes and amplitudes");
  modes_cmd->add_option("--input", modes_args.input, "Snapshot CSV")->required();
  modes_cmd->add_option("--rank", modes_args.rank, "Target rank k")->required();
  modes_cmd->add_option("--variant", modes_args.variant, "as-stated | exact")
      ->capture_default_str();
  modes_cmd->add_option("--theta", modes_args.theta, "CSV vector or 'first'")
      ->capture_default_str();
  modes_cmd->add_option("--horizon", modes_args.horizon, "Amplitude horizon T")
      ->capture_default_str();
  modes_cmd->add_option("--pair-tol", modes_args.pair_tol,
                        "Eigenpair tolerance relative to ||A||_F")
      ->capture_default_str();
  modes_cmd->add_option("--out", modes_args.out, "Output directory")->capture_default_str();

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Reduced-order trajectory");
  simulate->add_option("--input", sim_args.input, "Snapshot CSV")->required();
  simulate->add_option("--rank", sim_args.rank, "Target rank k")->required();
  simulate->add_option("--horizon", sim_args.horizon, "Number of states T")
      ->capture_default_str();
  simulate->add_option("--path", sim_args.path, "reduced | modal")->capture_default_str();
  simulate->add_option("--theta", sim_args.theta, "CSV vector or 'first'")
      ->capture_default_str();
  simulate->add_option("--variant", sim_args.variant, "Mode variant for --path modal")
      ->capture_default_str();
  simulate->add_option("--stride", sim_args.stride, "Emit every stride-th state")
      ->capture_default_str();
  simulate->add_option("--out", sim_args.out, "Trajectory CSV")->capture_default_str();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Toy-model rank sweep");
  bench->add_option("--config", bench_args.config, "key = value config file");
  bench->add_option("--n", bench_args.n);
  bench->add_option("--r", bench_args.r);
  bench->add_option("--m", bench_args.m);
  bench->add_option("--settings", bench_args.settings, "e.g. i,ii,iii");
  bench->add_option("--methods", bench_args.methods, "e.g. a,b,c");
  bench->add_option("--k-values", bench_args.k_values, "e.g. 1..40");
  bench->add_option("--threads", bench_args.threads, "0 = hardware concurrency");
  bench->add_flag("--timing", bench_args.timing, "Record wall-clock times");
  bench->add_option("--out", bench_args.out, "Result CSV");

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  if (storage.empty()) storage.emplace_back("lrdmd");
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  global.seed_given = seed_opt->count() > 0;

  try {
    if (*generate) return cmd_generate(gen, global, out);
    if (*validate) return cmd_validate(val, global, out);
    if (*fit_cmd) return cmd_fit(fit_args, global, out, err);
    if (*modes_cmd) return cmd_modes(modes_args, global, out, err);
    if (*simulate) return cmd_simulate(sim_args, global, out, err);
    if (*bench) return cmd_bench(bench_args, global, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical guard: " << e.what() << '\n';
    return kNumericalGuard;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace lrdmd::cli

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lrdmd/modes.hpp"
#include "lrdmd/rom.hpp"
#include "lrdmd/solvers.hpp"
#include "lrdmd/toy_bench.hpp"
#include "support/oracles.hpp"

using namespace lrdmd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr std::uint64_t kSeed = 2024;
const std::vector<Setting> kSettings{Setting::I, Setting::II, Setting::III};
const std::vector<Method> kMethods{Method::Optimal, Method::TruncatedExact, Method::Projected};

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BenchConfig bench_config() {
  BenchConfig cfg;
  cfg.seed = kSeed;
  return cfg;
}

const BenchResult& bench() {
  static const BenchResult result = run_benchmark(bench_config());
  return result;
}

const BenchRow& row(Setting s, Method m, Eigen::Index k) {
  for (const auto& r : bench().rows) {
    if (r.setting == s && r.method == m && r.k == k) return r;
  }
  throw std::runtime_error("missing benchmark row");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string label(Setting s, Method m, Eigen::Index k) {
  return std::string(to_string(s)) + "/" + method_letter(m) + "/k=" + std::to_string(k);
}

void note_failure(Verdict& v, const std::string& what) {
  if (v.pass) v.detail = "first violation " + what;
  v.pass = false;
}

Verdict dominance() {
  const auto start = Clock::now();
  const auto& res = bench();
  const double elapsed = seconds_since(start);
  Verdict v;
  double worst = -std::numeric_limits<double>::infinity();
  for (Setting s : kSettings) {
    for (Eigen::Index k = 1; k <= 40; ++k) {
      const auto& a = row(s, Method::Optimal, k);
      for (Method other : {Method::TruncatedExact, Method::Projected}) {
        const auto& o = row(s, other, k);
        const double excess = (a.residual - o.residual) / a.y_norm;
        worst = std::max(worst, excess);
        if (!(a.residual <= o.residual + 1e-9 * a.y_norm)) note_failure(v, label(s, other, k));
      }
    }
  }
  if (elapsed >= 60.0) note_failure(v, "runtime " + fmt(elapsed) + " s");
  if (v.pass) {
    v.detail = std::to_string(res.rows.size()) + " rows, max (a-other)/||Y|| = " + fmt(worst) +
               ", " + fmt(elapsed) + " s";
  }
  return v;
}

Verdict oracle_optimality() {
  const auto start = Clock::now();
  Verdict v;
  double worst = -std::numeric_limits<double>::infinity();
  int checked = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const MatrixXd X = oracle::random_matrix(6, 4, 1000 + inst);
    const MatrixXd Y = oracle::random_matrix(6, 4, 2000 + inst);
    const DataMatrices d(X, Y);
    for (Eigen::Index k = 1; k <= 3; ++k) {
      const double closed = residual_norm(fit_optimal_lowrank_dmd(d, k).op, d);
      const double als = oracle::als_lowrank_objective(X, Y, k, 50, 500, 3000 + inst * 10 + k);
      worst = std::max(worst, closed - als);
      ++checked;
      if (!(closed <= als + 1e-8)) {
        note_failure(v, "instance " + std::to_string(inst) + " k=" + std::to_string(k));
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) note_failure(v, "runtime " + fmt(elapsed) + " s");
  if (v.pass) {
    v.detail = std::to_string(checked) + " cases, max closed-ALS = " + fmt(worst) + ", " +
               fmt(elapsed) + " s";
  }
  return v;
}

Verdict eckart_young() {
  Verdict v;
  double worst = 0.0;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const Eigen::Index n = 12;
    const MatrixXd Y = oracle::random_matrix(n, n, seed);
    const DataMatrices d(MatrixXd::Identity(n, n), Y);
    for (Eigen::Index k = 1; k <= n; ++k) {
      const double gap =
          std::abs(residual_norm(fit_optimal_lowrank_dmd(d, k).op, d) - oracle::tail_norm(Y, k));
      worst = std::max(worst, gap);
      if (!(gap <= 1e-10)) note_failure(v, "seed " + std::to_string(seed) + " k=" + std::to_string(k));
    }
  }
  if (v.pass) v.detail = "max |residual - tail| = " + fmt(worst);
  return v;
}

Verdict setting_i_equivalence() {
  Verdict v;
  double worst = 0.0;
  for (Eigen::Index k = 1; k <= 40; ++k) {
    const auto& a = row(Setting::I, Method::Optimal, k);
    const auto& c = row(Setting::I, Method::Projected, k);
    const double gap = std::abs(a.residual - c.residual);
    worst = std::max(worst, gap / a.y_norm);
    if (!(gap <= std::max(1e-8 * a.residual, 1e-9 * a.y_norm))) {
      note_failure(v, "k=" + std::to_string(k) + " gap " + fmt(gap));
    }
  }
  if (v.pass) v.detail = "max |a-c|/||Y|| = " + fmt(worst);
  return v;
}

Verdict subspace_collapse() {
  Verdict v;
  std::vector<std::string> violations;
  double worst = 0.0;
  for (Setting s : kSettings) {
    for (Method m : kMethods) {
      double group_worst = 0.0;
      for (Eigen::Index k = 30; k <= 40; ++k) {
        const auto& r = row(s, m, k);
        const double rel = r.residual / r.y_norm;
        group_worst = std::max(group_worst, rel);
        if (!(r.residual <= 1e-6 * r.y_norm)) v.pass = false;
      }
      worst = std::max(worst, group_worst);
      if (group_worst > 1e-6) {
        violations.push_back(std::string(to_string(s)) + "/" + method_letter(m) +
                             " (max residual/||Y|| " + fmt(group_worst) + ")");
      }
    }
  }
  if (v.pass) {
    v.detail = "max residual/||Y|| over k>=30 = " + fmt(worst);
  } else {
    v.detail = "violations:";
    for (const auto& s : violations) v.detail += " " + s;
  }
  return v;
}

Verdict companion() {
  Verdict v;
  std::ostringstream detail;
  for (Setting s : kSettings) {
    const double c = companion_residual(make_bench_dataset(bench_config(), s).data);
    const bool ok = s == Setting::I ? c <= 1e-8 : c >= 1e-3;
    if (!ok) v.pass = false;
    detail << to_string(s) << "=" << fmt(c) << " ";
  }
  v.detail = detail.str();
  return v;
}

Verdict exact_variant() {
  Verdict v;
  double worst = 0.0;
  for (Setting s : kSettings) {
    const auto ds = make_bench_dataset(bench_config(), s);
    FitOptions opts;
    opts.cap_rank_to_data = true;
    for (Eigen::Index k : {5, 15, 30}) {
      const auto fitted = fit_optimal_lowrank_dmd(ds.data, k, opts);
      const DmdModes modes = compute_modes(fitted.factors, ModeVariant::ExactReconstruction);
      const double norm = fitted.op.frobenius_norm();
      const auto report = verify_eigenpairs(modes, fitted.op, 1e-8 * norm);
      worst = std::max(worst, report.max_residual() / norm);
      if (!report.all_passed()) note_failure(v, label(s, Method::Optimal, k));
    }
  }
  if (v.pass) v.detail = "max residual/||A||_F = " + fmt(worst);
  return v;
}

double rel_err(const VectorXd& a, const VectorXd& b) {
  return (a - b).norm() / std::max(b.norm(), std::numeric_limits<double>::min());
}

Verdict rom_equivalence() {
  Verdict v;
  double worst_reduced = 0.0;
  for (Setting s : kSettings) {
    const auto ds = make_bench_dataset(bench_config(), s);
    FitOptions opts;
    opts.cap_rank_to_data = true;
    for (Eigen::Index k : {5, 15, 30}) {
      const auto fitted = fit_optimal_lowrank_dmd(ds.data, k, opts);
      const VectorXd theta = ds.snapshots.first_state();
      const auto traj = simulate_reduced(fitted.factors, theta, 10);
      const auto ref = oracle::dense_powers(materialize(fitted.op), theta, 10);
      for (std::size_t t = 0; t < ref.size(); ++t) {
        const double e = rel_err(traj.states[t], ref[t]);
        worst_reduced = std::max(worst_reduced, e);
        if (!(e <= 1e-9)) note_failure(v, label(s, Method::Optimal, k) + " t=" + std::to_string(t + 1));
      }
    }
  }
  double worst_modal = 0.0;
  const Eigen::Index n = 10;
  const MatrixXd Y = 0.4 * oracle::random_symmetric(n, 77);
  const DataMatrices sym(MatrixXd::Identity(n, n), Y);
  const VectorXd theta = oracle::random_matrix(n, 1, 78).col(0);
  for (Eigen::Index k : {2, 5, 10}) {
    const auto fitted = fit_optimal_lowrank_dmd(sym, k);
    const DmdModes modes = compute_modes(fitted.factors);
    const auto modal = reconstruct_from_modes(modes, amplitudes(modes, theta, 10));
    const auto reduced = simulate_reduced(fitted.factors, theta, 10);
    for (std::size_t t = 0; t < reduced.states.size(); ++t) {
      const double e = rel_err(modal.states[t], reduced.states[t]);
      worst_modal = std::max(worst_modal, e);
      if (!(e <= 1e-8)) note_failure(v, "symmetric k=" + std::to_string(k));
    }
  }
  if (v.pass) {
    v.detail = "reduced vs dense " + fmt(worst_reduced) + ", modal vs reduced " + fmt(worst_modal);
  }
  return v;
}

Verdict determinism() {
  Verdict v;
  const std::string first = run_benchmark(bench_config()).to_csv();
  const std::string second = run_benchmark(bench_config()).to_csv();
  auto threaded = bench_config();
  threaded.threads = 4;
  const std::string third = run_benchmark(threaded).to_csv();
  v.pass = first == second && first == third;
  v.detail = v.pass ? std::to_string(first.size()) + " identical bytes (1, 1 and 4 threads)"
                    : "CSV bytes differ";
  return v;
}

Verdict monotonicity() {
  Verdict v;
  double worst = 0.0;
  for (Setting s : kSettings) {
    for (Eigen::Index k = 2; k <= 40; ++k) {
      const double inc = row(s, Method::Optimal, k).residual - row(s, Method::Optimal, k - 1).residual;
      worst = std::max(worst, inc);
      if (!(inc <= 1e-12)) note_failure(v, label(s, Method::Optimal, k));
    }
  }
  if (v.pass) v.detail = "max increase = " + fmt(worst);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 optimality dominance", dominance},
      {"2 oracle optimality", oracle_optimality},
      {"3 eckart-young reduction", eckart_young},
      {"4 setting-i equivalence", setting_i_equivalence},
      {"5 subspace collapse", subspace_collapse},
      {"6 companion diagnostic", companion},
      {"7 exact-variant eigenpairs", exact_variant},
      {"8 rom equivalence", rom_equivalence},
      {"9 determinism", determinism},
      {"10 monotonicity", monotonicity},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

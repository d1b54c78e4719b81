#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "clt/certify.hpp"
#include "clt/config.hpp"
#include "clt/export.hpp"
#include "clt/metrics.hpp"
#include "clt/scenario.hpp"
#include "clt/sweep.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace clt;

namespace {

struct Common {
  std::string config_path;
  std::string task{"transporting"};
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  bool truth_force{false};
  std::string out{"."};
};

void add_common(CLI::App* app, Common& o) {
  app->add_option("--config", o.config_path, "scenario config file (JSON)");
  app->add_option("--task", o.task, "loading | transporting, used without --config")
      ->check(CLI::IsMember({"loading", "transporting"}));
  app->add_option("--seed", o.seed, "run seed");
  app->add_option("--dt", o.dt, "plant step, s");
  app->add_flag("--truth-force", o.truth_force, "feed the admittance loop with truth forces");
  app->add_option("--out", o.out, "output directory");
}

ScenarioConfig resolve(const Common& o) {
  ScenarioConfig c = o.config_path.empty()
                         ? default_config(o.task == "loading" ? Task::loading_unloading_in_place
                                                              : Task::transporting)
                         : load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.dt) c.dt = *o.dt;
  if (o.truth_force) c.estimation.truth_force = true;
  c.validate();
  return c;
}

fs::path out_dir(const Common& o) {
  fs::create_directories(o.out);
  return fs::path(o.out);
}

void print_metrics(const std::string& label, const MetricsReport& m) {
  std::printf("%-14s d=%.4f", label.c_str(), m.d);
  if (m.d_n) std::printf(" d_n=%.4f", *m.d_n);
  std::printf(" beta=%.4f f_T=%.4f J_q=%.4f\n", m.beta_mean, m.tension_mean, m.jerk_mean);
}

int cmd_run(const Common& o) {
  const ScenarioConfig c = resolve(o);
  const RunLog log = run_scenario(c);
  const MetricsReport m = compute_metrics(log);
  const fs::path dir = out_dir(o);
  export_run(log, (dir / "run.csv").string());
  write_text((dir / "summary.json").string(), run_summary_json(log, m));
  save_config(c, (dir / "config.json").string());
  print_metrics(cell_label(c), m);
  std::printf("config %s seed %llu rows %zu\n", hash_hex(log.config_hash).c_str(),
              static_cast<unsigned long long>(log.seed), log.rows.size());
  return 0;
}

int cmd_sweep(const Common& o, std::size_t seeds, std::uint64_t first) {
  const ScenarioConfig base = resolve(o);
  const auto table = comparison_matrix(factor_grid(base), seed_range(first, seeds));
  const fs::path dir = out_dir(o);
  export_table(table, (dir / "table.csv").string());
  write_text((dir / "table.json").string(), table_json(table));
  for (const CellResult& r : table) {
    std::printf("%-12s n=%zu beta=%.4f+-%.4f f_T=%.4f+-%.4f J_q=%.4f+-%.4f d=%.4f+-%.4f", r.label.c_str(),
                r.runs, r.beta.mean, r.beta.se, r.tension.mean, r.tension.se, r.jerk.mean, r.jerk.se,
                r.d.mean, r.d.se);
    if (r.diverged) std::printf(" diverged=%zu", r.diverged);
    std::printf("\n");
  }
  return 0;
}

int cmd_certify(const Common& o, std::size_t seeds, std::uint64_t first) {
  const ScenarioConfig c = resolve(o);
  const CertificationReport r =
      certify_cvim(certification_inputs(c), c.cvim_params().shaping, seeds, first);
  const fs::path dir = out_dir(o);
  write_text((dir / "certificate.json").string(), certificate_json(r));
  std::printf("feasible %d recheck %d eps %.3e lambda1 %.4g lambda2 %.4g\n", r.setup.feasible,
              r.recheck, r.setup.eps, r.setup.lambda1, r.setup.lambda2);
  std::printf("envelope %zu/%zu decay %zu/%zu shaping %zu/%zu -> %s\n", r.envelope_passes,
              r.trials.size(), r.decay_passes, r.trials.size(), r.shaping_passes, r.trials.size(),
              r.pass ? "PASS" : "FAIL");
  return r.pass ? 0 : 1;
}

// RMS of |F_hat - F_c| over controller samples where an estimate exists,
// with F_c taken at the same controller instant (includes the estimator lag).
double force_rms(const RunLog& log) {
  double ss = 0.0;
  std::size_t n = 0;
  for (const LogRow& r : log.rows) {
    if (r.Fc_hat == Vec3::Zero() && r.f_T_hat == 0.0) continue;
    ss += (r.Fc_hat - r.Fc).squaredNorm();
    ++n;
  }
  return n ? std::sqrt(ss / static_cast<double>(n)) : 0.0;
}

int cmd_estimate_demo(const Common& o) {
  const ScenarioConfig base = resolve(o);
  struct Variant {
    const char* name;
    bool noise;
    bool truth;
  };
  const Variant variants[] = {{"estimate", true, false},
                              {"estimate-clean", false, false},
                              {"truth-noisy", true, true},
                              {"truth-clean", false, true}};
  nlohmann::json report = nlohmann::json::array();
  for (const Variant& v : variants) {
    ScenarioConfig c = base;
    if (!v.noise) c.estimation.noise = NoiseLevels::none();
    c.estimation.truth_force = v.truth;
    const RunLog log = run_scenario(c);
    const MetricsReport m = compute_metrics(log);
    const double rms = force_rms(log);
    std::printf("%-15s force_rms=%.4f N ", v.name, rms);
    print_metrics(cell_label(c), m);
    report.push_back({{"variant", v.name},
                      {"sensor_noise", v.noise},
                      {"truth_force", v.truth},
                      {"force_rms", rms},
                      {"d", m.d},
                      {"beta_mean", m.beta_mean},
                      {"f_T_mean", m.tension_mean},
                      {"J_q_mean", m.jerk_mean}});
  }
  write_text((out_dir(o) / "estimate_demo.json").string(), report.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cable-suspended hook transport simulator"};
  app.require_subcommand(1);

  Common run_o, sweep_o, cert_o, demo_o, cfg_o;
  std::size_t sweep_seeds = 10, cert_seeds = 100;
  std::uint64_t sweep_first = 1, cert_first = 1;

  auto* run = app.add_subcommand("run", "single scenario: run.csv, summary.json, config.json");
  add_common(run, run_o);

  auto* sweep = app.add_subcommand("sweep", "2x2x2 comparison matrix: table.csv, table.json");
  add_common(sweep, sweep_o);
  sweep->add_option("--seeds", sweep_seeds, "runs per cell");
  sweep->add_option("--first-seed", sweep_first, "first seed of the range");

  auto* cert = app.add_subcommand("certify", "CVIM stability certificate: certificate.json");
  add_common(cert, cert_o);
  cert->add_option("--seeds", cert_seeds, "bounded-force trials");
  cert->add_option("--first-seed", cert_first, "first trial seed");

  auto* demo = app.add_subcommand("estimate-demo", "estimator ablation: estimate_demo.json");
  add_common(demo, demo_o);

  auto* cfg = app.add_subcommand("default-config", "write the default config: config.json");
  add_common(cfg, cfg_o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_o);
    if (*sweep) return cmd_sweep(sweep_o, sweep_seeds, sweep_first);
    if (*cert) return cmd_certify(cert_o, cert_seeds, cert_first);
    if (*demo) return cmd_estimate_demo(demo_o);
    if (*cfg) {
      save_config(resolve(cfg_o), (out_dir(cfg_o) / "config.json").string());
      return 0;
    }
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

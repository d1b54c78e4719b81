#include "clt/sweep.hpp"

#include <cmath>

#include "clt/scenario.hpp"

namespace clt {

MetricStats mean_se(const std::vector<double>& x) {
  MetricStats s;
  if (x.empty()) return s;
  const double n = static_cast<double>(x.size());
  for (double v : x) s.mean += v;
  s.mean /= n;
  if (x.size() < 2) return s;
  double ss = 0.0;
  for (double v : x) ss += (v - s.mean) * (v - s.mean);
  s.se = std::sqrt(ss / (n - 1.0) / n);
  return s;
}

std::string cell_label(const ScenarioConfig& c) {
  return to_string(c.controller) + "/" + to_string(c.cable_mode) + "/" + to_string(c.stiffness_level);
}

std::vector<ScenarioConfig> factor_grid(const ScenarioConfig& base) {
  std::vector<ScenarioConfig> out;
  for (Controller m : {Controller::CVIM, Controller::SVIM})
    for (CableMode cm : {CableMode::VCL, CableMode::CCL})
      for (StiffnessLevel s : {StiffnessLevel::L, StiffnessLevel::H}) {
        ScenarioConfig c = base;
        c.controller = m;
        c.cable_mode = cm;
        c.stiffness_level = s;
        out.push_back(c);
      }
  return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = first + i;
  return s;
}

std::vector<CellResult> comparison_matrix(const std::vector<ScenarioConfig>& cells,
                                          const std::vector<std::uint64_t>& seeds) {
  std::vector<CellResult> table;
  for (const auto& cell : cells) {
    CellResult r;
    r.config = cell;
    if (!seeds.empty()) r.config.seed = seeds.front();
    r.label = cell_label(cell);
    std::vector<double> d, dn, b, f, j;
    for (std::uint64_t seed : seeds) {
      ScenarioConfig c = cell;
      c.seed = seed;
      try {
        const MetricsReport m = compute_metrics(run_scenario(c));
        r.per_run.push_back(m);
        d.push_back(m.d);
        if (m.d_n) dn.push_back(*m.d_n);
        b.push_back(m.beta_mean);
        f.push_back(m.tension_mean);
        j.push_back(m.jerk_mean);
      } catch (const DivergenceError&) {
        ++r.diverged;
      }
    }
    r.runs = r.per_run.size();
    r.d = mean_se(d);
    r.d_n = mean_se(dn);
    r.beta = mean_se(b);
    r.tension = mean_se(f);
    r.jerk = mean_se(j);
    table.push_back(std::move(r));
  }
  return table;
}

}  // namespace clt

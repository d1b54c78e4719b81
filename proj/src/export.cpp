#include "clt/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace clt {

using nlohmann::json;

namespace {

void put(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void put(std::string& out, const Vec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (i) out += ',';
    put(out, v(i));
  }
}

json stats(const MetricStats& s) { return {{"mean", s.mean}, {"se", s.se}}; }

}  // namespace

const std::vector<std::string>& run_csv_columns() {
  static const std::vector<std::string> cols{
      "t",     "xq_x",  "xq_y",   "xq_z",     "vq_x",     "vq_y",     "vq_z",      "alpha",     "beta",
      "L",     "L_dot", "Fc_x",   "Fc_y",     "Fc_z",     "Fc_hat_x", "Fc_hat_y",  "Fc_hat_z",  "f_T",
      "f_T_hat", "xqd_x", "xqd_y", "xqd_z",   "L_d",      "e_ac_norm", "dzeta_beta", "dzeta_L", "T_thrust"};
  return cols;
}

std::string run_csv(const RunLog& log) {
  std::string out;
  const auto& cols = run_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  out.reserve(out.size() + log.rows.size() * 27 * 24);
  for (const auto& r : log.rows) {
    put(out, r.t);
    out += ',';
    put(out, r.xq);
    out += ',';
    put(out, r.vq);
    for (double v : {r.alpha, r.beta, r.L, r.L_dot}) {
      out += ',';
      put(out, v);
    }
    out += ',';
    put(out, r.Fc);
    out += ',';
    put(out, r.Fc_hat);
    for (double v : {r.f_T, r.f_T_hat}) {
      out += ',';
      put(out, v);
    }
    out += ',';
    put(out, r.xqd);
    for (double v : {r.L_d, r.e_ac_norm, r.dzeta_beta, r.dzeta_L, r.T_thrust}) {
      out += ',';
      put(out, v);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void export_run(const RunLog& log, const std::string& path) { write_text(path, run_csv(log)); }

std::string run_summary_json(const RunLog& log, const MetricsReport& m) {
  const RunChecks& c = log.checks;
  json j;
  j["schema_version"] = ScenarioConfig::kSchemaVersion;
  j["config_hash"] = hash_hex(log.config_hash);
  j["seed"] = log.seed;
  j["task"] = to_string(log.config.task);
  j["cell"] = cell_label(log.config);
  j["metrics"] = {{"d", m.d},
                  {"d_n", m.d_n ? json(*m.d_n) : json(nullptr)},
                  {"beta_mean", m.beta_mean},
                  {"f_T_mean", m.tension_mean},
                  {"J_q_mean", m.jerk_mean}};
  j["checks"] = {{"contact_force_bounded", c.contact_force_bounded},
                 {"max_contact_force", c.max_contact_force},
                 {"beta_below_horizontal", c.beta_below_horizontal},
                 {"max_beta", c.max_beta},
                 {"finite", c.finite},
                 {"slack_steps", c.slack_steps},
                 {"length_limited_steps", c.length_limited_steps},
                 {"thrust_saturated_steps", c.thrust_saturated_steps},
                 {"max_tracking_error", c.max_tracking_error}};
  return j.dump(2);
}

std::string table_csv(const std::vector<CellResult>& table) {
  std::string out =
      "cell,task,runs,diverged,d_mean,d_se,d_n_mean,d_n_se,beta_mean,beta_se,f_T_mean,f_T_se,"
      "J_q_mean,J_q_se\n";
  for (const auto& r : table) {
    out += r.label + "," + to_string(r.config.task) + "," + std::to_string(r.runs) + "," +
           std::to_string(r.diverged);
    for (const MetricStats* s : {&r.d, &r.d_n, &r.beta, &r.tension, &r.jerk}) {
      out += ',';
      put(out, s->mean);
      out += ',';
      put(out, s->se);
    }
    out += '\n';
  }
  return out;
}

std::string table_json(const std::vector<CellResult>& table) {
  json a = json::array();
  for (const auto& r : table) {
    a.push_back({{"cell", r.label},
                 {"task", to_string(r.config.task)},
                 {"config_hash", hash_hex(config_hash(r.config))},
                 {"runs", r.runs},
                 {"diverged", r.diverged},
                 {"d", stats(r.d)},
                 {"d_n", stats(r.d_n)},
                 {"beta_mean", stats(r.beta)},
                 {"f_T_mean", stats(r.tension)},
                 {"J_q_mean", stats(r.jerk)}});
  }
  return json{{"schema_version", ScenarioConfig::kSchemaVersion}, {"cells", a}}.dump(2);
}

void export_table(const std::vector<CellResult>& table, const std::string& path) {
  write_text(path, table_csv(table));
}

}  // namespace clt

#include "clt/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "clt/reference.hpp"
#include "json.hpp"

namespace clt {

using nlohmann::json;

namespace {

template <typename E>
struct EnumNames;

template <>
struct EnumNames<Task> {
  static constexpr const char* names[] = {"loading_unloading_in_place", "transporting"};
};
template <>
struct EnumNames<Controller> {
  static constexpr const char* names[] = {"CVIM", "SVIM"};
};
template <>
struct EnumNames<CableMode> {
  static constexpr const char* names[] = {"VCL", "CCL"};
};
template <>
struct EnumNames<StiffnessLevel> {
  static constexpr const char* names[] = {"L", "H"};
};

template <typename E>
E enum_from(const std::string& s) {
  for (int i = 0; i < 2; ++i)
    if (s == EnumNames<E>::names[i]) return static_cast<E>(i);
  throw std::invalid_argument("unknown enum value: " + s);
}

template <int N>
json vec(const Eigen::Matrix<double, N, 1>& v) {
  json a = json::array();
  for (int i = 0; i < N; ++i) a.push_back(v(i));
  return a;
}

template <int N>
Eigen::Matrix<double, N, 1> vec_from(const json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(N))
    throw std::invalid_argument("expected an array of " + std::to_string(N) + " numbers");
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = j.at(i).get<double>();
  return v;
}

json shaping_json(const ShapingGains& g) {
  return {{"xi1", vec(g.xi1)}, {"xi2", vec(g.xi2)}, {"xi3", g.xi3}, {"xi4", g.xi4},
          {"gamma", g.gamma}};
}

ShapingGains shaping_from(const json& j) {
  ShapingGains g;
  g.xi1 = vec_from<3>(j.at("xi1"));
  g.xi2 = vec_from<3>(j.at("xi2"));
  g.xi3 = j.at("xi3");
  g.xi4 = j.at("xi4");
  g.gamma = j.at("gamma");
  return g;
}

json preset_json(const StiffnessPreset& p) {
  return {{"k_beta", p.k_beta}, {"k_length", p.k_length}, {"svim_stiffness", vec(p.svim_stiffness)}};
}

StiffnessPreset preset_from(const json& j) {
  return {j.at("k_beta"), j.at("k_length"), vec_from<4>(j.at("svim_stiffness"))};
}

json to_json_doc(const ScenarioConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["task"] = to_string(c.task);
  j["controller"] = to_string(c.controller);
  j["cable_mode"] = to_string(c.cable_mode);
  j["stiffness_level"] = to_string(c.stiffness_level);
  j["plant"] = {{"quad_mass", c.plant.quad_mass},
                {"hook_mass", c.plant.hook_mass},
                {"inertia_diag", vec(Vec3(c.plant.inertia.diagonal()))},
                {"gravity", vec(c.plant.gravity)},
                {"min_length", c.plant.min_length},
                {"max_length", c.plant.max_length}};
  j["stiffness_presets"] = {{"L", preset_json(c.preset_low)}, {"H", preset_json(c.preset_high)}};
  j["cvim_shaping"] = shaping_json(c.cvim_shaping);
  j["svim_shaping"] = shaping_json(c.svim_shaping);
  const auto& t = c.tracking;
  j["tracking"] = {{"k_x", t.k_x},     {"k_v", t.k_v},
                   {"k_i", t.k_i},     {"integral_limit", t.integral_limit},
                   {"k_R", t.k_R},     {"k_Omega", t.k_Omega},
                   {"cable_feedforward", t.cable_feedforward}, {"max_thrust", t.max_thrust}};
  j["cable_pid"] = {{"K_P", c.cable_pid.K_P},
                    {"K_I", c.cable_pid.K_I},
                    {"K_D", c.cable_pid.K_D},
                    {"accel_limit", c.winch_accel_limit}};
  const auto& e = c.estimation;
  j["estimation"] = {{"mocap_sigma", e.noise.mocap_sigma},
                     {"loadcell_sigma", e.noise.loadcell_sigma},
                     {"encoder_sigma", e.noise.encoder_sigma},
                     {"window", e.window},
                     {"lag", e.lag},
                     {"tension_scale", e.tension_model.scale},
                     {"tension_offset", e.tension_model.offset},
                     {"truth_force", e.truth_force}};
  const auto& o = c.op;
  j["operator"] = {{"profile", to_string(o.profile)},
                   {"stiffness", o.stiffness},
                   {"damping", o.damping},
                   {"max_force", o.max_force},
                   {"t_on", o.t_on},
                   {"ramp", o.ramp},
                   {"load_mass", o.load_mass},
                   {"reach", vec(o.reach)},
                   {"walk_speed", o.walk_speed},
                   {"hold_time", o.hold_time},
                   {"obstacle", vec(o.obstacle)},
                   {"obstacle_radius", o.obstacle_radius},
                   {"detour", o.detour},
                   {"detour_width", o.detour_width},
                   {"influence_width", o.influence_width},
                   {"side", o.side},
                   {"jitter", c.operator_jitter}};
  j["reference"] = {{"start_position", vec(c.start_position)},
                    {"neutral_length", c.neutral_length},
                    {"ccl_length", c.ccl_length},
                    {"line_length", c.line_length},
                    {"line_speed", c.line_speed},
                    {"line_blend", c.line_blend},
                    {"line_start_time", c.line_start_time}};
  j["timing"] = {{"t0", c.t0},
                 {"tf", c.tf},
                 {"dt", c.dt},
                 {"control_period", c.control_period},
                 {"loadcell_period", c.loadcell_period}};
  j["seed"] = c.seed;
  j["workspace"] = {{"center", vec(c.workspace.center)},
                    {"size", vec(c.workspace.size)},
                    {"divergence_scale", c.workspace.divergence_scale}};
  return j;
}

int divider(double period, double dt, const char* what) {
  const double r = period / dt;
  const long n = std::lround(r);
  if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-6)
    throw std::invalid_argument(std::string(what) + " must be a whole number of plant steps");
  return static_cast<int>(n);
}

}  // namespace

std::string to_string(Task v) { return EnumNames<Task>::names[static_cast<int>(v)]; }
std::string to_string(Controller v) { return EnumNames<Controller>::names[static_cast<int>(v)]; }
std::string to_string(CableMode v) { return EnumNames<CableMode>::names[static_cast<int>(v)]; }
std::string to_string(StiffnessLevel v) {
  return EnumNames<StiffnessLevel>::names[static_cast<int>(v)];
}

void ScenarioConfig::validate() const {
  if (schema_version != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version " + std::to_string(schema_version));
  plant.validate();
  cvim_params().validate();
  svim_params().validate();
  tracking.validate();
  if (!routh_hurwitz_check(cable_pid).stable)
    throw std::invalid_argument("cable PID gains fail the Routh-Hurwitz condition");
  if (!(winch_accel_limit > 0.0)) throw std::invalid_argument("winch accel limit must be positive");
  op.validate();
  if (task == Task::transporting && op.profile == OperatorProfile::loading)
    throw std::invalid_argument("loading profile on the transporting task");
  if (task == Task::loading_unloading_in_place && op.profile == OperatorProfile::transporting)
    throw std::invalid_argument("transporting profile on the loading task");
  if (!(estimation.window >= 5 && estimation.lag + 2 < estimation.window))
    throw std::invalid_argument("estimator window too short for the lag");
  for (double L : {neutral_length, ccl_length})
    if (!(L >= plant.min_length && L <= plant.max_length))
      throw std::invalid_argument("reference cable length outside the winch range");
  if (!(dt > 0.0 && tf > t0)) throw std::invalid_argument("bad time span");
  control_divider();
  loadcell_divider();
  if (loadcell_divider() % control_divider() != 0)
    throw std::invalid_argument("load cell period must be a multiple of the control period");
  if (!(operator_jitter >= 0.0 && operator_jitter < 1.0))
    throw std::invalid_argument("operator jitter must lie in [0, 1)");
  if (!(line_length > 0.0 && line_speed > 0.0 && line_blend >= 0.0))
    throw std::invalid_argument("bad line reference");
}

CvimParams ScenarioConfig::cvim_params() const {
  CvimParams p;
  p.k_beta = preset().k_beta;
  p.k_length = preset().k_length;
  p.shaping = cvim_shaping;
  if (cable_mode == CableMode::CCL) p.shaping.xi3 = p.shaping.xi4 = 0.0;
  return p;
}

SvimParams ScenarioConfig::svim_params() const {
  SvimParams p;
  p.stiffness = preset().svim_stiffness;
  p.auto_damping = true;
  p.shaping = svim_shaping;
  if (cable_mode == CableMode::CCL) p.shaping.xi3 = p.shaping.xi4 = 0.0;
  return p;
}

double ScenarioConfig::reference_length() const {
  return cable_mode == CableMode::CCL ? ccl_length : neutral_length;
}

int ScenarioConfig::control_divider() const { return divider(control_period, dt, "control period"); }
int ScenarioConfig::loadcell_divider() const {
  return divider(loadcell_period, dt, "load cell period");
}

ScenarioConfig default_config(Task task) {
  ScenarioConfig c;
  c.task = task;
  if (task == Task::transporting) {
    c.op.profile = OperatorProfile::transporting;
    c.start_position = Vec3(-0.5 * c.line_length, 0.0, 1.5);
    LineReference::Profile p;
    p.length = c.line_length;
    p.speed = c.line_speed;
    p.blend_time = c.line_blend;
    p.start_time = c.line_start_time;
    const LineReference line(p, {});
    c.tf = std::ceil(line.end_time()) + 4.0;
  } else {
    c.op.profile = OperatorProfile::loading;
    c.tf = 20.0;
  }
  return c;
}

std::string serialize_config(const ScenarioConfig& c) { return to_json_doc(c).dump(2); }

ScenarioConfig parse_config(const std::string& text) {
  const json j = json::parse(text);
  ScenarioConfig c;
  c.schema_version = j.at("schema_version");
  if (c.schema_version != ScenarioConfig::kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version " + std::to_string(c.schema_version));
  c.task = enum_from<Task>(j.at("task"));
  c.controller = enum_from<Controller>(j.at("controller"));
  c.cable_mode = enum_from<CableMode>(j.at("cable_mode"));
  c.stiffness_level = enum_from<StiffnessLevel>(j.at("stiffness_level"));

  const json& p = j.at("plant");
  c.plant.quad_mass = p.at("quad_mass");
  c.plant.hook_mass = p.at("hook_mass");
  c.plant.inertia = vec_from<3>(p.at("inertia_diag")).asDiagonal();
  c.plant.gravity = vec_from<3>(p.at("gravity"));
  c.plant.min_length = p.at("min_length");
  c.plant.max_length = p.at("max_length");

  c.preset_low = preset_from(j.at("stiffness_presets").at("L"));
  c.preset_high = preset_from(j.at("stiffness_presets").at("H"));
  c.cvim_shaping = shaping_from(j.at("cvim_shaping"));
  c.svim_shaping = shaping_from(j.at("svim_shaping"));

  const json& t = j.at("tracking");
  c.tracking.k_x = t.at("k_x");
  c.tracking.k_v = t.at("k_v");
  c.tracking.k_i = t.at("k_i");
  c.tracking.integral_limit = t.at("integral_limit");
  c.tracking.k_R = t.at("k_R");
  c.tracking.k_Omega = t.at("k_Omega");
  c.tracking.cable_feedforward = t.at("cable_feedforward");
  c.tracking.max_thrust = t.at("max_thrust");

  const json& w = j.at("cable_pid");
  c.cable_pid = {w.at("K_P"), w.at("K_I"), w.at("K_D")};
  c.winch_accel_limit = w.at("accel_limit");

  const json& e = j.at("estimation");
  c.estimation.noise = {e.at("mocap_sigma"), e.at("loadcell_sigma"), e.at("encoder_sigma")};
  c.estimation.window = e.at("window");
  c.estimation.lag = e.at("lag");
  c.estimation.tension_model = {e.at("tension_scale"), e.at("tension_offset")};
  c.estimation.truth_force = e.at("truth_force");

  const json& o = j.at("operator");
  c.op.profile = operator_profile_from_string(o.at("profile"));
  c.op.stiffness = o.at("stiffness");
  c.op.damping = o.at("damping");
  c.op.max_force = o.at("max_force");
  c.op.t_on = o.at("t_on");
  c.op.ramp = o.at("ramp");
  c.op.load_mass = o.at("load_mass");
  c.op.reach = vec_from<3>(o.at("reach"));
  c.op.walk_speed = o.at("walk_speed");
  c.op.hold_time = o.at("hold_time");
  c.op.obstacle = vec_from<2>(o.at("obstacle"));
  c.op.obstacle_radius = o.at("obstacle_radius");
  c.op.detour = o.at("detour");
  c.op.detour_width = o.at("detour_width");
  c.op.influence_width = o.at("influence_width");
  c.op.side = o.at("side");
  c.operator_jitter = o.at("jitter");

  const json& r = j.at("reference");
  c.start_position = vec_from<3>(r.at("start_position"));
  c.neutral_length = r.at("neutral_length");
  c.ccl_length = r.at("ccl_length");
  c.line_length = r.at("line_length");
  c.line_speed = r.at("line_speed");
  c.line_blend = r.at("line_blend");
  c.line_start_time = r.at("line_start_time");

  const json& tm = j.at("timing");
  c.t0 = tm.at("t0");
  c.tf = tm.at("tf");
  c.dt = tm.at("dt");
  c.control_period = tm.at("control_period");
  c.loadcell_period = tm.at("loadcell_period");
  c.seed = j.at("seed");

  const json& ws = j.at("workspace");
  c.workspace.center = vec_from<3>(ws.at("center"));
  c.workspace.size = vec_from<3>(ws.at("size"));
  c.workspace.divergence_scale = ws.at("divergence_scale");
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void save_config(const ScenarioConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config " + path);
  out << serialize_config(c) << "\n";
}

std::uint64_t config_hash(const ScenarioConfig& c) {
  const std::string s = to_json_doc(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  return to_json_doc(a) == to_json_doc(b);
}

}  // namespace clt

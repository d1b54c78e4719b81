#include "clt/estimation.hpp"

#include <cmath>

namespace clt {

SensorSimulator::SensorSimulator(NoiseLevels noise, std::uint64_t seed) : noise_(noise), rng_(seed) {}

double SensorSimulator::gauss(double sigma) { return sigma > 0.0 ? sigma * normal_(rng_) : 0.0; }

MocapSample SensorSimulator::mocap(double t, const Vec3& xq, const Vec3& xh) {
  MocapSample s{t, xq, xh};
  for (int i = 0; i < 3; ++i) s.quad_position[i] += gauss(noise_.mocap_sigma);
  for (int i = 0; i < 3; ++i) s.hook_position[i] += gauss(noise_.mocap_sigma);
  return s;
}

LoadcellSample SensorSimulator::loadcell(double t, double tension) {
  return {t, tension + gauss(noise_.loadcell_sigma)};
}

EncoderSample SensorSimulator::encoder(double t, double length) {
  return {t, length + gauss(noise_.encoder_sigma)};
}

double estimate_tension(const SampleWindow<LoadcellSample>& w, const TensionModel& m) {
  if (w.empty()) throw InsufficientSamples("no load-cell samples");
  return m.scale * w.back().tension + m.offset;
}

Vec3 hook_accel_spline(const std::vector<double>& t, const std::vector<Vec3>& x,
                       std::optional<std::size_t> eval_index) {
  if (t.size() != x.size()) throw std::invalid_argument("hook window size mismatch");
  if (t.size() < 5) throw InsufficientSamples("hook acceleration needs at least 5 samples");
  const std::size_t idx = eval_index.value_or(t.size() - 3);
  if (idx >= t.size()) throw std::out_of_range("spline evaluation index outside window");
  Eigen::MatrixXd y(static_cast<Eigen::Index>(x.size()), 3);
  for (std::size_t i = 0; i < x.size(); ++i) y.row(static_cast<Eigen::Index>(i)) = x[i].transpose();
  const CubicSpline spline(t, std::move(y));
  return spline.knot_second_derivative(idx).transpose();
}

Vec3 estimate_contact_force(const Vec3& a, double f, const Vec3& e, double mh, const Vec3& g) {
  return mh * a - mh * g + f * e;
}

Vec3 direction_from_mocap(const MocapSample& s) {
  const Vec3 d = s.hook_position - s.quad_position;
  const double n = d.norm();
  if (!(n > 1e-9)) return Vec3(0.0, 0.0, -1.0);
  return d / n;
}

ForceEstimator::ForceEstimator(EstimatorConfig config)
    : config_(std::move(config)), mocap_(config_.window), loadcell_(8) {
  if (config_.window < 5) throw InsufficientSamples("estimator window must hold at least 5 samples");
  if (config_.lag + 2 > config_.window) throw std::invalid_argument("estimator lag too large for window");
}

void ForceEstimator::push_loadcell(const LoadcellSample& s) {
  loadcell_.push(s);
  pending_.push_back(s);
}

Vec3 ForceEstimator::current_direction() const {
  if (mocap_.empty()) return Vec3(0.0, 0.0, -1.0);
  return direction_from_mocap(mocap_.back());
}

bool ForceEstimator::push_mocap(const MocapSample& s) {
  mocap_.push(s);
  if (pending_.empty() || mocap_.size() < 5 || mocap_.size() <= config_.lag) return false;
  const std::size_t idx = mocap_.size() - 1 - config_.lag;
  const double t_eval = mocap_[idx].t;
  // Drop load-cell samples whose mocap partner has already left the window.
  const double tol = 1e-9 + 1e-6 * std::abs(t_eval);
  while (!pending_.empty() && pending_.front().t < t_eval - tol) pending_.pop_front();
  if (pending_.empty() || std::abs(pending_.front().t - t_eval) > tol) return false;

  std::vector<double> t(mocap_.size());
  std::vector<Vec3> x(mocap_.size());
  for (std::size_t i = 0; i < mocap_.size(); ++i) {
    t[i] = mocap_[i].t;
    x[i] = mocap_[i].hook_position;
  }
  ForceEstimate est;
  est.hook_accel = hook_accel_spline(t, x, idx);
  est.e_l = direction_from_mocap(mocap_[idx]);
  est.tension = config_.tension_model.scale * pending_.front().tension + config_.tension_model.offset;
  est.contact_force =
      estimate_contact_force(est.hook_accel, est.tension, est.e_l, config_.hook_mass, config_.gravity);
  est.sample_time = t_eval;
  est.publish_time = s.t;
  est.valid = true;
  latest_ = est;
  pending_.pop_front();
  return true;
}

}  // namespace clt

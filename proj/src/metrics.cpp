#include "clt/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace clt {

namespace {

double trapezoid(const std::vector<double>& y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

}  // namespace

MetricsReport compute_metrics(const std::vector<Vec3>& v, const std::vector<double>& beta,
                              const std::vector<double>& tension, double h, Task task) {
  const std::size_t n = v.size();
  if (beta.size() != n || tension.size() != n) throw std::invalid_argument("metric series lengths differ");
  if (n < 3) throw std::invalid_argument("need at least three samples");
  if (!(h > 0.0)) throw std::invalid_argument("sample spacing must be positive");

  MetricsReport m;
  std::vector<double> speed(n);
  for (std::size_t i = 0; i < n; ++i) speed[i] = v[i].norm();
  const double T = h * static_cast<double>(n - 1);
  m.d = trapezoid(speed, h);
  if (task == Task::transporting) m.d_n = m.d / kPrescribedPathLength;
  m.beta_mean = trapezoid(beta, h) / T;
  m.tension_mean = trapezoid(tension, h) / T;
  double j = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) j += ((v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h)).norm();
  m.jerk_mean = j / static_cast<double>(n - 2);
  return m;
}

MetricsReport compute_metrics(const RunLog& log, Task task) {
  if (log.rows.size() < 3) throw std::invalid_argument("run log too short for metrics");
  std::vector<Vec3> v;
  std::vector<double> b, f;
  v.reserve(log.rows.size());
  for (const auto& r : log.rows) {
    v.push_back(r.vq);
    b.push_back(r.beta);
    f.push_back(r.f_T);
  }
  const double h = log.rows[1].t - log.rows[0].t;
  MetricsReport m = compute_metrics(v, b, f, h, task);
  m.config_hash = log.config_hash;
  m.seed = log.seed;
  return m;
}

}  // namespace clt

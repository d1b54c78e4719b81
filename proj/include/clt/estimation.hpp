#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "clt/geometry.hpp"
#include "clt/spline.hpp"

namespace clt {

struct NoiseLevels {
  double mocap_sigma{5e-4};     // m
  double loadcell_sigma{0.02};  // N
  double encoder_sigma{1e-4};   // m

  static NoiseLevels none() { return {0.0, 0.0, 0.0}; }
};

struct MocapSample {
  double t{0.0};
  Vec3 quad_position{Vec3::Zero()};
  Vec3 hook_position{Vec3::Zero()};
};

struct LoadcellSample {
  double t{0.0};
  double tension{0.0};
};

struct EncoderSample {
  double t{0.0};
  double length{0.0};
};

/// Fixed-capacity FIFO; the oldest sample is dropped once full.
template <typename T>
class SampleWindow {
 public:
  explicit SampleWindow(std::size_t capacity) : capacity_(capacity) {}
  void push(const T& s) {
    if (!buf_.empty() && !(s.t > buf_.back().t)) {
      throw std::invalid_argument("sensor timestamps must increase");
    }
    buf_.push_back(s);
    if (buf_.size() > capacity_) buf_.pop_front();
  }
  std::size_t size() const { return buf_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool full() const { return buf_.size() == capacity_; }
  const T& operator[](std::size_t i) const { return buf_[i]; }
  const T& back() const { return buf_.back(); }
  bool empty() const { return buf_.empty(); }
  void clear() { buf_.clear(); }

 private:
  std::size_t capacity_;
  std::deque<T> buf_;
};

/// Corrupts truth with seeded Gaussian noise per channel.
class SensorSimulator {
 public:
  SensorSimulator(NoiseLevels noise, std::uint64_t seed);

  MocapSample mocap(double t, const Vec3& quad_position, const Vec3& hook_position);
  LoadcellSample loadcell(double t, double tension);
  EncoderSample encoder(double t, double length);

 private:
  double gauss(double sigma);
  NoiseLevels noise_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Static winch equilibrium: tension = scale * reading + offset.
struct TensionModel {
  double scale{1.0};
  double offset{0.0};
};

/// Latest load-cell reading mapped through the winch model (zero-order hold).
double estimate_tension(const SampleWindow<LoadcellSample>& window, const TensionModel& model = {});

/// Second derivative of the spline through the window, evaluated at the knot
/// eval_index (default: two samples before the newest).
Vec3 hook_accel_spline(const std::vector<double>& t, const std::vector<Vec3>& x,
                       std::optional<std::size_t> eval_index = std::nullopt);

Vec3 estimate_contact_force(const Vec3& hook_accel, double tension, const Vec3& e_l,
                            double hook_mass, const Vec3& gravity);

struct EstimatorConfig {
  std::size_t window{25};
  /// Samples between the evaluation knot and the newest sample.
  std::size_t lag{2};
  double hook_mass{0.012};
  Vec3 gravity{0.0, 0.0, -9.81};
  TensionModel tension_model;
};

struct ForceEstimate {
  Vec3 contact_force{Vec3::Zero()};
  Vec3 e_l{0.0, 0.0, -1.0};
  Vec3 hook_accel{Vec3::Zero()};
  double tension{0.0};
  /// Instant the estimate describes, and instant it became available.
  double sample_time{0.0};
  double publish_time{0.0};
  bool valid{false};
};

/// The sensing path: mocap at 100 Hz, load cell at 10 Hz. Each load-cell
/// sample is paired with the mocap sample at the same instant once enough
/// later mocap samples exist to evaluate the spline lag samples back.
class ForceEstimator {
 public:
  explicit ForceEstimator(EstimatorConfig config);

  void push_loadcell(const LoadcellSample& s);
  /// Returns true when a new estimate was published by this sample.
  bool push_mocap(const MocapSample& s);

  const ForceEstimate& latest() const { return latest_; }
  /// Cable direction from the newest mocap sample.
  Vec3 current_direction() const;
  const EstimatorConfig& config() const { return config_; }

 private:
  EstimatorConfig config_;
  SampleWindow<MocapSample> mocap_;
  SampleWindow<LoadcellSample> loadcell_;
  std::deque<LoadcellSample> pending_;
  ForceEstimate latest_;
};

Vec3 direction_from_mocap(const MocapSample& s);

}  // namespace clt

#include "clt/spline.hpp"

#include <algorithm>

namespace clt {

CubicSpline::CubicSpline(std::vector<double> t, Eigen::MatrixXd y) : t_(std::move(t)), y_(std::move(y)) {
  const auto n = static_cast<Eigen::Index>(t_.size());
  if (n < 4) throw InsufficientSamples("not-a-knot spline needs at least 4 knots");
  if (y_.rows() != n) throw std::invalid_argument("spline sample count mismatch");
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("spline knots must increase");
  }
  std::vector<double> h(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) h[i] = t_[i + 1] - t_[i];

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, y_.cols());
  // Third-derivative continuity at the second and second-to-last knots.
  A(0, 0) = h[1];
  A(0, 1) = -(h[0] + h[1]);
  A(0, 2) = h[0];
  A(n - 1, n - 3) = h[n - 2];
  A(n - 1, n - 2) = -(h[n - 3] + h[n - 2]);
  A(n - 1, n - 1) = h[n - 3];
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    A(i, i - 1) = h[i - 1];
    A(i, i) = 2.0 * (h[i - 1] + h[i]);
    A(i, i + 1) = h[i];
    rhs.row(i) = 6.0 * ((y_.row(i + 1) - y_.row(i)) / h[i] - (y_.row(i) - y_.row(i - 1)) / h[i - 1]);
  }
  moments_ = A.partialPivLu().solve(rhs);
}

std::size_t CubicSpline::segment(double t) const {
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  return std::min(i, t_.size() - 2);
}

Eigen::RowVectorXd CubicSpline::value(double t) const {
  const std::size_t i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - t) / h, b = (t - t_[i]) / h;
  return a * y_.row(i) + b * y_.row(i + 1) +
         ((a * a * a - a) * moments_.row(i) + (b * b * b - b) * moments_.row(i + 1)) * h * h / 6.0;
}

Eigen::RowVectorXd CubicSpline::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - t) / h, b = (t - t_[i]) / h;
  return (y_.row(i + 1) - y_.row(i)) / h -
         (3.0 * a * a - 1.0) * h / 6.0 * moments_.row(i) +
         (3.0 * b * b - 1.0) * h / 6.0 * moments_.row(i + 1);
}

Eigen::RowVectorXd CubicSpline::second_derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - t) / h, b = (t - t_[i]) / h;
  return a * moments_.row(i) + b * moments_.row(i + 1);
}

}  // namespace clt

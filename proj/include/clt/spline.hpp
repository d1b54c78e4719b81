#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace clt {

class InsufficientSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Not-a-knot cubic spline through (t_i, y_i) with vector-valued samples
/// (one row per knot). Reproduces cubic polynomials exactly.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> t, Eigen::MatrixXd y);

  Eigen::RowVectorXd value(double t) const;
  Eigen::RowVectorXd derivative(double t) const;
  Eigen::RowVectorXd second_derivative(double t) const;
  /// Second derivative at knot i (the solved moment).
  Eigen::RowVectorXd knot_second_derivative(std::size_t i) const { return moments_.row(i); }

  std::size_t size() const { return t_.size(); }

 private:
  std::size_t segment(double t) const;

  std::vector<double> t_;
  Eigen::MatrixXd y_;
  Eigen::MatrixXd moments_;
};

}  // namespace clt

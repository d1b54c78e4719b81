#pragma once

#include <vector>

#include "clt/admittance.hpp"
#include "clt/geometry.hpp"

namespace clt {

/// Model and reference data the certificate is computed for.
struct CertificationInputs {
  double quad_mass{2.1};
  double hook_mass{0.012};
  double k_beta{0.2};
  double k_length{1.0};
  double Lv_min{0.45};
  double Lv_max{0.55};
  double V_L{0.05};  // bound on |L_v_dot|
};

struct LyapunovBounds {
  double m_min{0}, m_max{0}, k_min{0}, k_max{0}, mdot_max{0}, b_min{0}, b_max{0};
};

LyapunovBounds lyapunov_bounds(const CertificationInputs& in);

double epsilon_bound(double quad_mass, double hook_mass, double Lv_min, double k_beta,
                     double k_length);

struct QMatrixCheck {
  bool positive_definite{false};
  double min_eig_beta{0.0};
  double min_eig_length{0.0};
};

QMatrixCheck q_matrices_pd(double eps, double k_beta, double k_length, double quad_mass,
                           double hook_mass, double L_v);

struct MuCoefficients {
  double mu1{0}, mu2{0}, gamma{0};
  double mu1_bar{0}, mu2_bar{0};  // without the input perturbation terms
};

MuCoefficients mu_coefficients(const LyapunovBounds& b, double eps, double eta1, double eta2,
                               double eta3);

struct LyapunovSetup {
  double eps{0}, eta1{0}, eta2{0}, eta3{0};
  CertificationInputs inputs;
  LyapunovBounds bounds;
  MuCoefficients mu;
  double c1{0}, c2{0};
  double lambda1{0}, lambda2{0};
  bool feasible{false};
};

struct GridSpec {
  double lo{1e-4};
  double hi{1.0};
  std::size_t points{81};  // 20 per decade over four decades
};

std::vector<double> log_grid(const GridSpec& spec);

/// c1, c2 from the extreme eigenvalues of Q_beta and Q_L over [Lv_min, Lv_max].
void quadratic_form_bounds(double eps, const CertificationInputs& in, double& c1, double& c2);

/// Evaluates every derived constant for a chosen tuple.
LyapunovSetup evaluate_setup(const CertificationInputs& in, double eps, double eta1, double eta2,
                             double eta3);

/// Grid search over (eps, eta1, eta2, eta3) maximizing min(mu1, mu2), eps
/// restricted below epsilon_bound. feasible is false when no tuple has both
/// margins positive.
LyapunovSetup lyapunov_constants(const CertificationInputs& in, const GridSpec& grid = {});

/// Independent re-check of every positivity condition for a reported tuple.
bool recheck_feasibility(const LyapunovSetup& s);

double lyapunov_value(const Vec2& zeta, const Vec2& zeta_rate, double L_v, double eps,
                      const Vec2& K, double quad_mass, double hook_mass);

struct TrajectoryPoint {
  double t{0.0};
  Vec4 z{Vec4::Zero()};  // (zeta, zeta_rate)
  Vec2 tau{Vec2::Zero()};
};

struct IssCertificate {
  LyapunovSetup setup;
  std::vector<double> margin;  // envelope - ||z||^2
  double min_margin{0.0};
  std::size_t worst_index{0};
  bool pass{false};
};

IssCertificate verify_iss_envelope(const std::vector<TrajectoryPoint>& traj,
                                   const LyapunovSetup& setup);

struct DecayFit {
  double rate{0.0};  // fitted decay rate of ||z||^2
  double intercept{0.0};
  std::size_t samples{0};
};

/// Least-squares fit of log ||z||^2 against t for points with t >= t_c.
DecayFit fit_decay_rate(const std::vector<TrajectoryPoint>& traj, double t_c,
                        double floor = 1e-24);

struct ShapingBoundReport {
  double worst_position_slack{0.0};  // min over time of bound - ||dx||
  double worst_length_slack{0.0};
  bool pass{false};
};

/// Pointwise check of ||dx|| <= |xi1| ||e|| + |xi2| (1/|ln g| + dt) sup ||e||
/// and the same for the length channel. dt is the accumulator step.
ShapingBoundReport verify_shaping_bounds(const std::vector<Vec3>& e_ac,
                                         const std::vector<double>& delta_L,
                                         const std::vector<Vec3>& position_offset,
                                         const std::vector<double>& length_offset,
                                         const ShapingGains& gains, double dt);

}  // namespace clt

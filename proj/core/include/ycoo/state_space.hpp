#pragma once

#include "ycoo/transfer_matrix.hpp"

#include <Eigen/Core>

namespace ycoo {

/// Continuous-time x' = A x + B u, y = C x + D u.
struct StateSpaceModel {
  Eigen::MatrixXd A, B, C, D;

  [[nodiscard]] Eigen::Index states() const { return A.rows(); }
  [[nodiscard]] Eigen::Index inputs() const { return B.cols(); }
  [[nodiscard]] Eigen::Index outputs() const { return C.rows(); }
  /// C (sI - A)^-1 B + D.
  [[nodiscard]] Eigen::MatrixXcd eval(Complex s) const;
};

/// Discrete filter x[k+1] = Ad x[k] + Bd u[k], y[k] = Cd x[k] + Dd u[k].
class DiscreteFilter {
 public:
  DiscreteFilter() = default;
  DiscreteFilter(Eigen::MatrixXd ad, Eigen::MatrixXd bd, Eigen::MatrixXd cd, Eigen::MatrixXd dd, double ts);

  /// Output for input u and advance the state.
  Eigen::VectorXd step(const Eigen::VectorXd& u);
  void reset();

  [[nodiscard]] const Eigen::MatrixXd& Ad() const { return ad_; }
  [[nodiscard]] const Eigen::MatrixXd& Bd() const { return bd_; }
  [[nodiscard]] const Eigen::MatrixXd& Cd() const { return cd_; }
  [[nodiscard]] const Eigen::MatrixXd& Dd() const { return dd_; }
  [[nodiscard]] const Eigen::VectorXd& state() const { return x_; }
  [[nodiscard]] double sample_period() const { return ts_; }
  [[nodiscard]] double spectral_radius() const;
  /// Response at z = exp(j omega Ts).
  [[nodiscard]] Eigen::MatrixXcd freq_response(double omega) const;

 private:
  Eigen::MatrixXd ad_, bd_, cd_, dd_;
  Eigen::VectorXd x_;
  double ts_ = 0.0;
};

/// Controllable canonical form per nonzero entry (time-scaled so the
/// companion coefficients stay near unity), assembled block-diagonally.
/// Throws std::domain_error for an improper entry.
StateSpaceModel realize(const TransferMatrix& g);

/// Bilinear transform with step ts and zero initial state. Throws
/// std::invalid_argument for ts <= 0 and std::domain_error when
/// I - (ts/2) A is singular.
DiscreteFilter discretize(const StateSpaceModel& ss, double ts);

}  // namespace ycoo

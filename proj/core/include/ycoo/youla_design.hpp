#pragma once

#include "ycoo/transfer_matrix.hpp"
#include "ycoo/vehicle_model.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace ycoo {

/// Linearization point; angles in radians.
struct OperatingPoint {
  double speed = 10.0;
  double heading = 0.0;
  double steer = 0.0;
};

/// Target closed-loop shaping. Channel i gets
/// (3 w^2 s + w^3) / ((s + w)^3 (tau s + 1)^rolloff_i).
struct DesignParams {
  double w1 = 500.0;
  double w2 = 30.0;
  double tau = 0.001;
  int rolloff1 = 1;
  int rolloff2 = 1;

  /// Throws std::invalid_argument unless w1 > w2 > 0, tau > 0, 1/tau >= 2 w1
  /// and both roll-off orders are at least 1.
  void validate() const;
};

/// U_L * G * U_R = M (Smith-McMillan form M).
struct SmithMcMillanResult {
  TransferMatrix left;
  TransferMatrix form;
  TransferMatrix right;
};

struct InterpolationChannel {
  std::size_t channel = 0;
  bool constrained = false;  // plant channel has a double pole at the origin
  double value_residual = 0.0;
  double slope_residual = 0.0;
  bool pass = true;
};

struct InterpolationReport {
  std::vector<InterpolationChannel> channels;
  bool pass = true;
};

struct YoulaDesignResult {
  OperatingPoint op;
  DesignParams params;
  TransferMatrix plant;
  SmithMcMillanResult smith;
  TransferMatrix target;        // diagonal decoupled closed loop
  TransferMatrix youla_diag;    // target / Smith-McMillan form, entrywise
  TransferMatrix youla;
  TransferMatrix comp_sensitivity;
  TransferMatrix sensitivity;
  TransferMatrix observer;      // maps (e_Y, e_X) to (steer, accel)
  InterpolationReport interpolation;
};

/// C (sI - A)^-1 B + D by Faddeev-LeVerrier; numerical noise below 1e-12 of
/// the largest numerator coefficient is dropped.
TransferMatrix state_space_to_tf(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                                 const Eigen::MatrixXd& D);

/// Plant from (steer, accel) to (Y, X) linearized at op.
TransferMatrix build_plant(const OperatingPoint& op, const VehicleParams& params);

/// Smith-McMillan form of a 2x2 plant via the gcd of its minors, with
/// monic diagonal entries, U_R = I and U_L = M G^-1. Throws
/// std::invalid_argument for other shapes and std::domain_error when G is
/// rank deficient.
SmithMcMillanResult smith_mcmillan(const TransferMatrix& g);

TransferMatrix make_target_closed_loop(const DesignParams& dp);

/// Value and slope conditions at s = 0 for every channel whose Smith-McMillan
/// entry has a double origin pole: |T(0) - 1| and the central difference
/// of T at 0 (step eps) must both be below tol.
InterpolationReport check_interpolation(const TransferMatrix& target, const TransferMatrix& form, double eps = 1e-6,
                                        double tol = 1e-9);

/// Youla parameter, loop transfer matrices and observer. Throws
/// std::domain_error if an observer entry comes out improper.
YoulaDesignResult assemble_loop(const TransferMatrix& plant, const SmithMcMillanResult& smith,
                                const TransferMatrix& target);

/// build_plant -> smith_mcmillan -> make_target_closed_loop -> assemble_loop.
/// The interpolation report is attached to the result, not enforced.
YoulaDesignResult design_observer(const OperatingPoint& op, const DesignParams& dp, const VehicleParams& params);

/// Frequency where |t(jw)| = |s(jw)|, bisected after a log scan of [lo, hi].
/// Throws std::runtime_error if there is no crossing.
double crossover_frequency(const RationalFunction& t, const RationalFunction& s, double lo = 1e-1,
                           double hi = 1e5);

/// Crossover per diagonal channel of the designed loop.
std::vector<double> bandwidth_report(const YoulaDesignResult& res);

/// Pole/zero/gain agreement of one entry against a reference.
struct EntryComparison {
  std::size_t row = 0;
  std::size_t col = 0;
  bool structure_ok = true;  // same zero-ness and root counts
  double pole_error = 0.0;   // max relative error, nearest pairing
  double zero_error = 0.0;
  double gain_error = 0.0;
  [[nodiscard]] double worst() const;
};

EntryComparison compare_entry(const RationalFunction& got, const RationalFunction& want);

/// Entrywise comparison; matrices must have the same shape.
std::vector<EntryComparison> compare_matrices(const TransferMatrix& got, const TransferMatrix& want);

/// Largest relative deviation of the observer from Y(jw) S(jw)^-1, the latter
/// formed from the loop matrices with a numeric 2x2 inverse at each probe.
double observer_residual(const YoulaDesignResult& res, int probes = 10);

/// Largest relative deviation of U_L G U_R from M at log-spaced probes.
double smith_residual(const TransferMatrix& g, const SmithMcMillanResult& sm, int probes = 10);

}  // namespace ycoo

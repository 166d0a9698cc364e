#pragma once

#include "ycoo/design_data.hpp"
#include "ycoo/state_space.hpp"
#include "ycoo/vehicle_model.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace ycoo {

/// Heading ranges of the observers plus the overlap tables that blend them.
struct BankLayout {
  std::vector<std::pair<double, double>> ranges;  // degrees, lo may be negative
  std::vector<OverlapWindow> overlaps;

  static BankLayout from(const DesignData& data);
};

/// Weights for heading psi_deg (any value; wrapped to [0, 360)). Inside an
/// overlap window the two table RMS values are interpolated linearly (clamped
/// at the table ends) and observer i gets RMS_j / (RMS_i + RMS_j). Outside
/// every window the unique covering observer gets weight 1. Throws
/// std::domain_error if no observer covers the heading.
Eigen::VectorXd select_weights(double psi_deg, const BankLayout& layout);

/// True if the heading (wrapped) lies inside [lo, hi] modulo 360.
bool heading_in_range(double psi_deg, double lo_deg, double hi_deg);

enum class ObserverSource { pipeline, frozen };

/// Discretized observer filters plus layout; shared, read-only.
struct BankPrototype {
  std::vector<DiscreteFilter> filters;
  BankLayout layout;
  VehicleParams model;
  double ts = 1e-4;

  static BankPrototype from(const DesignData& data, ObserverSource source = ObserverSource::pipeline,
                            double ts = 1e-4);
};

struct BankOutput {
  VehicleState estimate;
  ControlInput u_hat;
  Eigen::VectorXd weights;
};

/// Runtime state of the observer bank: warm filters on the shared error
/// signal and the internal vehicle-model copy they drive.
class ObserverBank {
 public:
  explicit ObserverBank(const BankPrototype& proto);

  /// Resets the filters and places the internal model at initial.
  void reset(const VehicleState& initial);

  /// One sample period: error against the internal model, every filter
  /// advances, weights come from the current heading estimate, the blended
  /// input drives the internal model through one RK4 step.
  BankOutput step(const Measurement& y);

  [[nodiscard]] const VehicleState& estimate() const { return model_; }
  [[nodiscard]] const std::vector<DiscreteFilter>& filters() const { return filters_; }
  /// Last per-observer outputs (steer, accel), in bank order.
  [[nodiscard]] const std::vector<ControlInput>& outputs() const { return outputs_; }

 private:
  std::vector<DiscreteFilter> filters_;
  BankLayout layout_;
  VehicleParams params_;
  double ts_;
  VehicleState model_;
  std::vector<ControlInput> outputs_;
};

/// Free-function form of ObserverBank::step.
BankOutput ycoo_step(ObserverBank& bank, const Measurement& y);

}  // namespace ycoo

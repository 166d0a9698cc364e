#pragma once

#include "ycoo/design_data.hpp"
#include "ycoo/vehicle_model.hpp"

#include <vector>

namespace ycoo {

/// Published gains with their heading regions and the currently active one.
class LuenbergerGainSet {
 public:
  LuenbergerGainSet() = default;
  explicit LuenbergerGainSet(std::vector<LuenbergerRegion> regions);

  [[nodiscard]] const std::vector<LuenbergerRegion>& regions() const { return regions_; }
  /// Index of the active region, -1 before the first selection.
  [[nodiscard]] int current() const { return current_; }
  void reset() { current_ = -1; }

  /// Hysteresis: the active region is kept while it still contains psi
  /// (wrapped); otherwise a neighbouring region containing psi is preferred,
  /// then the lowest-index one. Throws std::domain_error if none does.
  const Mat42& select(double psi_deg);

 private:
  std::vector<LuenbergerRegion> regions_;
  int current_ = -1;
};

const Mat42& select_luenberger_gain(LuenbergerGainSet& gains, double psi_deg);

/// Output matrix of the (X, Y) innovation the gains act on.
Mat24 innovation_matrix();

/// One RK4 step of s' = f(s, u) + L (y - C s) with the measurement held and
/// the innovation recomputed at every stage. L follows the estimate's heading
/// at the start of the step.
VehicleState luenberger_step(const VehicleState& est, LuenbergerGainSet& gains, const Measurement& y,
                             const ControlInput& u, const VehicleParams& params, double dt);

struct GainMargin {
  std::size_t region = 0;
  double worst_real = 0.0;  // largest real part over the grid
  double speed = 0.0, heading_deg = 0.0, steer_deg = 0.0;  // where it occurs
  double gain_norm = 0.0;   // spectral norm of the gain
  bool stable = false;
};

/// Eigenvalues of A(s, u) - L C over V in {0.5, 2, 4, ..., 20}, steer in
/// {-20, -15, ..., 20} deg and the region's headings every 10 deg.
std::vector<GainMargin> verify_gain_stability(const std::vector<LuenbergerRegion>& regions,
                                              const VehicleParams& params);

}  // namespace ycoo

#pragma once

#include "ycoo/transfer_matrix.hpp"
#include "ycoo/vehicle_model.hpp"
#include "ycoo/youla_design.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ycoo {

/// One shipped observer: where it was designed, its shaping parameters, the
/// heading range it covers and the reference transfer matrix from (e_Y, e_X)
/// to (steer, accel).
struct ObserverSpec {
  std::string name;
  OperatingPoint op;             // heading in radians
  DesignParams params;
  double range_lo_deg = 0.0;     // may be negative; wraps modulo 360
  double range_hi_deg = 0.0;
  TransferMatrix reference;
};

/// Two observers sharing a heading window, with the RMS of each sampled on a
/// common heading grid.
struct OverlapWindow {
  double lo_deg = 0.0;
  double hi_deg = 0.0;
  std::array<std::size_t, 2> observers{};
  std::vector<double> grid_deg;
  std::array<std::vector<double>, 2> rms;
};

struct LuenbergerRegion {
  double lo_deg = 0.0;
  double hi_deg = 0.0;
  Mat42 gain = Mat42::Zero();  // columns weight the (X, Y) innovation
};

struct DesignData {
  int version = 0;
  VehicleParams vehicle;
  std::vector<ObserverSpec> observers;
  std::vector<OverlapWindow> overlaps;
  std::vector<LuenbergerRegion> luenberger;

  /// Throws std::invalid_argument if tables are malformed (grid not strictly
  /// increasing, nonpositive RMS, bad observer index, etc.).
  void validate() const;
};

/// Parses the JSON text form. Throws std::invalid_argument on schema errors.
DesignData parse_design_data(std::string_view json_text);
DesignData load_design_data(const std::filesystem::path& path);
/// Copy compiled into the library at build time.
const DesignData& embedded_design_data();

/// gain * prod(zero factors) / prod(pole factors), factors as descending
/// coefficient lists.
RationalFunction from_factors(double gain, const std::vector<std::vector<double>>& zero_factors,
                              const std::vector<std::vector<double>>& pole_factors);

struct SelfCheckResult {
  std::string observer;
  std::vector<EntryComparison> entries;
  double worst = 0.0;
  bool pass = true;
};

/// Runs the design pipeline for every shipped observer and compares each
/// observer entry (poles, zeros, gain) against the shipped reference.
std::vector<SelfCheckResult> self_check(const DesignData& data, double tol = 0.01);

/// Pipeline observers for the shipped operating points, in bank order.
std::vector<TransferMatrix> pipeline_observers(const DesignData& data);

}  // namespace ycoo

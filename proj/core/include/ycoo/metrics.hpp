#pragma once

#include "ycoo/simulation.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ycoo {

/// sqrt(mean(x^2)). Throws std::invalid_argument when empty.
double rms(std::span<const double> residuals);

/// Euclidean position error of one trace row.
double trajectory_residual(const TraceRow& row);

/// Two-tailed Welch unequal-variance t-test. Identical samples give 1; zero
/// spread with different means gives 0. Throws std::invalid_argument if a
/// sample has fewer than two values.
double welch_p_value(std::span<const double> a, std::span<const double> b);

/// Strict sign changes of the mean-removed signal over twice the duration
/// (length * sample_period). Throws std::invalid_argument for fewer than two
/// samples.
double mean_error_frequency(std::span<const double> residuals, double sample_period);

enum class Quantity { trajectory, heading, speed };
inline constexpr std::array<Quantity, 3> kQuantities{Quantity::trajectory, Quantity::heading, Quantity::speed};
std::string_view to_string(Quantity q);
std::string_view unit(Quantity q);

/// Per-sample residual series of a trace: metres, degrees, m/s.
std::vector<double> residual_series(const SimTrace& trace, Quantity q);

struct Tolerances {
  double trajectory = 0.05;  // m
  double heading = 0.05;     // deg
  double speed = 0.05;       // m/s
  [[nodiscard]] double of(Quantity q) const;
};

struct ObserverColumn {
  std::vector<double> run_rms;
  double mean_rms = 0.0;
  std::optional<double> std_rms;  // needs two runs
  double mean_frequency = 0.0;    // Hz
  bool within_tolerance = true;
};

struct QuantityReport {
  Quantity quantity = Quantity::trajectory;
  ObserverColumn ycoo;
  ObserverColumn luenberger;
  std::optional<double> p_value;  // needs two runs per observer
};

struct MetricsReport {
  ScenarioKind scenario = ScenarioKind::straight;
  std::size_t runs = 0;
  Tolerances tolerances;
  std::array<QuantityReport, 3> quantities;

  [[nodiscard]] const QuantityReport& of(Quantity q) const;
};

/// Throws std::invalid_argument if the run counts differ, a set is empty or
/// the traces mix scenarios.
MetricsReport build_report(const std::vector<SimTrace>& ycoo, const std::vector<SimTrace>& luenberger,
                           const Tolerances& tol = {});

/// Column summary for one observer's traces.
ObserverColumn summarize(const std::vector<SimTrace>& traces, Quantity q, double tolerance);

}  // namespace ycoo

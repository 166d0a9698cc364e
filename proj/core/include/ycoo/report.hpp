#pragma once

#include "ycoo/design_data.hpp"
#include "ycoo/metrics.hpp"
#include "ycoo/youla_design.hpp"

#include <string>
#include <vector>

namespace ycoo {

/// "k (s + 166.7) s / ((s + 6.897) (s^2 + 2441 s + 2.105e+06))" with real
/// roots as linear factors and conjugate pairs as quadratics.
std::string format_factored(const RationalFunction& r, int precision = 5);

/// Comparison report: RMS, spread, p-value and error frequency per quantity, one block per scenario.
std::string report_json(const std::vector<MetricsReport>& reports);
std::string report_text(const std::vector<MetricsReport>& reports);

struct RobustnessRow {
  double factor = 1.0;
  ObserverKind observer = ObserverKind::ycoo;
  double rms_heading = 0.0;  // deg
  double rms_speed = 0.0;    // m/s
  bool heading_ok = true;
  bool speed_ok = true;
};

std::vector<RobustnessRow> robustness_rows(const std::vector<RobustnessRun>& runs, const Tolerances& tol = {});
std::string robustness_json(const std::vector<RobustnessRow>& rows);
std::string robustness_text(const std::vector<RobustnessRow>& rows);

/// Every matrix of a design in descending-coefficient form plus factored
/// text, bandwidths and interpolation residuals.
std::string design_json(const YoulaDesignResult& res, const std::string& name);
std::string design_text(const YoulaDesignResult& res, const std::string& name);

/// omega, then |T|, |S|, |Y|, |Gc| for each diagonal channel.
std::string frequency_response_csv(const YoulaDesignResult& res, double lo = 1e-1, double hi = 1e5,
                                   int points = 400);

/// Per-observer self-check summary, one line each.
std::string self_check_text(const std::vector<SelfCheckResult>& results);

}  // namespace ycoo

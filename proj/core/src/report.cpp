#include "ycoo/report.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>

namespace ycoo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string num(double v, int precision) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << v;
  return ss.str();
}

std::string linear_factor(double root, int precision) {
  if (root == 0.0) return "s";
  return root < 0.0 ? "(s + " + num(-root, precision) + ")" : "(s - " + num(root, precision) + ")";
}

std::string factor_list(const std::vector<Complex>& roots, int precision) {
  std::string out;
  for (const Complex& r : roots) {
    if (r.imag() < 0.0) continue;
    std::string f;
    if (r.imag() == 0.0) {
      f = linear_factor(r.real(), precision);
    } else {
      const double b = -2.0 * r.real();
      const double c = std::norm(r);
      f = "(s^2 " + std::string(b < 0 ? "- " : "+ ") + num(std::abs(b), precision) + " s + " + num(c, precision) + ")";
    }
    out += (out.empty() ? "" : " ") + f;
  }
  return out;
}

ordered_json poly_json(const Polynomial& p) { return p.descending(); }

ordered_json rational_json(const RationalFunction& r) {
  ordered_json j;
  j["num"] = poly_json(r.num());
  j["den"] = poly_json(r.den());
  j["factored"] = format_factored(r);
  return j;
}

ordered_json matrix_json(const TransferMatrix& g) {
  ordered_json j = ordered_json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < g.cols(); ++k) row.push_back(rational_json(g(i, k)));
    j.push_back(row);
  }
  return j;
}

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json column_json(const ObserverColumn& c) {
  ordered_json j;
  j["mean_rms"] = c.mean_rms;
  j["std_rms"] = opt(c.std_rms);
  j["mean_error_frequency_hz"] = c.mean_frequency;
  j["within_tolerance"] = c.within_tolerance;
  j["run_rms"] = c.run_rms;
  return j;
}

std::string cell(double v, int width = 11) {
  std::ostringstream ss;
  ss << std::setw(width) << std::setprecision(4) << v;
  return ss.str();
}

std::string cell(const std::optional<double>& v, int width = 11) {
  if (!v) return std::string(static_cast<std::size_t>(width - 3), ' ') + "n/a";
  return cell(*v, width);
}

std::string flag(bool ok) { return ok ? " " : "!"; }

}  // namespace

std::string format_factored(const RationalFunction& r, int precision) {
  if (r.is_zero()) return "0";
  std::string out = num(r.gain(), precision);
  const std::string zs = factor_list(r.zeros(), precision);
  if (!zs.empty()) out += " " + zs;
  const std::string ps = factor_list(r.poles(), precision);
  if (!ps.empty()) out += " / (" + ps + ")";
  return out;
}

std::string report_json(const std::vector<MetricsReport>& reports) {
  ordered_json root = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json b;
    b["scenario"] = std::string(to_string(r.scenario));
    b["runs"] = r.runs;
    for (const auto& q : r.quantities) {
      ordered_json j;
      j["unit"] = std::string(unit(q.quantity));
      j["tolerance"] = r.tolerances.of(q.quantity);
      j["ycoo"] = column_json(q.ycoo);
      j["luenberger"] = column_json(q.luenberger);
      j["p_value"] = opt(q.p_value);
      b[std::string(to_string(q.quantity))] = j;
    }
    root.push_back(b);
  }
  return root.dump(2) + "\n";
}

std::string report_text(const std::vector<MetricsReport>& reports) {
  std::ostringstream ss;
  ss << "RMS (mean over runs), STD of per-run RMS, Welch p-value, mean error frequency\n";
  ss << "'!' marks a mean RMS at or above tolerance\n\n";
  for (const auto& r : reports) {
    ss << "[" << to_string(r.scenario) << "]  runs=" << r.runs << "\n";
    ss << std::left << std::setw(18) << "quantity" << std::right << std::setw(11) << "rms ycoo" << " "
       << std::setw(11) << "rms nl" << " ";
    for (const char* h : {"std ycoo", "std nl", "p-value", "f ycoo Hz", "f nl Hz"}) ss << std::setw(11) << h;
    ss << "\n";
    for (const auto& q : r.quantities) {
      const std::string label = std::string(to_string(q.quantity)) + " (" + std::string(unit(q.quantity)) + ")";
      ss << std::left << std::setw(18) << label << std::right << cell(q.ycoo.mean_rms)
         << flag(q.ycoo.within_tolerance) << cell(q.luenberger.mean_rms) << flag(q.luenberger.within_tolerance)
         << cell(q.ycoo.std_rms) << cell(q.luenberger.std_rms) << cell(q.p_value) << cell(q.ycoo.mean_frequency)
         << cell(q.luenberger.mean_frequency) << "\n";
    }
    ss << "\n";
  }
  return ss.str();
}

std::vector<RobustnessRow> robustness_rows(const std::vector<RobustnessRun>& runs, const Tolerances& tol) {
  std::vector<RobustnessRow> rows;
  for (const auto& run : runs)
    for (const auto* t : {run.result.ycoo ? &*run.result.ycoo : nullptr,
                          run.result.luenberger ? &*run.result.luenberger : nullptr}) {
      if (!t) continue;
      RobustnessRow row;
      row.factor = run.factor;
      row.observer = t->observer;
      row.rms_heading = rms(residual_series(*t, Quantity::heading));
      row.rms_speed = rms(residual_series(*t, Quantity::speed));
      row.heading_ok = row.rms_heading < tol.heading;
      row.speed_ok = row.rms_speed < tol.speed;
      rows.push_back(row);
    }
  return rows;
}

std::string robustness_json(const std::vector<RobustnessRow>& rows) {
  ordered_json root = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["factor"] = r.factor;
    j["observer"] = std::string(to_string(r.observer));
    j["rms_heading_deg"] = r.rms_heading;
    j["rms_speed"] = r.rms_speed;
    j["heading_within_tolerance"] = r.heading_ok;
    j["speed_within_tolerance"] = r.speed_ok;
    root.push_back(j);
  }
  return root.dump(2) + "\n";
}

std::string robustness_text(const std::vector<RobustnessRow>& rows) {
  std::ostringstream ss;
  ss << "wheelbase factor, observer, RMS heading (deg), RMS speed (m/s); '!' = at or above tolerance\n";
  for (ObserverKind k : {ObserverKind::ycoo, ObserverKind::luenberger}) {
    ss << "[" << to_string(k) << "]\n";
    for (const auto& r : rows) {
      if (r.observer != k) continue;
      ss << std::setw(8) << std::setprecision(3) << r.factor << cell(r.rms_heading, 12) << flag(r.heading_ok)
         << cell(r.rms_speed, 12) << flag(r.speed_ok) << "\n";
    }
  }
  return ss.str();
}

std::string design_json(const YoulaDesignResult& res, const std::string& name) {
  ordered_json j;
  j["name"] = name;
  j["operating_point"] = {{"speed", res.op.speed}, {"heading_deg", rad2deg(res.op.heading)},
                          {"steer_deg", rad2deg(res.op.steer)}};
  j["params"] = {{"w1", res.params.w1}, {"w2", res.params.w2}, {"tau", res.params.tau},
                 {"rolloff", {res.params.rolloff1, res.params.rolloff2}}};
  j["plant"] = matrix_json(res.plant);
  j["smith_left"] = matrix_json(res.smith.left);
  j["smith_form"] = matrix_json(res.smith.form);
  j["smith_right"] = matrix_json(res.smith.right);
  j["target"] = matrix_json(res.target);
  j["youla_diag"] = matrix_json(res.youla_diag);
  j["youla"] = matrix_json(res.youla);
  j["comp_sensitivity"] = matrix_json(res.comp_sensitivity);
  j["sensitivity"] = matrix_json(res.sensitivity);
  j["observer"] = matrix_json(res.observer);
  j["bandwidth_rad_s"] = bandwidth_report(res);
  ordered_json interp = ordered_json::array();
  for (const auto& c : res.interpolation.channels)
    interp.push_back({{"channel", c.channel}, {"constrained", c.constrained}, {"value_residual", c.value_residual},
                      {"slope_residual", c.slope_residual}, {"pass", c.pass}});
  j["interpolation"] = interp;
  return j.dump(2) + "\n";
}

std::string design_text(const YoulaDesignResult& res, const std::string& name) {
  std::ostringstream ss;
  ss << "# " << name << ": V0 = " << res.op.speed << " m/s, heading = " << rad2deg(res.op.heading)
     << " deg; w1 = " << res.params.w1 << ", w2 = " << res.params.w2 << ", tau = " << res.params.tau << "\n";
  auto dump = [&](const char* label, const TransferMatrix& g) {
    ss << label << "\n";
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t k = 0; k < g.cols(); ++k)
        ss << "  (" << i << "," << k << ")  " << format_factored(g(i, k)) << "\n";
  };
  dump("plant [Y; X] <- [steer, accel]", res.plant);
  dump("smith-mcmillan form", res.smith.form);
  dump("left unimodular factor", res.smith.left);
  dump("target closed loop", res.target);
  dump("youla parameter", res.youla);
  dump("complementary sensitivity", res.comp_sensitivity);
  dump("sensitivity", res.sensitivity);
  dump("observer [steer; accel] <- [e_Y, e_X]", res.observer);
  const auto bw = bandwidth_report(res);
  ss << "crossover (rad/s):";
  for (double b : bw) ss << " " << num(b, 6);
  ss << "\n";
  return ss.str();
}

std::string frequency_response_csv(const YoulaDesignResult& res, double lo, double hi, int points) {
  std::ostringstream ss;
  ss << "omega";
  for (std::size_t c = 0; c < res.comp_sensitivity.rows(); ++c)
    ss << ",T" << c + 1 << ",S" << c + 1 << ",Y" << c + 1 << ",Gc" << c + 1;
  ss << "\n" << std::setprecision(10);
  for (int k = 0; k < points; ++k) {
    const double w = std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * k / (points - 1));
    const Complex s(0.0, w);
    const auto t = res.comp_sensitivity.eval(s);
    const auto sn = res.sensitivity.eval(s);
    const auto y = res.youla.eval(s);
    const auto g = res.observer.eval(s);
    ss << w;
    for (Eigen::Index c = 0; c < t.rows(); ++c)
      ss << "," << std::abs(t(c, c)) << "," << std::abs(sn(c, c)) << "," << std::abs(y(c, c)) << ","
         << std::abs(g(c, c));
    ss << "\n";
  }
  return ss.str();
}

std::string self_check_text(const std::vector<SelfCheckResult>& results) {
  std::ostringstream ss;
  for (const auto& r : results)
    ss << (r.pass ? "ok   " : "FAIL ") << r.observer << ": worst pole/zero/gain deviation " << num(r.worst, 3)
       << "\n";
  return ss.str();
}

}  // namespace ycoo

#include "ycoo/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ycoo {

std::string_view trace_csv_header() {
  return "t,X_true,Y_true,V_true,psi_true,X_est,Y_est,V_est,psi_est,Y_meas,X_meas,delta_true,a_true,"
         "delta_est,a_est,w1,w2,w3,region";
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  out << trace_csv_header() << "\n";
  out << std::setprecision(12);
  for (const auto& r : trace.rows) {
    out << r.t << ',' << r.truth.x << ',' << r.truth.y << ',' << r.truth.speed << ',' << rad2deg(r.truth.heading)
        << ',' << r.est.x << ',' << r.est.y << ',' << r.est.speed << ',' << rad2deg(r.est.heading) << ','
        << r.meas.y << ',' << r.meas.x << ',' << rad2deg(r.u_true.steer) << ',' << r.u_true.accel << ','
        << rad2deg(r.u_est.steer) << ',' << r.u_est.accel << ',' << r.weights[0] << ',' << r.weights[1] << ','
        << r.weights[2] << ',' << r.region << "\n";
  }
}

SimTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != trace_csv_header())
    throw std::invalid_argument("trace csv: unexpected header");
  SimTrace t;
  bool any_region = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::invalid_argument("trace csv: bad number '" + cell + "'");
      }
    }
    if (v.size() != 19) throw std::invalid_argument("trace csv: expected 19 columns");
    TraceRow r;
    r.t = v[0];
    r.truth = {v[1], v[2], v[3], deg2rad(v[4])};
    r.est = {v[5], v[6], v[7], deg2rad(v[8])};
    r.meas = {v[9], v[10]};
    r.u_true = {deg2rad(v[11]), v[12]};
    r.u_est = {deg2rad(v[13]), v[14]};
    r.weights = {v[15], v[16], v[17]};
    r.region = static_cast<int>(v[18]);
    any_region = any_region || r.region != 0;
    t.rows.push_back(r);
  }
  t.observer = any_region ? ObserverKind::luenberger : ObserverKind::ycoo;
  if (t.rows.size() >= 2) t.sample_period = t.rows[1].t - t.rows[0].t;
  return t;
}

std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                          const std::vector<PlotSeries>& series, int width, int height) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  const double left = 70, right = 20, top = 30, bottom = 45;
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  double x0 = x.empty() ? 0.0 : x.front();
  double x1 = x.empty() ? 1.0 : x.back();
  double y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (double v : s.y)
      if (std::isfinite(v)) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
  if (!std::isfinite(y0)) y0 = 0.0, y1 = 1.0;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  if (x1 - x0 < 1e-12) x1 = x0 + 1.0;

  std::ostringstream o;
  o << std::setprecision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#333\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << title << "</text>\n";
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 8 << "\" text-anchor=\"middle\">" << x_label
    << "</text>\n";
  o << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << y1 << "</text>\n";
  o << "<text x=\"" << left - 6 << "\" y=\"" << top + ph << "\" text-anchor=\"end\">" << y0 << "</text>\n";
  o << "<text x=\"" << left << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << x0 << "</text>\n";
  o << "<text x=\"" << left + pw << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << x1 << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* c = colors[k % 5];
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1\" points=\"";
    const std::size_t n = std::min(x.size(), series[k].y.size());
    // at most ~2000 vertices per line
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    for (std::size_t i = 0; i < n; i += stride) {
      const double px = left + (x[i] - x0) / (x1 - x0) * pw;
      const double py = top + (y1 - series[k].y[i]) / (y1 - y0) * ph;
      o << px << ',' << py << ' ';
    }
    o << "\"/>\n";
    o << "<line x1=\"" << left + 10 << "\" y1=\"" << top + 14 + 14 * k << "\" x2=\"" << left + 30 << "\" y2=\""
      << top + 14 + 14 * k << "\" stroke=\"" << c << "\"/>\n";
    o << "<text x=\"" << left + 35 << "\" y=\"" << top + 18 + 14 * k << "\">" << series[k].label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<std::pair<std::string, std::string>> trace_plots(const SimTrace& trace) {
  std::vector<double> t, xt, xe, yt, ye, vt, ve, pt, pe, epos, ep, ev;
  for (const auto& r : trace.rows) {
    t.push_back(r.t);
    xt.push_back(r.truth.x);
    xe.push_back(r.est.x);
    yt.push_back(r.truth.y);
    ye.push_back(r.est.y);
    vt.push_back(r.truth.speed);
    ve.push_back(r.est.speed);
    pt.push_back(rad2deg(r.truth.heading));
    pe.push_back(rad2deg(r.est.heading));
    epos.push_back(std::hypot(r.est.x - r.truth.x, r.est.y - r.truth.y));
    ep.push_back(std::abs(pe.back() - pt.back()));
    ev.push_back(std::abs(r.est.speed - r.truth.speed));
  }
  const std::string who(to_string(trace.observer));
  return {
      {"position.svg", svg_line_plot("position (" + who + ")", "t (s)", t,
                                     {{"X true", xt}, {"X est", xe}, {"Y true", yt}, {"Y est", ye}})},
      {"speed.svg", svg_line_plot("speed (" + who + ")", "t (s)", t, {{"V true", vt}, {"V est", ve}})},
      {"heading.svg", svg_line_plot("heading (" + who + ")", "t (s)", t, {{"psi true", pt}, {"psi est", pe}})},
      {"errors.svg", svg_line_plot("absolute errors (" + who + ")", "t (s)", t,
                                   {{"position (m)", epos}, {"heading (deg)", ep}, {"speed (m/s)", ev}})},
  };
}

}  // namespace ycoo

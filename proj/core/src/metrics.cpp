#include "ycoo/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ycoo {

double rms(std::span<const double> r) {
  if (r.empty()) throw std::invalid_argument("rms: empty sequence");
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s / static_cast<double>(r.size()));
}

double trajectory_residual(const TraceRow& row) {
  return std::hypot(row.est.x - row.truth.x, row.est.y - row.truth.y);
}

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

Moments moments(std::span<const double> x) {
  Moments m;
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var /= static_cast<double>(x.size() - 1);
  return m;
}

}  // namespace

double welch_p_value(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_p_value: need two values per sample");
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = ma.var / na;
  const double vb = mb.var / nb;
  const double diff = ma.mean - mb.mean;
  const double scale = std::max({std::abs(ma.mean), std::abs(mb.mean), 1e-300});
  if (va + vb <= 0.0) return std::abs(diff) <= 1e-15 * scale ? 1.0 : 0.0;
  if (diff == 0.0) return 1.0;
  const double t = diff / std::sqrt(va + vb);
  const double nu = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  const boost::math::students_t dist(nu);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double mean_error_frequency(std::span<const double> r, double sample_period) {
  if (r.size() < 2) throw std::invalid_argument("mean_error_frequency: need two samples");
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  const double spread = std::accumulate(r.begin(), r.end(), 0.0,
                                        [&](double acc, double v) { return std::max(acc, std::abs(v - mean)); });
  // a constant signal leaves only rounding noise around its mean
  if (spread <= 1e-12 * std::max(std::abs(mean), 1e-300) || spread == 0.0) return 0.0;
  std::size_t changes = 0;
  int prev = 0;
  for (double v : r) {
    const double c = v - mean;
    const int sgn = c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
    if (sgn == 0) continue;
    if (prev != 0 && sgn != prev) ++changes;
    prev = sgn;
  }
  const double duration = static_cast<double>(r.size()) * sample_period;
  return static_cast<double>(changes) / (2.0 * duration);
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::trajectory: return "trajectory";
    case Quantity::heading: return "heading";
    case Quantity::speed: return "speed";
  }
  return "?";
}

std::string_view unit(Quantity q) {
  switch (q) {
    case Quantity::trajectory: return "m";
    case Quantity::heading: return "deg";
    case Quantity::speed: return "m/s";
  }
  return "?";
}

std::vector<double> residual_series(const SimTrace& trace, Quantity q) {
  std::vector<double> out;
  out.reserve(trace.rows.size());
  for (const auto& r : trace.rows) {
    switch (q) {
      case Quantity::trajectory: out.push_back(trajectory_residual(r)); break;
      case Quantity::heading: out.push_back(rad2deg(r.est.heading - r.truth.heading)); break;
      case Quantity::speed: out.push_back(r.est.speed - r.truth.speed); break;
    }
  }
  return out;
}

double Tolerances::of(Quantity q) const {
  switch (q) {
    case Quantity::trajectory: return trajectory;
    case Quantity::heading: return heading;
    case Quantity::speed: return speed;
  }
  return 0.0;
}

const QuantityReport& MetricsReport::of(Quantity q) const { return quantities[static_cast<std::size_t>(q)]; }

ObserverColumn summarize(const std::vector<SimTrace>& traces, Quantity q, double tolerance) {
  ObserverColumn c;
  double freq = 0.0;
  for (const auto& t : traces) {
    const auto r = residual_series(t, q);
    c.run_rms.push_back(rms(r));
    freq += mean_error_frequency(r, t.sample_period);
  }
  const Moments m = c.run_rms.size() >= 2 ? moments(c.run_rms) : Moments{c.run_rms.front(), 0.0};
  c.mean_rms = m.mean;
  if (c.run_rms.size() >= 2) c.std_rms = std::sqrt(m.var);
  c.mean_frequency = freq / static_cast<double>(traces.size());
  c.within_tolerance = c.mean_rms < tolerance;
  return c;
}

MetricsReport build_report(const std::vector<SimTrace>& ycoo, const std::vector<SimTrace>& lu,
                           const Tolerances& tol) {
  if (ycoo.empty() || ycoo.size() != lu.size()) throw std::invalid_argument("build_report: run counts differ");
  const ScenarioKind kind = ycoo.front().scenario;
  for (const auto* set : {&ycoo, &lu})
    for (const auto& t : *set)
      if (t.scenario != kind) throw std::invalid_argument("build_report: traces mix scenarios");
  MetricsReport rep;
  rep.scenario = kind;
  rep.runs = ycoo.size();
  rep.tolerances = tol;
  for (Quantity q : kQuantities) {
    QuantityReport& qr = rep.quantities[static_cast<std::size_t>(q)];
    qr.quantity = q;
    qr.ycoo = summarize(ycoo, q, tol.of(q));
    qr.luenberger = summarize(lu, q, tol.of(q));
    if (rep.runs >= 2) qr.p_value = welch_p_value(qr.ycoo.run_rms, qr.luenberger.run_rms);
  }
  return rep;
}

}  // namespace ycoo

#include "ycoo/observer_bank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ycoo {

BankLayout BankLayout::from(const DesignData& data) {
  BankLayout l;
  for (const auto& o : data.observers) l.ranges.emplace_back(o.range_lo_deg, o.range_hi_deg);
  l.overlaps = data.overlaps;
  return l;
}

namespace {

double wrap360(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

double interp(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), at) - x.begin());
  const std::size_t lo = hi - 1;
  const double f = (at - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + f * (y[hi] - y[lo]);
}

}  // namespace

bool heading_in_range(double psi_deg, double lo_deg, double hi_deg) {
  const double p = wrap360(psi_deg);
  for (double shift : {-360.0, 0.0, 360.0})
    if (p + shift >= lo_deg && p + shift <= hi_deg) return true;
  return false;
}

Eigen::VectorXd select_weights(double psi_deg, const BankLayout& layout) {
  const double p = wrap360(psi_deg);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.ranges.size()));
  for (const auto& win : layout.overlaps) {
    if (!heading_in_range(p, win.lo_deg, win.hi_deg)) continue;
    // table grids are stated inside [0, 360)
    double at = p;
    if (at < win.lo_deg) at += 360.0;
    const double ri = interp(win.grid_deg, win.rms[0], at);
    const double rj = interp(win.grid_deg, win.rms[1], at);
    w(static_cast<Eigen::Index>(win.observers[0])) = rj / (ri + rj);
    w(static_cast<Eigen::Index>(win.observers[1])) = ri / (ri + rj);
    return w;
  }
  for (std::size_t k = 0; k < layout.ranges.size(); ++k)
    if (heading_in_range(p, layout.ranges[k].first, layout.ranges[k].second)) {
      w(static_cast<Eigen::Index>(k)) = 1.0;
      return w;
    }
  throw std::domain_error("select_weights: no observer covers heading " + std::to_string(p));
}

BankPrototype BankPrototype::from(const DesignData& data, ObserverSource source, double ts) {
  BankPrototype p;
  p.layout = BankLayout::from(data);
  p.model = data.vehicle;
  p.ts = ts;
  std::vector<TransferMatrix> g;
  if (source == ObserverSource::pipeline) {
    g = pipeline_observers(data);
  } else {
    for (const auto& o : data.observers) g.push_back(o.reference);
  }
  for (const auto& m : g) p.filters.push_back(discretize(realize(m), ts));
  return p;
}

ObserverBank::ObserverBank(const BankPrototype& proto)
    : filters_(proto.filters), layout_(proto.layout), params_(proto.model), ts_(proto.ts),
      outputs_(proto.filters.size()) {}

void ObserverBank::reset(const VehicleState& initial) {
  for (auto& f : filters_) f.reset();
  model_ = initial;
  std::fill(outputs_.begin(), outputs_.end(), ControlInput{});
}

BankOutput ObserverBank::step(const Measurement& y) {
  const Measurement yhat = measure(model_);
  const Eigen::Vector2d e(y.y - yhat.y, y.x - yhat.x);
  for (std::size_t k = 0; k < filters_.size(); ++k) outputs_[k] = ControlInput::from(filters_[k].step(e));

  BankOutput out;
  out.weights = select_weights(rad2deg(model_.heading), layout_);
  for (std::size_t k = 0; k < filters_.size(); ++k) {
    const double wk = out.weights(static_cast<Eigen::Index>(k));
    out.u_hat.steer += wk * outputs_[k].steer;
    out.u_hat.accel += wk * outputs_[k].accel;
  }
  model_ = integrate_step(model_, out.u_hat, params_, ts_);
  out.estimate = model_;
  return out;
}

BankOutput ycoo_step(ObserverBank& bank, const Measurement& y) { return bank.step(y); }

}  // namespace ycoo

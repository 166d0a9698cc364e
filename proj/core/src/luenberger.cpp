#include "ycoo/luenberger.hpp"

#include "ycoo/observer_bank.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace ycoo {

LuenbergerGainSet::LuenbergerGainSet(std::vector<LuenbergerRegion> regions) : regions_(std::move(regions)) {
  if (regions_.empty()) throw std::invalid_argument("LuenbergerGainSet: no regions");
}

const Mat42& LuenbergerGainSet::select(double psi_deg) {
  const int n = static_cast<int>(regions_.size());
  auto inside = [&](int k) {
    return heading_in_range(psi_deg, regions_[static_cast<std::size_t>(k)].lo_deg,
                            regions_[static_cast<std::size_t>(k)].hi_deg);
  };
  if (current_ >= 0 && inside(current_)) return regions_[static_cast<std::size_t>(current_)].gain;
  if (current_ >= 0) {
    for (int step : {1, -1}) {
      const int k = ((current_ + step) % n + n) % n;
      if (inside(k)) {
        current_ = k;
        return regions_[static_cast<std::size_t>(k)].gain;
      }
    }
  }
  for (int k = 0; k < n; ++k)
    if (inside(k)) {
      current_ = k;
      return regions_[static_cast<std::size_t>(k)].gain;
    }
  throw std::domain_error("LuenbergerGainSet: no region covers heading " + std::to_string(psi_deg));
}

const Mat42& select_luenberger_gain(LuenbergerGainSet& gains, double psi_deg) { return gains.select(psi_deg); }

Mat24 innovation_matrix() {
  Mat24 c;
  c << 1, 0, 0, 0,
       0, 1, 0, 0;
  return c;
}

VehicleState luenberger_step(const VehicleState& est, LuenbergerGainSet& gains, const Measurement& y,
                             const ControlInput& u, const VehicleParams& params, double dt) {
  const Mat42 L = gains.select(rad2deg(est.heading));
  const Vec2 ym(y.x, y.y);
  auto rhs = [&](const Vec4& x) -> Vec4 {
    const Vec2 innov = ym - Vec2(x[0], x[1]);
    return dynamics(VehicleState::from(x), u, params) + L * innov;
  };
  const Vec4 x = est.vec();
  const Vec4 k1 = rhs(x);
  const Vec4 k2 = rhs(x + 0.5 * dt * k1);
  const Vec4 k3 = rhs(x + 0.5 * dt * k2);
  const Vec4 k4 = rhs(x + dt * k3);
  return VehicleState::from(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

std::vector<GainMargin> verify_gain_stability(const std::vector<LuenbergerRegion>& regions,
                                              const VehicleParams& params) {
  std::vector<double> speeds{0.5};
  for (int v = 2; v <= 20; v += 2) speeds.push_back(v);
  const Mat24 C = innovation_matrix();
  std::vector<GainMargin> out;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const auto& reg = regions[r];
    GainMargin m;
    m.region = r;
    m.worst_real = -INFINITY;
    m.gain_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(reg.gain).singularValues()(0);
    for (double psi = reg.lo_deg; psi <= reg.hi_deg + 1e-9; psi += 10.0)
      for (double v : speeds)
        for (int d = -20; d <= 20; d += 5) {
          const VehicleState s{0.0, 0.0, v, deg2rad(psi)};
          const ControlInput u{deg2rad(d), 0.0};
          const Mat4 a = jacobian_A(s, u, params) - reg.gain * C;
          const double re = a.eigenvalues().real().maxCoeff();
          if (re > m.worst_real) {
            m.worst_real = re;
            m.speed = v;
            m.heading_deg = psi;
            m.steer_deg = d;
          }
        }
    m.stable = m.worst_real < 0.0;
    out.push_back(m);
  }
  return out;
}

}  // namespace ycoo

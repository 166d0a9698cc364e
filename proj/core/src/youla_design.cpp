#include "ycoo/youla_design.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ycoo {

void DesignParams::validate() const {
  if (!(w2 > 0.0 && w1 > w2)) throw std::invalid_argument("DesignParams: need w1 > w2 > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("DesignParams: tau must be positive");
  if (1.0 / tau < 2.0 * w1) throw std::invalid_argument("DesignParams: roll-off pole closer than 2*w1");
  if (rolloff1 < 1 || rolloff2 < 1) throw std::invalid_argument("DesignParams: roll-off order below 1");
}

TransferMatrix state_space_to_tf(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                                 const Eigen::MatrixXd& D) {
  const Eigen::Index n = A.rows();
  const auto p = static_cast<std::size_t>(C.rows());
  const auto m = static_cast<std::size_t>(B.cols());

  // adj(sI - A) = sum_k M_k s^(n-1-k), det(sI - A) = sum_i c_i s^i.
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 1.0;
  std::vector<Eigen::MatrixXd> M;
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    M.push_back(Mk);
    const Eigen::MatrixXd AM = A * Mk;
    const double ck = -AM.trace() / static_cast<double>(k);
    c[static_cast<std::size_t>(n - k)] = ck;
    Mk = AM + ck * Eigen::MatrixXd::Identity(n, n);
  }
  const Polynomial det(c);

  std::vector<std::vector<double>> nums(p * m, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  double scale = 0.0;
  for (std::size_t k = 0; k < M.size(); ++k) {
    const Eigen::MatrixXd CMB = C * M[k] * B;
    const std::size_t power = static_cast<std::size_t>(n) - 1 - k;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double v = CMB(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        nums[i * m + j][power] += v;
        scale = std::max(scale, std::abs(v));
      }
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double d = D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      for (std::size_t k = 0; k < c.size(); ++k) nums[i * m + j][k] += d * c[k];
      scale = std::max(scale, std::abs(d));
    }

  TransferMatrix g(p, m);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto& v = nums[i * m + j];
      for (double& x : v)
        if (std::abs(x) < 1e-12 * scale) x = 0.0;
      g(i, j) = RationalFunction(Polynomial(v), det);
    }
  return g;
}

TransferMatrix build_plant(const OperatingPoint& op, const VehicleParams& params) {
  const VehicleState s{0.0, 0.0, op.speed, op.heading};
  const ControlInput u{op.steer, 0.0};
  const Eigen::MatrixXd A = jacobian_A(s, u, params);
  const Eigen::MatrixXd B = jacobian_B(s, u, params);
  const Eigen::MatrixXd C = output_matrix();
  return state_space_to_tf(A, B, C, Eigen::MatrixXd::Zero(2, 2));
}

SmithMcMillanResult smith_mcmillan(const TransferMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw std::invalid_argument("smith_mcmillan: plant must be 2x2");

  std::vector<Complex> d;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) d = lcm_poles(d, g(i, j).poles());

  Polynomial n[2][2];
  Polynomial d1;
  bool any = false;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      n[i][j] = numerator_over(g(i, j), d);
      if (n[i][j].is_zero()) continue;
      d1 = any ? poly_gcd(d1, n[i][j]) : n[i][j].monic();
      any = true;
    }
  if (!any) throw std::domain_error("smith_mcmillan: zero plant");

  const Polynomial p1 = n[0][0] * n[1][1];
  const Polynomial p2 = n[0][1] * n[1][0];
  const Polynomial d2 = p1 - p2;
  if (d2.is_zero() || d2.max_abs() <= 1e-9 * std::max(p1.max_abs(), p2.max_abs()))
    throw std::domain_error("smith_mcmillan: plant is rank deficient");

  const Polynomial second = divide(d2, d1).quotient.monic();
  SmithMcMillanResult r;
  r.form = TransferMatrix::diagonal({RationalFunction::from_poles(d1, d), RationalFunction::from_poles(second, d)});
  r.right = TransferMatrix::identity(2);
  r.left = r.form * tfm_inverse_2x2(g);
  return r;
}

namespace {

RationalFunction target_entry(double w, double tau, int rolloff) {
  std::vector<Complex> poles(3, Complex(-w));
  for (int k = 0; k < rolloff; ++k) poles.emplace_back(-1.0 / tau);
  const double lead = std::pow(tau, -rolloff);
  return RationalFunction::from_poles(Polynomial{w * w * w * lead, 3.0 * w * w * lead}, poles);
}

int origin_poles(const RationalFunction& r) {
  return static_cast<int>(std::count_if(r.poles().begin(), r.poles().end(),
                                        [](Complex p) { return std::abs(p) <= 1e-12; }));
}

}  // namespace

TransferMatrix make_target_closed_loop(const DesignParams& dp) {
  dp.validate();
  return TransferMatrix::diagonal({target_entry(dp.w1, dp.tau, dp.rolloff1), target_entry(dp.w2, dp.tau, dp.rolloff2)});
}

InterpolationReport check_interpolation(const TransferMatrix& target, const TransferMatrix& form, double eps,
                                        double tol) {
  if (target.rows() != form.rows() || target.cols() != form.cols())
    throw std::invalid_argument("check_interpolation: shapes differ");
  InterpolationReport rep;
  for (std::size_t i = 0; i < std::min(target.rows(), target.cols()); ++i) {
    InterpolationChannel ch;
    ch.channel = i;
    ch.constrained = origin_poles(form(i, i)) >= 2;
    const RationalFunction& t = target(i, i);
    ch.value_residual = std::abs(t.eval(0.0) - 1.0);
    ch.slope_residual = std::abs((t.eval(eps) - t.eval(-eps)) / (2.0 * eps));
    ch.pass = !ch.constrained || (ch.value_residual < tol && ch.slope_residual < tol);
    rep.pass = rep.pass && ch.pass;
    rep.channels.push_back(ch);
  }
  return rep;
}

YoulaDesignResult assemble_loop(const TransferMatrix& plant, const SmithMcMillanResult& smith,
                                const TransferMatrix& target) {
  YoulaDesignResult r;
  r.plant = plant;
  r.smith = smith;
  r.target = target;
  std::vector<RationalFunction> diag;
  for (std::size_t i = 0; i < target.rows(); ++i) diag.push_back(target(i, i) / smith.form(i, i));
  r.youla_diag = TransferMatrix::diagonal(diag);
  r.youla = smith.right * r.youla_diag * smith.left;
  r.comp_sensitivity = plant * r.youla;
  r.sensitivity = TransferMatrix::identity(plant.rows()) - r.comp_sensitivity;
  // Y S^-1 through the factorization: S = U_L^-1 (I - M_T) U_L, so the observer
  // is U_R diag(M_Y / (1 - M_T)) U_L. Going through the 2x2 adjugate instead
  // squares every denominator and the cancellations stop being reliable in
  // double precision once the channels are coupled.
  std::vector<RationalFunction> loop;
  for (std::size_t i = 0; i < target.rows(); ++i)
    loop.push_back(diag[i] * (RationalFunction(1.0) - target(i, i)).inverse());
  r.observer = smith.right * TransferMatrix::diagonal(loop) * smith.left;
  if (!r.observer.is_proper()) throw std::domain_error("assemble_loop: improper observer entry");
  r.interpolation = check_interpolation(target, smith.form);
  return r;
}

YoulaDesignResult design_observer(const OperatingPoint& op, const DesignParams& dp, const VehicleParams& params) {
  const TransferMatrix plant = build_plant(op, params);
  const SmithMcMillanResult sm = smith_mcmillan(plant);
  YoulaDesignResult r = assemble_loop(plant, sm, make_target_closed_loop(dp));
  r.op = op;
  r.params = dp;
  return r;
}

double crossover_frequency(const RationalFunction& t, const RationalFunction& s, double lo, double hi) {
  auto gap = [&](double logw) {
    const double w = std::pow(10.0, logw);
    return std::abs(t.at_frequency(w)) - std::abs(s.at_frequency(w));
  };
  const int n = 4000;
  const double a0 = std::log10(lo);
  const double a1 = std::log10(hi);
  double prev_x = a0;
  double prev = gap(a0);
  for (int k = 1; k <= n; ++k) {
    const double x = a0 + (a1 - a0) * k / n;
    const double g = gap(x);
    if ((prev > 0.0) != (g > 0.0)) {
      double l = prev_x;
      double h = x;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (l + h);
        if ((gap(mid) > 0.0) == (prev > 0.0)) l = mid;
        else h = mid;
      }
      return std::pow(10.0, 0.5 * (l + h));
    }
    prev = g;
    prev_x = x;
  }
  throw std::runtime_error("crossover_frequency: no crossing in range");
}

std::vector<double> bandwidth_report(const YoulaDesignResult& res) {
  std::vector<double> out;
  for (std::size_t i = 0; i < res.comp_sensitivity.rows(); ++i)
    out.push_back(crossover_frequency(res.comp_sensitivity(i, i), res.sensitivity(i, i)));
  return out;
}

double EntryComparison::worst() const {
  return structure_ok ? std::max({pole_error, zero_error, gain_error}) : INFINITY;
}

namespace {

double match_roots(const std::vector<Complex>& got, const std::vector<Complex>& want) {
  std::vector<bool> used(got.size(), false);
  double worst = 0.0;
  for (const Complex& w : want) {
    std::size_t best = got.size();
    for (std::size_t k = 0; k < got.size(); ++k) {
      if (used[k]) continue;
      if (best == got.size() || std::abs(got[k] - w) < std::abs(got[best] - w)) best = k;
    }
    used[best] = true;
    worst = std::max(worst, std::abs(got[best] - w) / std::max(std::abs(w), 1e-6));
  }
  return worst;
}

}  // namespace

EntryComparison compare_entry(const RationalFunction& got, const RationalFunction& want) {
  EntryComparison c;
  if (got.is_zero() || want.is_zero()) {
    c.structure_ok = got.is_zero() == want.is_zero();
    return c;
  }
  const auto gp = got.poles();
  const auto wp = want.poles();
  const auto gz = got.zeros();
  const auto wz = want.zeros();
  if (gp.size() != wp.size() || gz.size() != wz.size()) {
    c.structure_ok = false;
    return c;
  }
  c.pole_error = match_roots(gp, wp);
  c.zero_error = match_roots(gz, wz);
  c.gain_error = std::abs(got.gain() - want.gain()) / std::abs(want.gain());
  return c;
}

std::vector<EntryComparison> compare_matrices(const TransferMatrix& got, const TransferMatrix& want) {
  if (got.rows() != want.rows() || got.cols() != want.cols())
    throw std::invalid_argument("compare_matrices: shapes differ");
  std::vector<EntryComparison> out;
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j) {
      EntryComparison c = compare_entry(got(i, j), want(i, j));
      c.row = i;
      c.col = j;
      out.push_back(c);
    }
  return out;
}

double observer_residual(const YoulaDesignResult& res, int probes) {
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    const double w = std::pow(10.0, -1.0 + 5.0 * k / std::max(probes - 1, 1));
    const Complex s(0.0, w);
    const Eigen::MatrixXcd direct = res.youla.eval(s) * res.sensitivity.eval(s).inverse();
    const Eigen::MatrixXcd got = res.observer.eval(s);
    worst = std::max(worst, (got - direct).norm() / direct.norm());
  }
  return worst;
}

double smith_residual(const TransferMatrix& g, const SmithMcMillanResult& sm, int probes) {
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    const double w = std::pow(10.0, -1.0 + 5.0 * k / std::max(probes - 1, 1));
    const Complex s(0.0, w);
    const Eigen::MatrixXcd lhs = sm.left.eval(s) * g.eval(s) * sm.right.eval(s);
    const Eigen::MatrixXcd rhs = sm.form.eval(s);
    worst = std::max(worst, (lhs - rhs).norm() / rhs.norm());
  }
  return worst;
}

}  // namespace ycoo

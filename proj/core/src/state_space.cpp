#include "ycoo/state_space.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace ycoo {

Eigen::MatrixXcd StateSpaceModel::eval(Complex s) const {
  const Eigen::Index n = states();
  Eigen::MatrixXcd out = D.cast<Complex>();
  if (n == 0) return out;
  const Eigen::MatrixXcd m = s * Eigen::MatrixXcd::Identity(n, n) - A.cast<Complex>();
  out += C.cast<Complex>() * m.partialPivLu().solve(B.cast<Complex>());
  return out;
}

DiscreteFilter::DiscreteFilter(Eigen::MatrixXd ad, Eigen::MatrixXd bd, Eigen::MatrixXd cd, Eigen::MatrixXd dd,
                               double ts)
    : ad_(std::move(ad)), bd_(std::move(bd)), cd_(std::move(cd)), dd_(std::move(dd)),
      x_(Eigen::VectorXd::Zero(ad_.rows())), ts_(ts) {}

Eigen::VectorXd DiscreteFilter::step(const Eigen::VectorXd& u) {
  Eigen::VectorXd y = dd_ * u;
  if (x_.size() == 0) return y;
  y += cd_ * x_;
  x_ = ad_ * x_ + bd_ * u;
  return y;
}

void DiscreteFilter::reset() { x_.setZero(); }

double DiscreteFilter::spectral_radius() const {
  if (ad_.rows() == 0) return 0.0;
  return ad_.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd DiscreteFilter::freq_response(double omega) const {
  Eigen::MatrixXcd out = dd_.cast<Complex>();
  const Eigen::Index n = ad_.rows();
  if (n == 0) return out;
  const Complex z = std::exp(Complex(0.0, omega * ts_));
  const Eigen::MatrixXcd m = z * Eigen::MatrixXcd::Identity(n, n) - ad_.cast<Complex>();
  out += cd_.cast<Complex>() * m.partialPivLu().solve(bd_.cast<Complex>());
  return out;
}

namespace {

struct Block {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;
  double d = 0.0;
};

Block realize_entry(const RationalFunction& r) {
  Block blk;
  if (r.is_zero()) return blk;
  if (!r.is_proper()) throw std::domain_error("realize: improper entry " + to_string(r));
  const Polynomial& den = r.den();  // monic
  const int n = den.degree();
  if (n == 0) {
    blk.d = r.num()[0] / den[0];
    return blk;
  }
  blk.d = r.num()[static_cast<std::size_t>(n)];
  const Polynomial rest = r.num() - den.scaled(blk.d);

  // s = w0 * sigma with w0 bounding the root moduli keeps the companion
  // coefficients at or below one.
  double w0 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(den[static_cast<std::size_t>(k)]);
    if (a > 0.0) w0 = std::max(w0, std::pow(a, 1.0 / (n - k)));
  }
  if (w0 == 0.0) w0 = 1.0;

  const auto N = static_cast<Eigen::Index>(n);
  blk.a = Eigen::MatrixXd::Zero(N, N);
  blk.b = Eigen::VectorXd::Zero(N);
  blk.c = Eigen::RowVectorXd::Zero(N);
  for (Eigen::Index k = 0; k + 1 < N; ++k) blk.a(k, k + 1) = 1.0;
  for (int k = 0; k < n; ++k) {
    const double scale = std::pow(w0, k - n);
    blk.a(N - 1, k) = -den[static_cast<std::size_t>(k)] * scale;
    blk.c(k) = rest[static_cast<std::size_t>(k)] * scale;
  }
  blk.a *= w0;
  blk.b(N - 1) = w0;
  return blk;
}

}  // namespace

StateSpaceModel realize(const TransferMatrix& g) {
  std::vector<Block> blocks;
  std::vector<std::pair<std::size_t, std::size_t>> where;
  Eigen::Index n = 0;
  StateSpaceModel ss;
  const auto p = static_cast<Eigen::Index>(g.rows());
  const auto m = static_cast<Eigen::Index>(g.cols());
  ss.D = Eigen::MatrixXd::Zero(p, m);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      Block b = realize_entry(g(i, j));
      ss.D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = b.d;
      if (b.a.rows() == 0) continue;
      n += b.a.rows();
      blocks.push_back(std::move(b));
      where.emplace_back(i, j);
    }
  ss.A = Eigen::MatrixXd::Zero(n, n);
  ss.B = Eigen::MatrixXd::Zero(n, m);
  ss.C = Eigen::MatrixXd::Zero(p, n);
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Eigen::Index sz = blocks[k].a.rows();
    const auto [i, j] = where[k];
    ss.A.block(off, off, sz, sz) = blocks[k].a;
    ss.B.block(off, static_cast<Eigen::Index>(j), sz, 1) = blocks[k].b;
    ss.C.block(static_cast<Eigen::Index>(i), off, 1, sz) = blocks[k].c;
    off += sz;
  }
  return ss;
}

DiscreteFilter discretize(const StateSpaceModel& ss, double ts) {
  if (!(ts > 0.0)) throw std::invalid_argument("discretize: sample period must be positive");
  const Eigen::Index n = ss.states();
  if (n == 0) return {ss.A, ss.B, ss.C, ss.D, ts};
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd M = I - 0.5 * ts * ss.A;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) throw std::domain_error("discretize: I - (ts/2) A is singular");
  const Eigen::MatrixXd Minv = lu.inverse();
  const Eigen::MatrixXd ad = Minv * (I + 0.5 * ts * ss.A);
  const Eigen::MatrixXd bd = Minv * ss.B * ts;
  const Eigen::MatrixXd cd = ss.C * Minv;
  const Eigen::MatrixXd dd = ss.D + 0.5 * ts * ss.C * Minv * ss.B;
  return {ad, bd, cd, dd, ts};
}

}  // namespace ycoo

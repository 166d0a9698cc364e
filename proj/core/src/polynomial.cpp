#include "ycoo/polynomial.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ycoo {

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  strip();
}

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) {
  strip();
}

void Polynomial::strip() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

Polynomial Polynomial::monomial(int power, double c) {
  if (power < 0) throw std::invalid_argument("monomial: negative power");
  std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_descending(std::span<const double> descending) {
  return Polynomial(std::vector<double>(descending.rbegin(), descending.rend()));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, double lead) {
  std::vector<Complex> c{Complex(lead)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  std::vector<double> re(c.size());
  std::transform(c.begin(), c.end(), re.begin(), [](const Complex& z) { return z.real(); });
  return Polynomial(std::move(re));
}

std::vector<double> Polynomial::descending() const {
  return {coeffs_.rbegin(), coeffs_.rend()};
}

double Polynomial::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

int Polynomial::low_order_zeros() const {
  if (is_zero()) return 0;
  int k = 0;
  while (coeffs_[static_cast<std::size_t>(k)] == 0.0) ++k;
  return k;
}

double Polynomial::eval(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Complex Polynomial::eval(Complex s) const {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::eval_scale(Complex s) const {
  const double r = std::max(std::abs(s), 1.0);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(1.0 / leading());
}

Polynomial Polynomial::scaled(double k) const {
  std::vector<double> v(coeffs_);
  for (double& c : v) c *= k;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::shift_down(int k) const {
  if (k <= 0) return *this;
  if (k > low_order_zeros()) throw std::invalid_argument("shift_down: not divisible by s^k");
  return Polynomial(std::vector<double>(coeffs_.begin() + k, coeffs_.end()));
}

namespace {

// Coefficient-wise a + sign*b. A coefficient whose magnitude falls below
// kCoefficientCancelTol of its operands is an exact cancellation.
Polynomial add_signed(const Polynomial& a, const Polynomial& b, double sign) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = a[k];
    const double y = sign * b[k];
    const double sum = x + y;
    v[k] = std::abs(sum) <= kCoefficientCancelTol * (std::abs(x) + std::abs(y)) ? 0.0 : sum;
  }
  return Polynomial(std::move(v));
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add_signed(a, b, 1.0); }

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add_signed(a, b, -1.0); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> v(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) v[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Polynomial(std::move(v));
}

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, PolyOp op) {
  switch (op) {
    case PolyOp::add: return p + q;
    case PolyOp::sub: return p - q;
    case PolyOp::mul: return p * q;
  }
  throw std::invalid_argument("poly_arith: unknown op");
}

PolyDivision divide(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("divide: zero divisor");
  const int dn = num.degree();
  const int dd = den.degree();
  if (num.is_zero() || dn < dd) return {Polynomial{}, num};

  std::vector<double> rem(num.coeffs());
  std::vector<double> quo(static_cast<std::size_t>(dn - dd) + 1, 0.0);
  const double lead = den.leading();
  for (int k = dn - dd; k >= 0; --k) {
    const double q = rem[static_cast<std::size_t>(k + dd)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k + dd)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(std::max(dd, 1)));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial poly_gcd(const Polynomial& p, const Polynomial& q, double tol) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("poly_gcd: both inputs are zero");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();

  const double scale = std::max(p.monic().max_abs(), q.monic().max_abs());
  Polynomial a = p.monic();
  Polynomial b = q.monic();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (true) {
    if (b.degree() == 0) return Polynomial::constant(1.0);
    Polynomial r = divide(a, b).remainder;
    if (r.max_abs() < tol * scale) return b.monic();
    a = std::move(b);
    b = r.monic();
  }
}

std::vector<Complex> poly_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("poly_roots: zero polynomial");
  if (p.degree() < 1) throw std::invalid_argument("poly_roots: degree must be at least 1");

  const int zeros = p.low_order_zeros();
  std::vector<Complex> roots(static_cast<std::size_t>(zeros), Complex(0.0));
  const Polynomial rest = p.shift_down(zeros).monic();
  if (rest.degree() == 1) {
    roots.emplace_back(-rest[0]);
  } else if (rest.degree() > 1) {
    Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(rest.coeffs().data(),
                                                           static_cast<Eigen::Index>(rest.coeffs().size()));
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) roots.push_back(solver.roots()[i]);
  }
  return roots;
}

std::string to_string(const Polynomial& p, int precision) {
  std::ostringstream os;
  os.precision(precision);
  if (p.is_zero()) return "0";
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const double c = p[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const double a = std::abs(c);
    if (k == 0 || a != 1.0) os << a;
    if (k >= 1) os << (k == 0 || a != 1.0 ? " s" : "s");
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

}  // namespace ycoo

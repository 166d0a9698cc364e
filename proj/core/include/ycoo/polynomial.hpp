#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace ycoo {

using Complex = std::complex<double>;

/// Real polynomial in s with coefficients stored in ascending powers
/// (coeffs()[k] multiplies s^k).
///
/// The zero polynomial is the single coefficient [0]. Any other polynomial
/// keeps a nonzero leading coefficient; exact trailing zeros are stripped on
/// construction and near-zero results of add/sub are stripped by the
/// arithmetic operators.
class Polynomial {
 public:
  Polynomial();
  explicit Polynomial(std::vector<double> ascending);
  Polynomial(std::initializer_list<double> ascending);

  static Polynomial constant(double c);
  static Polynomial monomial(int power, double c = 1.0);
  static Polynomial from_descending(std::span<const double> descending);
  /// lead * prod(s - r). Complex roots should come in conjugate pairs; the
  /// imaginary residue of the expansion is discarded.
  static Polynomial from_roots(std::span<const Complex> roots, double lead = 1.0);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::vector<double> descending() const;
  [[nodiscard]] double leading() const { return coeffs_.back(); }
  [[nodiscard]] double operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }
  [[nodiscard]] double max_abs() const;
  /// Number of exactly-zero low-order coefficients (multiplicity of s as a factor).
  [[nodiscard]] int low_order_zeros() const;

  [[nodiscard]] double eval(double s) const;
  [[nodiscard]] Complex eval(Complex s) const;
  /// sum_k |c_k| * max(|s|, 1)^k, the natural scale for judging |p(s)| small.
  [[nodiscard]] double eval_scale(Complex s) const;

  [[nodiscard]] Polynomial derivative() const;
  [[nodiscard]] Polynomial monic() const;
  [[nodiscard]] Polynomial scaled(double k) const;
  /// p(s) / s^k for k <= low_order_zeros().
  [[nodiscard]] Polynomial shift_down(int k) const;

  Polynomial operator-() const { return scaled(-1.0); }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double k, const Polynomial& p) { return p.scaled(k); }
  friend Polynomial operator*(const Polynomial& p, double k) { return p.scaled(k); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void strip();
  std::vector<double> coeffs_;
};

/// Relative threshold under which a coefficient produced by add/sub is taken
/// as an exact cancellation of its two operands.
inline constexpr double kCoefficientCancelTol = 1e-9;

enum class PolyOp { add, sub, mul };

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, PolyOp op);

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

/// Long division. Throws std::domain_error on a zero divisor.
PolyDivision divide(const Polynomial& num, const Polynomial& den);

/// Monic approximate GCD by Euclidean remainders. A remainder is declared zero
/// once its max-abs coefficient drops below tol * max-abs of the inputs.
/// Throws std::invalid_argument if both inputs are zero.
Polynomial poly_gcd(const Polynomial& p, const Polynomial& q, double tol = 1e-9);

/// Roots as eigenvalues of the balanced companion matrix of the monic
/// normalization. Exact low-order zero coefficients give exact zero roots.
/// Throws std::invalid_argument for the zero polynomial or a constant.
std::vector<Complex> poly_roots(const Polynomial& p);

/// Descending-power display, e.g. "5.179 s + 35.71".
std::string to_string(const Polynomial& p, int precision = 6);

}  // namespace ycoo

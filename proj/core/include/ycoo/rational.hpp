#pragma once

#include "ycoo/polynomial.hpp"

#include <span>
#include <string>
#include <vector>

namespace ycoo {

/// Default relative tolerance for pole/zero cancellation.
inline constexpr double kCancelTol = 1e-8;

/// Relative distance below which two poles are treated as the same root when
/// forming common denominators.
inline constexpr double kPoleMatchTol = 1e-9;

/// Real rational function num(s) / den(s) with a monic denominator.
///
/// The denominator is carried by its root multiset so that repeated and
/// origin poles stay exact through products and sums. Complex poles are kept
/// as exact conjugate pairs.
class RationalFunction {
 public:
  RationalFunction();
  RationalFunction(double c);  // NOLINT: implicit scalar promotion is intended
  explicit RationalFunction(Polynomial num);
  /// num/den, den != 0. Poles are the roots of den; the result is canonical.
  RationalFunction(const Polynomial& num, const Polynomial& den, double tol = kCancelTol);

  /// gain * prod(s - z) / prod(s - p).
  static RationalFunction from_zpk(std::span<const Complex> zeros, std::span<const Complex> poles,
                                   double gain, double tol = kCancelTol);
  /// num / prod(s - p), canonicalized.
  static RationalFunction from_poles(Polynomial num, std::vector<Complex> poles,
                                     double tol = kCancelTol);

  [[nodiscard]] const Polynomial& num() const { return num_; }
  [[nodiscard]] const Polynomial& den() const { return den_; }
  [[nodiscard]] const std::vector<Complex>& poles() const { return poles_; }
  [[nodiscard]] std::vector<Complex> zeros() const;
  /// Leading numerator coefficient (the denominator is monic).
  [[nodiscard]] double gain() const { return num_.leading(); }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] int relative_degree() const { return den_.degree() - num_.degree(); }
  [[nodiscard]] bool is_proper() const { return is_zero() || relative_degree() >= 0; }

  [[nodiscard]] Complex eval(Complex s) const;
  [[nodiscard]] double eval(double s) const;
  /// Evaluation at s = j*omega. Throws std::domain_error within 1e-9 of a pole.
  [[nodiscard]] Complex at_frequency(double omega) const;

  /// 1/r. Throws std::domain_error for the zero function.
  [[nodiscard]] RationalFunction inverse(double tol = kCancelTol) const;
  /// Cancels common roots of num and den that agree within tol.
  [[nodiscard]] RationalFunction canonicalized(double tol = kCancelTol) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

 private:
  void rebuild_den();
  /// Cancellation restricted to poles that match an entry of candidates.
  [[nodiscard]] RationalFunction canonicalized_among(std::vector<Complex> candidates, double tol) const;
  Polynomial num_;
  std::vector<Complex> poles_;
  Polynomial den_;
};

/// Standalone form of RationalFunction::canonicalized.
RationalFunction rat_canonicalize(const RationalFunction& r, double tol = kCancelTol);

/// Sorts roots, snaps near-real roots onto the real axis and makes complex
/// roots exact conjugate pairs (positive imaginary part first).
std::vector<Complex> tidy_roots(std::vector<Complex> roots);

/// Least common multiple of two pole multisets (roots within kPoleMatchTol
/// are the same root).
std::vector<Complex> lcm_poles(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Real monic polynomial with the given conjugate-closed roots.
Polynomial poly_from_roots(std::span<const Complex> roots);

/// r * prod(s - p) over den_poles as a polynomial. Throws
/// std::invalid_argument if some pole of r is not in den_poles.
Polynomial numerator_over(const RationalFunction& r, const std::vector<Complex>& den_poles);

/// "num / den" in descending powers.
std::string to_string(const RationalFunction& r, int precision = 6);

}  // namespace ycoo

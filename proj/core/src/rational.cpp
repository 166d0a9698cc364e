#include "ycoo/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ycoo {

namespace {

constexpr double kRealSnap = 1e-10;

bool same_root(Complex a, Complex b) {
  return std::abs(a - b) <= kPoleMatchTol * std::max({std::abs(a), std::abs(b), 1.0});
}

bool is_real(Complex z) { return z.imag() == 0.0; }

// Real polynomial with the given (conjugate-closed) roots, built pairwise so
// that no imaginary residue enters the coefficients.
Polynomial real_from_roots(std::span<const Complex> roots) {
  Polynomial p = Polynomial::constant(1.0);
  for (const Complex& r : roots) {
    if (is_real(r)) {
      p = p * Polynomial{-r.real(), 1.0};
    } else if (r.imag() > 0.0) {
      p = p * Polynomial{std::norm(r), -2.0 * r.real(), 1.0};
    }
  }
  return p;
}

// Removes the factor (s - r), or the conjugate quadratic for complex r,
// discarding the (small) remainder.
Polynomial deflate(const Polynomial& n, Complex r) {
  if (is_real(r)) return divide(n, Polynomial{-r.real(), 1.0}).quotient;
  return divide(n, Polynomial{std::norm(r), -2.0 * r.real(), 1.0}).quotient;
}

}  // namespace

std::vector<Complex> tidy_roots(std::vector<Complex> roots) {
  for (Complex& r : roots) {
    if (std::abs(r.imag()) <= kRealSnap * std::max(std::abs(r), 1.0)) r = Complex(r.real(), 0.0);
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  // Pair each upper root with its nearest lower partner and make them exact conjugates.
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  std::vector<Complex> out;
  for (const Complex& r : roots) {
    if (is_real(r)) out.push_back(r);
    else if (r.imag() > 0.0) upper.push_back(r);
    else lower.push_back(r);
  }
  if (upper.size() != lower.size()) throw std::invalid_argument("tidy_roots: roots are not conjugate-closed");
  for (const Complex& u : upper) {
    auto best = std::min_element(lower.begin(), lower.end(), [&](Complex a, Complex b) {
      return std::abs(a - std::conj(u)) < std::abs(b - std::conj(u));
    });
    const Complex mid = 0.5 * (u + std::conj(*best));
    lower.erase(best);
    out.push_back(mid);
    out.push_back(std::conj(mid));
  }
  std::stable_sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return out;
}

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(double c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den, double tol) {
  if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
  num_ = num.scaled(1.0 / den.leading());
  if (den.degree() > 0) poles_ = tidy_roots(poly_roots(den));
  // The caller's coefficients are kept as given unless cancellation rebuilds them.
  den_ = den.monic();
  *this = canonicalized(tol);
}

RationalFunction RationalFunction::from_zpk(std::span<const Complex> zeros, std::span<const Complex> poles,
                                            double gain, double tol) {
  const std::vector<Complex> z = tidy_roots({zeros.begin(), zeros.end()});
  Polynomial num = real_from_roots(z).scaled(gain);
  return from_poles(std::move(num), {poles.begin(), poles.end()}, tol);
}

RationalFunction RationalFunction::from_poles(Polynomial num, std::vector<Complex> poles, double tol) {
  RationalFunction r;
  r.num_ = std::move(num);
  r.poles_ = tidy_roots(std::move(poles));
  r.rebuild_den();
  return r.canonicalized(tol);
}

void RationalFunction::rebuild_den() { den_ = real_from_roots(poles_); }

std::vector<Complex> RationalFunction::zeros() const {
  if (num_.degree() < 1) return {};
  return tidy_roots(poly_roots(num_));
}

Complex RationalFunction::eval(Complex s) const { return num_.eval(s) / den_.eval(s); }

double RationalFunction::eval(double s) const { return num_.eval(s) / den_.eval(s); }

Complex RationalFunction::at_frequency(double omega) const {
  const Complex s(0.0, omega);
  for (const Complex& p : poles_) {
    if (std::abs(s - p) <= 1e-9 * std::max(std::abs(p), 1.0))
      throw std::domain_error("at_frequency: evaluation at a pole");
  }
  return eval(s);
}

RationalFunction RationalFunction::inverse(double tol) const {
  if (is_zero()) throw std::domain_error("inverse: zero rational function");
  // the reciprocal of a canonical function is canonical; a second pass would
  // only pair genuinely distinct nearby roots
  RationalFunction r;
  r.num_ = den_.scaled(1.0 / num_.leading());
  if (num_.degree() > 0) r.poles_ = tidy_roots(poly_roots(num_));
  r.rebuild_den();
  (void)tol;
  return r;
}

RationalFunction RationalFunction::canonicalized(double tol) const { return canonicalized_among(poles_, tol); }

RationalFunction RationalFunction::canonicalized_among(std::vector<Complex> candidates, double tol) const {
  RationalFunction r = *this;
  if (r.num_.is_zero()) {
    r.poles_.clear();
    r.den_ = Polynomial::constant(1.0);
    return r;
  }
  auto take_candidate = [&](Complex p) {
    for (auto it = candidates.begin(); it != candidates.end(); ++it)
      if (same_root(*it, p)) {
        candidates.erase(it);
        return true;
      }
    return false;
  };
  // Smallest poles first: they are the best conditioned for deflation.
  std::vector<Complex> order = r.poles_;
  std::stable_sort(order.begin(), order.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  std::vector<Complex> kept;
  bool changed = false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Complex p = order[i];
    if (p.imag() < 0.0) continue;  // handled with its upper partner
    const bool can_cancel = take_candidate(p) && r.num_.degree() >= (is_real(p) ? 1 : 2) &&
                            std::abs(r.num_.eval(p)) <= tol * r.num_.eval_scale(p);
    if (can_cancel) {
      r.num_ = deflate(r.num_, p);
      changed = true;
    } else {
      kept.push_back(p);
      if (!is_real(p)) kept.push_back(std::conj(p));
    }
  }
  if (changed) {
    r.poles_ = tidy_roots(std::move(kept));
    r.rebuild_den();
  }
  return r;
}

RationalFunction rat_canonicalize(const RationalFunction& r, double tol) { return r.canonicalized(tol); }

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

struct CommonDen {
  std::vector<Complex> poles;
  std::vector<Complex> extra_a;  // poles of the LCM missing from a
  std::vector<Complex> extra_b;
  std::vector<Complex> shared;
};

CommonDen common_den(const std::vector<Complex>& pa, const std::vector<Complex>& pb) {
  CommonDen out;
  std::vector<bool> used(pb.size(), false);
  for (const Complex& p : pa) {
    bool matched = false;
    for (std::size_t j = 0; j < pb.size(); ++j) {
      if (!used[j] && same_root(p, pb[j])) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    out.poles.push_back(p);
    if (!matched) out.extra_b.push_back(p);
    else out.shared.push_back(p);
  }
  for (std::size_t j = 0; j < pb.size(); ++j) {
    if (!used[j]) {
      out.poles.push_back(pb[j]);
      out.extra_a.push_back(pb[j]);
    }
  }
  return out;
}

}  // namespace

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const CommonDen cd = common_den(a.poles(), b.poles());
  const Polynomial na = a.num() * real_from_roots(tidy_roots(cd.extra_a));
  const Polynomial nb = b.num() * real_from_roots(tidy_roots(cd.extra_b));
  // a pole owned by one canonical term alone survives the sum
  RationalFunction r;
  r.num_ = na + nb;
  if (r.num_.is_zero()) return {};
  r.poles_ = tidy_roots(cd.poles);
  r.rebuild_den();
  return r.canonicalized_among(cd.shared, kCancelTol);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Both factors are canonical, so a pole of one can only meet a zero of the
  // other. Each numerator is tested on its own scale.
  RationalFunction fa = a, fb = b;
  fa.poles_ = b.poles_;
  fb.poles_ = a.poles_;
  fa = fa.canonicalized_among(b.poles_, kCancelTol);
  fb = fb.canonicalized_among(a.poles_, kCancelTol);
  RationalFunction r;
  r.num_ = fa.num_ * fb.num_;
  r.poles_ = fa.poles_;
  r.poles_.insert(r.poles_.end(), fb.poles_.begin(), fb.poles_.end());
  r.poles_ = tidy_roots(std::move(r.poles_));
  r.rebuild_den();
  return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

std::vector<Complex> lcm_poles(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return tidy_roots(common_den(a, b).poles);
}

Polynomial poly_from_roots(std::span<const Complex> roots) {
  return real_from_roots(tidy_roots({roots.begin(), roots.end()}));
}

Polynomial numerator_over(const RationalFunction& r, const std::vector<Complex>& den_poles) {
  const CommonDen cd = common_den(r.poles(), den_poles);
  if (!cd.extra_b.empty()) throw std::invalid_argument("numerator_over: pole outside the denominator");
  return r.num() * real_from_roots(tidy_roots(cd.extra_a));
}

std::string to_string(const RationalFunction& r, int precision) {
  return "(" + to_string(r.num(), precision) + ") / (" + to_string(r.den(), precision) + ")";
}

}  // namespace ycoo

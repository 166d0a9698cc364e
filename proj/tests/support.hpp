#pragma once

#include <ycoo/rational.hpp>
#include <ycoo/transfer_matrix.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

namespace testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Worst relative error after greedy nearest pairing; inf on a size mismatch.
inline double multiset_error(std::vector<std::complex<double>> got, const std::vector<std::complex<double>>& want) {
  if (got.size() != want.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](auto a, auto b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w) / std::max(std::abs(w), 1.0));
    got.erase(it);
  }
  return worst;
}

inline std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(k) / (n - 1)));
  return out;
}

/// Real rational with random well-separated stable poles and random zeros.
inline ycoo::RationalFunction random_rational(std::mt19937_64& rng, int max_deg = 3) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_real_distribution<double> root(-10.0, -0.5), gain(0.5, 3.0);
  const int np = deg(rng);
  const int nz = std::uniform_int_distribution<int>(0, np)(rng);
  std::vector<std::complex<double>> p, z;
  for (int k = 0; k < np; ++k) p.emplace_back(root(rng) - 12.0 * k, 0.0);
  for (int k = 0; k < nz; ++k) z.emplace_back(root(rng) + 0.25 - 11.0 * k, 0.0);
  return ycoo::RationalFunction::from_zpk(z, p, gain(rng));
}

}  // namespace testing

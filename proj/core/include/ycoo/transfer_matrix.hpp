#pragma once

#include "ycoo/rational.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace ycoo {

/// Rectangular grid of rational functions; entry (i, j) maps input j to
/// output i.
class TransferMatrix {
 public:
  TransferMatrix() = default;
  TransferMatrix(std::size_t rows, std::size_t cols);
  /// Row-major list of entries.
  TransferMatrix(std::size_t rows, std::size_t cols, std::vector<RationalFunction> entries);

  static TransferMatrix identity(std::size_t n);
  static TransferMatrix diagonal(const std::vector<RationalFunction>& diag);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const RationalFunction& operator()(std::size_t i, std::size_t j) const;
  RationalFunction& operator()(std::size_t i, std::size_t j);

  [[nodiscard]] TransferMatrix transpose() const;
  [[nodiscard]] bool is_diagonal() const;
  [[nodiscard]] bool is_proper() const;
  [[nodiscard]] Eigen::MatrixXcd eval(Complex s) const;

  friend TransferMatrix operator+(const TransferMatrix& a, const TransferMatrix& b);
  friend TransferMatrix operator-(const TransferMatrix& a, const TransferMatrix& b);
  friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RationalFunction> entries_;
};

enum class MatOp { add, sub, mul };

/// Entrywise add/sub or matrix product. Throws std::invalid_argument on a
/// dimension mismatch.
TransferMatrix tfm_arith(const TransferMatrix& a, const TransferMatrix& b, MatOp op);

/// Adjugate over determinant. Throws std::invalid_argument unless 2x2 and
/// std::domain_error when the determinant vanishes identically.
TransferMatrix tfm_inverse_2x2(const TransferMatrix& g);

/// Each entry at s = j*omega. Throws std::domain_error for omega < 0 or at a pole.
Eigen::MatrixXcd freq_response(const TransferMatrix& g, double omega);

}  // namespace ycoo

#include "ycoo/transfer_matrix.hpp"

#include <stdexcept>

namespace ycoo {

TransferMatrix::TransferMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

TransferMatrix::TransferMatrix(std::size_t rows, std::size_t cols, std::vector<RationalFunction> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw std::invalid_argument("TransferMatrix: entry count mismatch");
}

TransferMatrix TransferMatrix::identity(std::size_t n) {
  TransferMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RationalFunction(1.0);
  return m;
}

TransferMatrix TransferMatrix::diagonal(const std::vector<RationalFunction>& diag) {
  TransferMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

const RationalFunction& TransferMatrix::operator()(std::size_t i, std::size_t j) const {
  return entries_.at(i * cols_ + j);
}

RationalFunction& TransferMatrix::operator()(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }

TransferMatrix TransferMatrix::transpose() const {
  TransferMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool TransferMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

bool TransferMatrix::is_proper() const {
  for (const auto& e : entries_)
    if (!e.is_proper()) return false;
  return true;
}

Eigen::MatrixXcd TransferMatrix::eval(Complex s) const {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).eval(s);
  return m;
}

TransferMatrix operator+(const TransferMatrix& a, const TransferMatrix& b) { return tfm_arith(a, b, MatOp::add); }

TransferMatrix operator-(const TransferMatrix& a, const TransferMatrix& b) { return tfm_arith(a, b, MatOp::sub); }

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) { return tfm_arith(a, b, MatOp::mul); }

TransferMatrix tfm_arith(const TransferMatrix& a, const TransferMatrix& b, MatOp op) {
  if (op == MatOp::mul) {
    if (a.cols() != b.rows()) throw std::invalid_argument("tfm_arith: inner dimensions differ");
    TransferMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        RationalFunction acc;
        for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
        c(i, j) = acc;
      }
    return c;
  }
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("tfm_arith: shapes differ");
  TransferMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = op == MatOp::add ? a(i, j) + b(i, j) : a(i, j) - b(i, j);
  return c;
}

TransferMatrix tfm_inverse_2x2(const TransferMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw std::invalid_argument("tfm_inverse_2x2: not 2x2");
  const RationalFunction det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (det.is_zero()) throw std::domain_error("tfm_inverse_2x2: singular determinant");
  const RationalFunction inv = det.inverse();
  TransferMatrix r(2, 2);
  r(0, 0) = g(1, 1) * inv;
  r(0, 1) = -g(0, 1) * inv;
  r(1, 0) = -g(1, 0) * inv;
  r(1, 1) = g(0, 0) * inv;
  return r;
}

Eigen::MatrixXcd freq_response(const TransferMatrix& g, double omega) {
  if (omega < 0.0) throw std::domain_error("freq_response: negative frequency");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(g.rows()), static_cast<Eigen::Index>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g(i, j).at_frequency(omega);
  return m;
}

}  // namespace ycoo

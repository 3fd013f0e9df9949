#pragma once

#include "moduli/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace moduli {

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  // All rows must have equal length; throws std::invalid_argument otherwise.
  static QMatrix from_rows(const std::vector<QVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  void append_row(const QVector& row);
  QMatrix transpose() const;

  bool operator==(const QMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  QMatrix matrix;
  std::vector<std::size_t> pivots;
};

RrefResult rref(QMatrix m);
std::size_t rank(const QMatrix& m);
std::vector<QVector> kernel_basis(const QMatrix& m);
// Some x with a*x = b, or nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

QVector mat_vec(const QMatrix& a, const QVector& x);
bool is_zero(const QVector& v);

// Sparse reduced echelon form built one row at a time; the final state equals
// rref of the stacked rows (zero rows dropped) under the same column order.
using SparseRow = std::vector<std::pair<int, Rational>>;

class SparseEchelon {
 public:
  explicit SparseEchelon(int cols) : cols_(cols) {}

  // Returns true when the row enlarged the span.
  bool add_row(const SparseRow& row);
  SparseRow reduce(const SparseRow& row) const;

  int cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(int col) const { return rows_.count(col) != 0; }
  const std::map<int, SparseRow>& rows() const { return rows_; }

 private:
  int cols_;
  std::map<int, SparseRow> rows_;  // keyed by pivot column, pivot entry 1
};

}  // namespace moduli

#include "moduli/qmatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace moduli {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return {};
  QMatrix m(0, rows.front().size());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void QMatrix::append_row(const QVector& row) {
  if (rows_ == 0 && data_.empty() && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool QMatrix::operator==(const QMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

RrefResult rref(QMatrix m) {
  RrefResult out;
  std::size_t lead = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && sgn(m.at(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead)
      for (std::size_t j = c; j < m.cols(); ++j) swap(m.at(p, j), m.at(lead, j));
    Rational inv = 1 / m.at(lead, c);
    nz.clear();
    for (std::size_t j = c; j < m.cols(); ++j) {
      if (sgn(m.at(lead, j)) == 0) continue;
      m.at(lead, j) *= inv;
      nz.push_back(j);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || sgn(m.at(r, c)) == 0) continue;
      Rational f = m.at(r, c);
      for (std::size_t j : nz) m.at(r, j) -= f * m.at(lead, j);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.matrix = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVector> kernel_basis(const QMatrix& m) {
  auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<QVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.matrix.at(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  auto red = rref(aug);
  QVector x(a.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == a.cols()) return std::nullopt;
    x[red.pivots[i]] = red.matrix.at(i, a.cols());
  }
  return x;
}

QVector mat_vec(const QMatrix& a, const QVector& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("mat_vec: size mismatch");
  QVector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (sgn(a.at(r, c)) != 0 && sgn(x[c]) != 0) y[r] += a.at(r, c) * x[c];
  return y;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

namespace {

// acc += f * row, both sorted by column.
SparseRow axpy(const SparseRow& acc, const Rational& f, const SparseRow& row) {
  SparseRow out;
  out.reserve(acc.size() + row.size());
  std::size_t i = 0, j = 0;
  while (i < acc.size() || j < row.size()) {
    if (j == row.size() || (i < acc.size() && acc[i].first < row[j].first)) {
      out.push_back(acc[i++]);
    } else if (i == acc.size() || row[j].first < acc[i].first) {
      out.emplace_back(row[j].first, f * row[j].second);
      ++j;
    } else {
      Rational v = acc[i].second + f * row[j].second;
      if (sgn(v) != 0) out.emplace_back(acc[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Rational* find_col(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace

SparseRow SparseEchelon::reduce(const SparseRow& row) const {
  SparseRow acc = row;
  std::vector<std::pair<int, Rational>> hits;
  for (const auto& [c, v] : row)
    if (rows_.count(c)) hits.emplace_back(c, v);
  // pivot rows carry no other pivot columns, so one pass suffices
  for (const auto& [c, v] : hits) acc = axpy(acc, -v, rows_.at(c));
  return acc;
}

bool SparseEchelon::add_row(const SparseRow& row) {
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  int p = r.front().first;
  Rational inv = 1 / r.front().second;
  for (auto& e : r) e.second *= inv;
  for (auto& [pc, other] : rows_) {
    const Rational* hit = find_col(other, p);
    if (hit) {
      Rational f = -*hit;
      other = axpy(other, f, r);
    }
  }
  rows_.emplace(p, std::move(r));
  return true;
}

}  // namespace moduli

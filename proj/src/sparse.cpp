#include "tmflow/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tmflow {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  m.col_idx.reserve(t.size());
  m.vals.reserve(t.size());
  size_t i = 0;
  for (int r = 0; r < rows; ++r) {
    while (i < t.size() && t[i].r == r) {
      const int c = t[i].c;
      double v = 0.0;
      while (i < t.size() && t[i].r == r && t[i].c == c) v += t[i++].v;
      m.col_idx.push_back(c);
      m.vals.push_back(v);
    }
    m.row_ptr[r + 1] = static_cast<int>(m.col_idx.size());
  }
  if (i != t.size()) throw std::invalid_argument("triplet row out of range");
  return m;
}

void SparseMatrix::matvec(std::span<const double> x, std::span<double> y) const {
  assert(static_cast<int>(x.size()) == cols &&
         static_cast<int>(y.size()) == rows);
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[col_idx[k]];
    y[r] = s;
  }
}

std::vector<double> SparseMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows);
  matvec(x, y);
  return y;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.row_ptr.assign(cols + 1, 0);
  for (int c : col_idx) ++t.row_ptr[c + 1];
  for (int r = 0; r < cols; ++r) t.row_ptr[r + 1] += t.row_ptr[r];
  t.col_idx.resize(nnz());
  t.vals.resize(nnz());
  std::vector<int> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (int r = 0; r < rows; ++r)
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const int pos = next[col_idx[k]]++;
      t.col_idx[pos] = r;
      t.vals[pos] = vals[k];
    }
  return t;
}

SparseMatrix SparseMatrix::weighted_sum(
    const std::vector<std::pair<double, const SparseMatrix*>>& terms) {
  if (terms.empty()) throw std::invalid_argument("weighted_sum of nothing");
  const int rows = terms[0].second->rows;
  const int cols = terms[0].second->cols;
  for (const auto& [c, m] : terms)
    if (m->rows != rows || m->cols != cols)
      throw std::invalid_argument("weighted_sum shape mismatch");

  SparseMatrix out;
  out.rows = rows;
  out.cols = cols;
  out.row_ptr.assign(rows + 1, 0);
  std::vector<std::pair<int, double>> buf;
  for (int r = 0; r < rows; ++r) {
    buf.clear();
    for (const auto& [coeff, m] : terms)
      for (int k = m->row_ptr[r]; k < m->row_ptr[r + 1]; ++k)
        buf.emplace_back(m->col_idx[k], coeff * m->vals[k]);
    std::sort(buf.begin(), buf.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < buf.size();) {
      const int c = buf[i].first;
      double v = 0.0;
      while (i < buf.size() && buf[i].first == c) v += buf[i++].second;
      out.col_idx.push_back(c);
      out.vals.push_back(v);
    }
    out.row_ptr[r + 1] = static_cast<int>(out.col_idx.size());
  }
  return out;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(rows, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      if (col_idx[k] == r) d[r] = vals[k];
  return d;
}

double SparseMatrix::quad_form(std::span<const double> x,
                               std::span<const double> y) const {
  double s = 0.0;
  for (int r = 0; r < rows; ++r) {
    double t = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) t += vals[k] * y[col_idx[k]];
    s += x[r] * t;
  }
  return s;
}

void SparseMatrix::scale(double s) {
  for (double& v : vals) v *= s;
}

}  // namespace tmflow

#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "perlat/field.hpp"

namespace perlat {

// Dense matrices over a field, sized for desk-scale exact linear algebra.
template <class K>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : nr_(rows), nc_(cols), a_(size_t(rows) * cols, K(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  int rows() const { return nr_; }
  int cols() const { return nc_; }
  K& operator()(int r, int c) { return a_[size_t(r) * nc_ + c]; }
  const K& operator()(int r, int c) const { return a_[size_t(r) * nc_ + c]; }

  Mat operator*(const Mat& o) const {
    assert(nc_ == o.nr_);
    Mat r(nr_, o.nc_);
    for (int i = 0; i < nr_; ++i)
      for (int k = 0; k < nc_; ++k) {
        const K& x = (*this)(i, k);
        if (is_zero(x)) continue;
        for (int j = 0; j < o.nc_; ++j) {
          if (is_zero(o(k, j))) continue;
          r(i, j) += x * o(k, j);
        }
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    assert(nr_ == o.nr_ && nc_ == o.nc_);
    Mat r = *this;
    for (size_t t = 0; t < a_.size(); ++t) r.a_[t] += o.a_[t];
    return r;
  }

  bool operator==(const Mat& o) const { return nr_ == o.nr_ && nc_ == o.nc_ && a_ == o.a_; }

  std::vector<K> apply(const std::vector<K>& v) const {
    assert(int(v.size()) == nc_);
    std::vector<K> r(nr_, K(0));
    for (int i = 0; i < nr_; ++i)
      for (int j = 0; j < nc_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) r[i] += (*this)(i, j) * v[j];
    return r;
  }

 private:
  int nr_{0}, nc_{0};
  std::vector<K> a_;
};

// Row reduction in place; returns pivot column per reduced row.
template <class K>
std::vector<int> rref(Mat<K>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!is_zero(m(i, c))) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    K piv = inverse(m(r, c));
    for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * piv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
int rank(Mat<K> m) {
  return int(rref(m).size());
}

// Columns of the result form a basis of ker(m).
template <class K>
Mat<K> kernel_basis(Mat<K> m) {
  int nc = m.cols();
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(nc, false);
  for (int c : piv) is_piv[c] = true;
  int k = nc - int(piv.size());
  Mat<K> ker(nc, k);
  int col = 0;
  for (int c = 0; c < nc; ++c) {
    if (is_piv[c]) continue;
    ker(c, col) = K(1);
    for (size_t r = 0; r < piv.size(); ++r) ker(piv[r], col) = -K(1) * m(int(r), c);
    ++col;
  }
  return ker;
}

// One solution of A x = b, or nullopt if inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& A, const std::vector<K>& b) {
  assert(int(b.size()) == A.rows());
  Mat<K> aug(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
  std::vector<K> x(A.cols(), K(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(int(r), A.cols());
  return x;
}

// Incremental span with reduction, for saturation loops and quotient picking.
template <class K>
class Span {
 public:
  explicit Span(int dim) : dim_(dim) {}

  int dim_ambient() const { return dim_; }
  int size() const { return int(rows_.size()); }

  // Returns true if v was independent of the current span (and absorbs it).
  bool add(std::vector<K> v) {
    reduce(v);
    int lead = -1;
    for (int i = 0; i < dim_; ++i)
      if (!is_zero(v[i])) { lead = i; break; }
    if (lead < 0) return false;
    K inv = inverse(v[lead]);
    for (int i = lead; i < dim_; ++i) v[i] = v[i] * inv;
    for (auto& row : rows_)
      if (!is_zero(row[lead])) {
        K f = row[lead];
        for (int i = lead; i < dim_; ++i) row[i] -= f * v[i];
      }
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  bool contains(std::vector<K> v) const {
    reduce(v);
    for (const K& x : v)
      if (!is_zero(x)) return false;
    return true;
  }

  void reduce(std::vector<K>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const K& f = v[leads_[r]];
      if (is_zero(f)) continue;
      K g = f;
      for (int i = leads_[r]; i < dim_; ++i) v[i] -= g * rows_[r][i];
    }
  }

 private:
  int dim_;
  std::vector<std::vector<K>> rows_;
  std::vector<int> leads_;
};

}  // namespace perlat

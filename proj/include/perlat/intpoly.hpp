#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "perlat/field.hpp"
#include "perlat/linalg.hpp"

namespace perlat {

// Integer polynomials, coefficients ascending by degree, no trailing zeros.
struct IntPoly {
  std::vector<mpz_class> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero_poly() const { return c.empty(); }
  int degree() const { return c.empty() ? -1 : int(c.size()) - 1; }
  mpz_class coeff(int k) const { return k >= 0 && k < int(c.size()) ? c[k] : mpz_class(0); }

  bool operator==(const IntPoly& o) const { return c == o.c; }
  bool operator!=(const IntPoly& o) const { return !(*this == o); }

  IntPoly operator+(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c.size(), o.c.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return IntPoly(std::move(r));
  }
  IntPoly operator-(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c.size(), o.c.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return IntPoly(std::move(r));
  }
  IntPoly operator*(const IntPoly& o) const {
    if (c.empty() || o.c.empty()) return IntPoly();
    std::vector<mpz_class> r(c.size() + o.c.size() - 1, mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return IntPoly(std::move(r));
  }

  mpz_class eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  // Self-reciprocal up to sign: c_k == eps * c_{n-k} for eps in {1,-1}.
  bool palindromic_up_to_sign() const {
    if (c.empty()) return true;
    int n = degree();
    for (int eps : {1, -1}) {
      bool ok = true;
      for (int k = 0; k <= n && ok; ++k) ok = (c[k] == eps * c[n - k]);
      if (ok) return true;
    }
    return false;
  }

  std::string str(const std::string& var = "x") const {
    if (c.empty()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c[k] == 0) continue;
      mpz_class a = c[k];
      if (!s.empty()) s += (a > 0) ? " + " : " - ";
      else if (a < 0) s += "-";
      mpz_class aa = abs(a);
      if (aa != 1 || k == 0) s += aa.get_str();
      if (k > 0) {
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }
};

// Integer matrices with row/column labels (Cartan and Coxeter payloads).
struct IntMatrix {
  std::vector<std::string> labels;  // square in all uses; one label list
  std::vector<mpz_class> e;         // row-major, n x n

  IntMatrix() = default;
  explicit IntMatrix(int n) : labels(n), e(size_t(n) * n, mpz_class(0)) {}

  int n() const { return int(labels.size()); }
  mpz_class& at(int r, int c) { return e[size_t(r) * n() + c]; }
  const mpz_class& at(int r, int c) const { return e[size_t(r) * n() + c]; }

  bool operator==(const IntMatrix& o) const { return labels == o.labels && e == o.e; }

  IntMatrix transpose() const {
    IntMatrix t(n());
    t.labels = labels;
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix mul(const IntMatrix& o) const {
    assert(n() == o.n());
    IntMatrix r(n());
    r.labels = labels;
    for (int i = 0; i < n(); ++i)
      for (int k = 0; k < n(); ++k) {
        if (at(i, k) == 0) continue;
        for (int j = 0; j < n(); ++j) r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }
};

// Fraction-free Bareiss determinant.
inline mpz_class det_bareiss(IntMatrix m) {
  int n = m.n();
  if (n == 0) return 1;
  mpz_class sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = q;
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// Exact inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  int n = m.n();
  Mat<Rational> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = Rational(m.at(i, j));
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (int(piv.size()) != n) throw std::domain_error("matrix not invertible");
  IntMatrix inv(n);
  inv.labels = m.labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = aug(i, n + j);
      if (v.get_den() != 1) throw std::domain_error("inverse is not integral");
      inv.at(i, j) = v.get_num();
    }
  return inv;
}

// Characteristic polynomial det(xI - M): fraction-free determinants at
// integer sample points, then exact interpolation.
inline IntPoly char_poly(const IntMatrix& m) {
  int n = m.n();
  if (n == 0) return IntPoly({mpz_class(1)});
  std::vector<mpz_class> xs, ys;
  for (int t = 0; t <= n; ++t) {
    IntMatrix sm = m;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sm.at(i, j) = (i == j ? mpz_class(t) - m.at(i, j) : -m.at(i, j));
    xs.emplace_back(t);
    ys.push_back(det_bareiss(sm));
  }
  // Lagrange over Q, coefficients must come out integral.
  std::vector<Rational> acc(n + 1, Rational(0));
  for (int k = 0; k <= n; ++k) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom(1);
    for (int j = 0; j <= n; ++j) {
      if (j == k) continue;
      std::vector<Rational> nb(basis.size() + 1, Rational(0));
      for (size_t i = 0; i < basis.size(); ++i) {
        nb[i] += basis[i] * Rational(-xs[j]);
        nb[i + 1] += basis[i];
      }
      basis = std::move(nb);
      denom *= Rational(xs[k] - xs[j]);
    }
    Rational f = Rational(ys[k]) / denom;
    for (size_t i = 0; i < basis.size(); ++i) acc[i] += basis[i] * f;
  }
  std::vector<mpz_class> coeffs;
  for (auto& q : acc) {
    if (q.get_den() != 1) throw std::logic_error("char_poly: non-integral coefficient");
    coeffs.push_back(q.get_num());
  }
  return IntPoly(std::move(coeffs));
}

}  // namespace perlat

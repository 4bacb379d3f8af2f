#pragma once

#include <stdexcept>
#include <string>

#include "perlat/algebra.hpp"
#include "perlat/intpoly.hpp"

namespace perlat {

struct NonUnimodularCartan : std::domain_error {
  explicit NonUnimodularCartan(const std::string& what) : std::domain_error(what) {}
};

inline mpz_class cartan_det(const IntMatrix& c) { return det_bareiss(c); }

inline void require_unimodular(const IntMatrix& c) {
  mpz_class d = cartan_det(c);
  if (d != 1 && d != -1)
    throw NonUnimodularCartan("Cartan determinant is " + d.get_str() +
                              "; expected ±1 (infinite global dimension or construction bug)");
}

// Coxeter transformation Φ = -C^{-T} C.
inline IntMatrix coxeter_matrix(const IntMatrix& c) {
  require_unimodular(c);
  IntMatrix phi = unimodular_inverse(c.transpose()).mul(c);
  for (auto& x : phi.e) x = -x;
  phi.labels = c.labels;
  return phi;
}

inline IntPoly coxeter_polynomial(const IntMatrix& c) { return char_poly(coxeter_matrix(c)); }

// Euler form on dimension vectors: <x,y> = x^T C^{-1} y, so that
// <dim X, dim Y> = Σ_n (-1)^n dim Hom(X, Y[n]) with C[i][j] = dim e_i A e_j.
inline mpz_class euler_form(const IntMatrix& c, const std::vector<mpz_class>& x,
                            const std::vector<mpz_class>& y) {
  require_unimodular(c);
  if (int(x.size()) != c.n() || int(y.size()) != c.n())
    throw std::invalid_argument("euler_form: vector size mismatch");
  IntMatrix ci = unimodular_inverse(c);
  mpz_class acc = 0;
  for (int i = 0; i < c.n(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < c.n(); ++j) acc += x[i] * ci.at(i, j) * y[j];
  }
  return acc;
}

// Derived-invariant comparison. "consistent" is necessary evidence for a
// derived equivalence, never a proof; "refuted" disproves one.
struct Certificate {
  std::string left, right;
  int64_t dim_left{0}, dim_right{0};
  mpz_class det_left, det_right;
  IntPoly coxeter_left, coxeter_right;
  bool consistent{false};

  std::string verdict() const { return consistent ? "consistent" : "refuted"; }
};

inline Certificate certify(const std::string& lname, const IntMatrix& cl, int64_t diml,
                           const std::string& rname, const IntMatrix& cr, int64_t dimr) {
  Certificate cert;
  cert.left = lname;
  cert.right = rname;
  cert.dim_left = diml;
  cert.dim_right = dimr;
  cert.det_left = cartan_det(cl);
  cert.det_right = cartan_det(cr);
  bool uni = (abs(cert.det_left) == 1) && (abs(cert.det_right) == 1);
  if (uni) {
    cert.coxeter_left = coxeter_polynomial(cl);
    cert.coxeter_right = coxeter_polynomial(cr);
  }
  cert.consistent = uni && cert.coxeter_left == cert.coxeter_right;
  return cert;
}

inline std::string algebra_display_name(const AlgebraPtr& a) {
  const auto& d = a->descriptor();
  std::string kind = d.value("kind", "algebra");
  if (kind == "nakayama")
    return "N(" + std::to_string(d["n"].get<int64_t>()) + "," + std::to_string(d["l"].get<int64_t>()) + ")";
  if (kind == "nn") return "N([" + std::to_string(d["lo"].get<int64_t>()) + "," + std::to_string(d["hi"].get<int64_t>()) + "])";
  if (kind == "lattice") return "L(S), |S|=" + std::to_string(a->nv());
  if (kind == "lattice_shriek") return "L!(p;q), |Y|=" + std::to_string(a->nv());
  if (kind == "intro") return "L(s,t,u)";
  return kind;
}

inline Certificate certify_pair(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a->is_acyclic_quiver() || !b->is_acyclic_quiver())
    throw std::invalid_argument("certify_pair: both algebras must be directed");
  return certify(algebra_display_name(a), a->cartan(), a->dim(), algebra_display_name(b),
                 b->cartan(), b->dim());
}

}  // namespace perlat

#pragma once

#include <stdexcept>
#include <string>

#include "perlat/family.hpp"

namespace perlat {

struct MutationPreconditionError : std::invalid_argument {
  explicit MutationPreconditionError(const std::string& w) : std::invalid_argument(w) {}
};
struct MutationVerificationError : std::logic_error {
  explicit MutationVerificationError(const std::string& w) : std::logic_error(w) {}
};

struct MutationConfig {
  static bool& verify_output() {
    static bool on = true;
    return on;
  }
};

namespace detail {
template <class K>
void post_verify(const SFamily<K>& out, const char* op) {
  if (!MutationConfig::verify_output()) return;
  AxiomReport rep = check_family(out);
  if (!rep.pass())
    throw MutationVerificationError(std::string(op) + ": mutated family fails the S-family axioms");
}
}  // namespace detail

// Mutation I: S an M+_k-subset with no rows below 0; S' = σ_{<=k}(S),
// X'_{i,j} = S_{⟨X_i⟩}(X_{i,j+1}) on rows i <= k. Thresholds are absolute;
// callers translate to the row-0 frame (helpers provided by the family API).
template <class K>
SFamily<K> mutate_I(const SFamily<K>& fam, int64_t k) {
  if (!rows_nonnegative(fam.support))
    throw MutationPreconditionError("mutate_I: support has rows below 0");
  MGateReport g = is_m_plus_report(fam.support, k);
  if (!g.ok) throw MutationPreconditionError("mutate_I: not an M+_k subset: " + g.detail);
  SFamily<K> out;
  out.A = fam.A;
  out.support = sigma(fam.support, k, Side::LE);
  for (auto p : out.support.points()) {
    if (p.i <= k)
      out.members.emplace(p, sub_serre(fam.row_seq(p.i), fam.member({p.i, p.j + 1})));
    else
      out.members.emplace(p, fam.member(p));
  }
  detail::post_verify(out, "mutate_I");
  return out;
}

template <class K>
SFamily<K> mutate_I_inv(const SFamily<K>& fam, int64_t k) {
  if (!rows_nonnegative(fam.support))
    throw MutationPreconditionError("mutate_I_inv: support has rows below 0");
  MGateReport g = is_m_minus_report(fam.support, k);
  if (!g.ok) throw MutationPreconditionError("mutate_I_inv: not an M-_k subset: " + g.detail);
  SFamily<K> out;
  out.A = fam.A;
  out.support = sigma_inv(fam.support, k, Side::LE);
  for (auto p : out.support.points()) {
    if (p.i <= k)
      out.members.emplace(p, sub_serre_inverse(fam.row_seq(p.i), fam.member({p.i, p.j - 1})));
    else
      out.members.emplace(p, fam.member(p));
  }
  detail::post_verify(out, "mutate_I_inv");
  return out;
}

// Mutation ᵗI: the column-side version, S' = ρ_{<=k}(S),
// X'_{i,j} = S_{⟨X^j⟩}(X_{i+1,j}) on columns j <= k.
template <class K>
SFamily<K> mutate_I_t(const SFamily<K>& fam, int64_t k) {
  if (!cols_nonnegative(fam.support))
    throw MutationPreconditionError("mutate_I_t: support has columns below 0");
  MGateReport g = is_m_plus_report(transpose(fam.support), k);
  if (!g.ok) throw MutationPreconditionError("mutate_I_t: not a tM+_k subset: " + g.detail);
  SFamily<K> out;
  out.A = fam.A;
  out.support = rho(fam.support, k, Side::LE);
  for (auto p : out.support.points()) {
    if (p.j <= k)
      out.members.emplace(p, sub_serre(fam.col_seq(p.j), fam.member({p.i + 1, p.j})));
    else
      out.members.emplace(p, fam.member(p));
  }
  detail::post_verify(out, "mutate_I_t");
  return out;
}

template <class K>
SFamily<K> mutate_I_t_inv(const SFamily<K>& fam, int64_t k) {
  if (!cols_nonnegative(fam.support))
    throw MutationPreconditionError("mutate_I_t_inv: support has columns below 0");
  MGateReport g = is_m_minus_report(transpose(fam.support), k);
  if (!g.ok) throw MutationPreconditionError("mutate_I_t_inv: not a tM-_k subset: " + g.detail);
  SFamily<K> out;
  out.A = fam.A;
  out.support = rho_inv(fam.support, k, Side::LE);
  for (auto p : out.support.points()) {
    if (p.j <= k)
      out.members.emplace(p, sub_serre_inverse(fam.col_seq(p.j), fam.member({p.i - 1, p.j})));
    else
      out.members.emplace(p, fam.member(p));
  }
  detail::post_verify(out, "mutate_I_t_inv");
  return out;
}

namespace detail {
inline void require_II_shape(const LatticeSet& S, int64_t k, int64_t h) {
  if (k < 1 || h < 1 || k % (h + 1) != 0)
    throw MutationPreconditionError("mutate_II: need k, h >= 1 with k in (h+1)Z");
  if (int64_t(S.row(0).size()) != h)
    throw MutationPreconditionError("mutate_II: |S_0| must equal h");
  for (int64_t i = 1; i <= k - 1; ++i)
    if (S.row(i) != S.row(i - 1))
      throw MutationPreconditionError("mutate_II: rows 0..k-1 must be equal");
  MGateReport g = is_m_plus_report(S, k - 1);
  if (!g.ok) throw MutationPreconditionError("mutate_II: not an M+_{k-1} subset: " + g.detail);
}
}  // namespace detail

// Mutation II: rows 0..k-1 equal of size h, k in (h+1)Z, s = (h-1)k/(h+1).
// S' = σ_{<=0}···σ_{<=k-1}(S); members get row-Serre powers, rows below 0 a
// plain shift by [s].
template <class K>
SFamily<K> mutate_II(const SFamily<K>& fam, int64_t k, int64_t h) {
  detail::require_II_shape(fam.support, k, h);
  int64_t s = (h - 1) * k / (h + 1);
  SFamily<K> out;
  out.A = fam.A;
  LatticeSet S2 = fam.support;
  for (int64_t t = k - 1; t >= 0; --t) S2 = sigma(S2, t, Side::LE);
  out.support = S2;
  for (auto p : out.support.points()) {
    if (p.i < 0) {
      out.members.emplace(p, shift(fam.member({p.i, p.j + k}), int(s)));
    } else if (p.i <= k - 1) {
      ProjComplex<K> X = fam.member({p.i, p.j + (k - p.i)});
      ExcSeq<K> row = fam.row_seq(p.i);
      for (int64_t t = 0; t < k - p.i; ++t) X = sub_serre(row, X);
      out.members.emplace(p, minimize(X));
    } else {
      out.members.emplace(p, fam.member(p));
    }
  }
  detail::post_verify(out, "mutate_II");
  return out;
}

template <class K>
SFamily<K> mutate_II_inv(const SFamily<K>& fam, int64_t k, int64_t h) {
  if (k < 1 || h < 1 || k % (h + 1) != 0)
    throw MutationPreconditionError("mutate_II_inv: need k, h >= 1 with k in (h+1)Z");
  int64_t s = (h - 1) * k / (h + 1);
  SFamily<K> out;
  out.A = fam.A;
  LatticeSet S2 = fam.support;
  for (int64_t t = 0; t <= k - 1; ++t) S2 = sigma_inv(S2, t, Side::LE);
  out.support = S2;
  detail::require_II_shape(out.support, k, h);  // theorem states the gates on the target set
  for (auto p : out.support.points()) {
    if (p.i < 0) {
      out.members.emplace(p, shift(fam.member({p.i, p.j - k}), -int(s)));
    } else if (p.i <= k - 1) {
      ProjComplex<K> X = fam.member({p.i, p.j - (k - p.i)});
      ExcSeq<K> row = fam.row_seq(p.i);
      for (int64_t t = 0; t < k - p.i; ++t) X = sub_serre_inverse(row, X);
      out.members.emplace(p, minimize(X));
    } else {
      out.members.emplace(p, fam.member(p));
    }
  }
  detail::post_verify(out, "mutate_II_inv");
  return out;
}

// Transpose conjugates; the ᵗ-statements of the paper.
template <class K>
SFamily<K> mutate_II_t(const SFamily<K>& fam, int64_t k, int64_t h) {
  return transpose_family(mutate_II(transpose_family(fam), k, h));
}
template <class K>
SFamily<K> mutate_II_t_inv(const SFamily<K>& fam, int64_t k, int64_t h) {
  return transpose_family(mutate_II_inv(transpose_family(fam), k, h));
}

}  // namespace perlat

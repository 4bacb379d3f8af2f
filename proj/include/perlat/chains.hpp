#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perlat/invariants.hpp"
#include "perlat/lattice.hpp"

namespace perlat {

// Lattice-level mutation chains: every step is a paper mutation (possibly a
// transpose / reflection conjugate), carries its gate verdict, and the
// endpoint claim is certified through Coxeter polynomials.

struct ChainStep {
  std::string op;
  int64_t threshold{0};
  bool gate{false};
  bool empty_row_convention{false};
  std::string detail;
  LatticeSet before, after;
};

struct TransformResult {
  std::string name;
  LatticeSet start, target;
  std::vector<ChainStep> steps;
  bool end_matches{false};
  bool all_gates{false};
  Certificate cert;

  const LatticeSet& end() const { return steps.empty() ? start : steps.back().after; }
  bool pass() const { return end_matches && all_gates && cert.consistent; }
};

namespace gates {

// Mutation I gate on σ_{<=k}: M+ in the min-row-anchored frame; thresholds
// below every row act as the identity.
inline MGateReport mut_I(const LatticeSet& T, int64_t k) {
  int64_t a = T.empty() ? 0 : T.min_row();
  int64_t kk = k - a;
  if (kk < 0) return {true, false, "identity step"};
  return is_m_plus_report(translate(T, {-a, 0}), kk);
}
inline MGateReport mut_I_inv(const LatticeSet& T, int64_t k) {
  int64_t a = T.empty() ? 0 : T.min_row();
  int64_t kk = k - a;
  if (kk < 0) return {true, false, "identity step"};
  return is_m_minus_report(translate(T, {-a, 0}), kk);
}
inline MGateReport mut_tI(const LatticeSet& T, int64_t k) { return mut_I(transpose(T), k); }
inline MGateReport mut_tI_inv(const LatticeSet& T, int64_t k) { return mut_I_inv(transpose(T), k); }

// Mutation (ᵗ)II forward gate at an explicit anchor.
inline MGateReport mut_tII(const LatticeSet& T, int64_t k, int64_t h, GridPoint anchor) {
  LatticeSet A = translate(T, {-anchor.i, -anchor.j});
  if (k < 1 || h < 1 || k % (h + 1) != 0) return {false, false, "k not in (h+1)Z"};
  MGateReport g = is_m_plus_report(transpose(A), k - 1);
  if (!g.ok) return g;
  if (int64_t(A.col(0).size()) != h) return {false, g.used_empty_rows, "|S^0| != h"};
  for (int64_t c = 1; c <= k - 1; ++c)
    if (A.col(c) != A.col(c - 1)) return {false, g.used_empty_rows, "columns 0..k-1 not equal"};
  return g;
}

}  // namespace gates

namespace detail_chain {

inline void push_step(TransformResult& res, LatticeSet& T, std::string op, int64_t th,
                      const MGateReport& g, const LatticeSet& after) {
  ChainStep st;
  st.op = std::move(op);
  st.threshold = th;
  st.gate = g.ok;
  st.empty_row_convention = g.used_empty_rows;
  st.detail = g.detail;
  st.before = T;
  st.after = after;
  res.steps.push_back(std::move(st));
  T = after;
}

// Closing σ-chain: align the staircase row profile onto the target shape.
// Thresholds are forced by the per-row offsets; each step is gated as a
// Mutation I inverse. Throws if the profiles cannot match.
inline void align_rows(TransformResult& res, LatticeSet& T, const LatticeSet& target) {
  LatticeSet tgt = normalize(target);
  auto trows = T.row_indices();
  auto yrows = tgt.row_indices();
  if (trows.size() != yrows.size())
    throw std::logic_error("chain alignment: row count mismatch");
  std::vector<int64_t> delta(trows.size());
  for (size_t t = 0; t < trows.size(); ++t) {
    auto a = T.row(trows[t]);
    auto b = tgt.row(yrows[t]);
    if (a.size() != b.size()) throw std::logic_error("chain alignment: row length mismatch");
    delta[t] = b.front() - a.front();
  }
  int64_t base = delta.back();
  for (auto& d : delta) d -= base;
  for (size_t t = 0; t + 1 <= trows.size(); ++t) {
    int64_t next = (t + 1 < trows.size()) ? delta[t + 1] : 0;
    if (delta[t] < next) throw std::logic_error("chain alignment: non-monotone profile");
  }
  // apply from the top row down: σ^{-1}_{<= trows[t]} repeated
  for (size_t t = 0; t < trows.size(); ++t) {
    int64_t next = (t + 1 < trows.size()) ? delta[t + 1] : 0;
    for (int64_t rep = 0; rep < delta[t] - next; ++rep) {
      MGateReport g = gates::mut_I_inv(T, trows[t]);
      push_step(res, T, "I^{-1} sigma_le_inv", trows[t], g, sigma_inv(T, trows[t], Side::LE));
    }
  }
}

}  // namespace detail_chain

// Theorem "Main 1": per L(s,t,u) -> per L(s,t-1,u-s) through Mutation I,
// (reflected) Mutation ᵗII / ᵗI, and a closing Mutation I^{-1} chain landing
// on the transpose of Y(s,t-1,u-s). Hypothesis (a): u ∈ sZ, t-u ∈ (s+1)Z;
// hypothesis (b): s = 2, t-u ∈ 3Z.
inline TransformResult main1_transform(int64_t s, int64_t t, int64_t u) {
  bool hyp_a = (u % s == 0) && ((t - u) % (s + 1) == 0);
  bool hyp_b = (s == 2) && ((t - u) % 3 == 0);
  if (u < 1 || u > t || s < 2 || (!hyp_a && !hyp_b))
    throw std::invalid_argument("main1_transform: hypothesis (a)/(b) violated");
  TransformResult res;
  res.name = "main1(" + std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(u) + ")";
  LatticeSet T = young_pqr(s, t, u);
  res.start = T;
  res.target = transpose(young_pqr(s, t - 1, u - s));

  // Stage A: σ_{<=k} for k = s-1 .. 1 (Mutation I).
  for (int64_t k = s - 1; k >= 1; --k)
    detail_chain::push_step(res, T, "I sigma_le", k, gates::mut_I(T, k), sigma(T, k, Side::LE));

  // Stage B1: the high-column block moves down, as a reflected ᵗ-mutation.
  if (u > s) {
    if (hyp_a) {
      // one reflected Mutation ᵗII: k2 = u-s, h2 = s-1, anchor (-1, -t+s-1)
      int64_t k2 = u - s, h2 = s - 1;
      MGateReport g = gates::mut_tII(negate(T), k2, h2, {-1, -t + s - 1});
      LatticeSet after = T;
      for (int64_t c = t - u + 2; c <= t - s + 1; ++c) after = rho_inv(after, c, Side::GE);
      detail_chain::push_step(res, T, "tII (reflected) rho_ge_inv group", k2, g, after);
    } else {
      // case (b): individual reflected Mutation ᵗI steps
      for (int64_t c = t - u + 2; c <= t - 1; ++c)
        detail_chain::push_step(res, T, "tI (reflected) rho_ge_inv", c,
                                gates::mut_tI(negate(T), -c), rho_inv(T, c, Side::GE));
    }
  }

  // Stage B2: forward Mutation ᵗII at anchor (1,1): k1 = t-u, h1 = s.
  {
    int64_t k1 = t - u, h1 = s;
    MGateReport g = gates::mut_tII(T, k1, h1, {1, 1});
    LatticeSet after = T;
    for (int64_t c = t - u; c >= 1; --c) after = rho(after, c, Side::LE);
    detail_chain::push_step(res, T, "tII rho_le group", k1, g, after);
  }

  // Stage C1: σ_{>=c} for c = s+1 .. u (reflected Mutation I^{-1} steps).
  for (int64_t c = s + 1; c <= u; ++c)
    detail_chain::push_step(res, T, "I^{-1} (reflected) sigma_ge", c,
                            gates::mut_I_inv(negate(T), -c), sigma(T, c, Side::GE));

  // Stage C2: closing Mutation I^{-1} chain onto the transposed target.
  detail_chain::align_rows(res, T, res.target);

  res.end_matches = equivalent(T, res.target);
  res.all_gates = true;
  for (auto& st : res.steps) res.all_gates = res.all_gates && st.gate;
  res.cert = certify_pair(nakayama(s * t - u, t + 1), nakayama(s * t - u, t));
  return res;
}

// Theorem "Main 3": per L(p+1,q,q-1) -> per L(q+1,p,p-1):
// q Mutation I steps at threshold p, then p Mutation ᵗI^{-1} steps at 0.
inline TransformResult main3_transform(int64_t p, int64_t q) {
  if (p < 2 || q < 2) throw std::invalid_argument("main3_transform: need p, q >= 2");
  TransformResult res;
  res.name = "main3(" + std::to_string(p) + "," + std::to_string(q) + ")";
  LatticeSet T = young_pqr(p + 1, q, q - 1);
  res.start = T;
  res.target = transpose(young_pqr(q + 1, p, p - 1));
  for (int64_t step = 0; step < q; ++step)
    detail_chain::push_step(res, T, "I sigma_le", p, gates::mut_I(T, p), sigma(T, p, Side::LE));
  for (int64_t step = 0; step < p; ++step)
    detail_chain::push_step(res, T, "tI^{-1} rho_le_inv", 0, gates::mut_tI_inv(T, 0),
                            rho_inv(T, 0, Side::LE));
  res.end_matches = equivalent(T, res.target);
  res.all_gates = true;
  for (auto& st : res.steps) res.all_gates = res.all_gates && st.gate;
  res.cert = certify_pair(nakayama(p * q + 1, q + 1), nakayama(p * q + 1, p + 1));
  return res;
}

}  // namespace perlat

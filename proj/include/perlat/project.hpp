#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "perlat/homalg.hpp"
#include "perlat/serre.hpp"

namespace perlat {

// Global switches for the runtime verification layer.
struct Verification {
  static bool& projections() {
    static bool on = true;
    return on;
  }
};

// An exceptional sequence (E_1, ..., E_m): each E_a exceptional and
// Hom(E_a, E_b[n]) = 0 for a < b and all n.
template <class K>
struct ExcSeq {
  std::vector<ProjComplex<K>> objs;

  static ExcSeq checked(std::vector<ProjComplex<K>> objs) {
    ExcSeq s{std::move(objs)};
    s.validate();
    return s;
  }
  static ExcSeq trusted(std::vector<ProjComplex<K>> objs) { return ExcSeq{std::move(objs)}; }

  void validate() const {
    for (size_t a = 0; a < objs.size(); ++a) {
      HomDims self = hom_dims(objs[a], objs[a]);
      if (!(self.size() == 1 && self.count(0) && self.at(0) == 1))
        throw std::invalid_argument("ExcSeq: object " + std::to_string(a) + " is not exceptional");
      for (size_t b = a + 1; b < objs.size(); ++b)
        if (!hom_dims(objs[a], objs[b]).empty())
          throw std::invalid_argument("ExcSeq: forward Hom-vanishing fails at (" +
                                      std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
};

namespace detail {

// One right-projection step: replace X by cone(ev : ⊕ E[-n] -> X), the
// ⟨E⟩^⊥-component relative to a single exceptional E. Also composes the
// running comparison map kappa : X0 -> X.
template <class K>
void right_step(const ProjComplex<K>& E, ProjComplex<K>& X, ChainMap<K>& kappa) {
  HomComplex<K> H(E, X);
  std::vector<ProjComplex<K>> parts;
  std::vector<std::vector<BlockMat<K>>> part_blocks;
  std::vector<int> part_shift;
  for (int n = H.nlo(); n <= H.nhi(); ++n)
    for (auto& rep : H.class_reps(n)) {
      parts.push_back(shift(E, -n));
      part_blocks.push_back(H.unpack(n, rep));
      part_shift.push_back(n);
    }
  ChainMap<K> ev;
  if (parts.empty()) {
    ev = ChainMap<K>{zero_complex<K>(X.algebra()), X, {}, 0};
  } else {
    ProjComplex<K> Y = direct_sum(parts);
    ev.X = Y;
    ev.Y = X;
    ev.blk_lo = Y.lo();
    for (int d = Y.lo(); d <= Y.hi(); ++d) {
      BlockMat<K> blk(int(X.summands_at(d).size()), int(Y.summands_at(d).size()));
      int coff = 0;
      for (size_t pi = 0; pi < parts.size(); ++pi) {
        // part pi is E[-n]; its degree-d summands are E^{d-n}
        int n = part_shift[pi];
        const auto& es = parts[pi].summands_at(d);
        if (!es.empty()) {
          int ed_index = (d - n) - E.lo();  // block index within the rep
          const BlockMat<K>& fb = part_blocks[pi][ed_index];
          for (int r = 0; r < blk.nr; ++r)
            for (int c = 0; c < int(es.size()); ++c) blk.at(r, coff + c) = fb.at(r, c);
        }
        coff += int(es.size());
      }
      ev.blocks.push_back(std::move(blk));
    }
  }
  ProjComplex<K> C = cone(ev);
  ChainMap<K> inc = cone_inclusion(ev, C);
  Minimized<K> m = minimize_with_maps(C);
  kappa = compose_maps(m.p, compose_maps(inc, kappa));
  X = m.M;
}

// One left-projection step: replace X by cocone(coev : X -> ⊕ E[n]), the
// ^⊥⟨E⟩-component. Composes the running map tau : X -> X0.
template <class K>
void left_step(const ProjComplex<K>& E, ProjComplex<K>& X, ChainMap<K>& tau) {
  HomComplex<K> H(X, E);
  std::vector<ProjComplex<K>> parts;
  std::vector<std::vector<BlockMat<K>>> part_blocks;
  std::vector<int> part_shift;
  for (int n = H.nlo(); n <= H.nhi(); ++n)
    for (auto& rep : H.class_reps(n)) {
      parts.push_back(shift(E, n));
      part_blocks.push_back(H.unpack(n, rep));
      part_shift.push_back(n);
    }
  ChainMap<K> coev;
  if (parts.empty()) {
    coev = ChainMap<K>{X, zero_complex<K>(X.algebra()), {}, 0};
  } else {
    ProjComplex<K> Y = direct_sum(parts);
    coev.X = X;
    coev.Y = Y;
    coev.blk_lo = X.zero() ? 0 : X.lo();
    for (int d = coev.blk_lo; d <= (X.zero() ? coev.blk_lo - 1 : X.hi()); ++d) {
      BlockMat<K> blk(int(Y.summands_at(d).size()), int(X.summands_at(d).size()));
      int roff = 0;
      for (size_t pi = 0; pi < parts.size(); ++pi) {
        const auto& es = parts[pi].summands_at(d);
        if (!es.empty()) {
          const BlockMat<K>& fb = part_blocks[pi][d - X.lo()];
          for (int r = 0; r < int(es.size()); ++r)
            for (int c = 0; c < blk.nc; ++c) blk.at(roff + r, c) = fb.at(r, c);
        }
        roff += int(es.size());
      }
      coev.blocks.push_back(std::move(blk));
    }
  }
  CoconeResult<K> cc = cocone(coev);
  Minimized<K> m = minimize_with_maps(cc.C);
  tau = compose_maps(tau, compose_maps(cc.to_X, m.i));
  X = m.M;
}

template <class K>
void verify_orthogonal_left(const ExcSeq<K>& E, const ProjComplex<K>& T) {
  for (auto& Ea : E.objs)
    if (!hom_dims(T, Ea).empty())
      throw std::logic_error("projection: left-orthogonality postcondition failed");
}
template <class K>
void verify_orthogonal_right(const ExcSeq<K>& E, const ProjComplex<K>& F) {
  for (auto& Ea : E.objs)
    if (!hom_dims(Ea, F).empty())
      throw std::logic_error("projection: right-orthogonality postcondition failed");
}

}  // namespace detail

// F_{⟨E⟩}(X): left adjoint of the inclusion of ⟨E⟩. Computed through the
// triangle T_{^⊥⟨E⟩}(X) -> X -> F_{⟨E⟩}(X).
template <class K>
ProjComplex<K> project_left(const ExcSeq<K>& E, const ProjComplex<K>& X) {
  if (E.objs.empty()) return zero_complex<K>(X.algebra());
  ProjComplex<K> T = X;
  ChainMap<K> tau = identity_map(X);
  for (size_t a = E.objs.size(); a-- > 0;) detail::left_step(E.objs[a], T, tau);
  ProjComplex<K> F = minimize(cone(tau));
  if (Verification::projections()) {
    detail::verify_orthogonal_left(E, T);
    // membership: the ^⊥⟨E⟩-part of F must vanish
    ProjComplex<K> F2 = F;
    ChainMap<K> t2 = identity_map(F);
    for (size_t a = E.objs.size(); a-- > 0;) detail::left_step(E.objs[a], F2, t2);
    if (!is_acyclic(F2)) throw std::logic_error("project_left: image not in ⟨E⟩");
  }
  return F;
}

// T_{⟨E⟩}(X): right adjoint of the inclusion, via
// T_{⟨E⟩}(X) -> X -> F_{⟨E⟩^⊥}(X).
template <class K>
ProjComplex<K> project_right(const ExcSeq<K>& E, const ProjComplex<K>& X) {
  if (E.objs.empty()) return zero_complex<K>(X.algebra());
  ProjComplex<K> F = X;
  ChainMap<K> kappa = identity_map(X);
  for (size_t a = 0; a < E.objs.size(); ++a) detail::right_step(E.objs[a], F, kappa);
  CoconeResult<K> cc = cocone(kappa);
  ProjComplex<K> T = minimize(cc.C);
  if (Verification::projections()) {
    detail::verify_orthogonal_right(E, F);
    ProjComplex<K> T2 = T;
    ChainMap<K> k2 = identity_map(T);
    for (size_t a = 0; a < E.objs.size(); ++a) detail::right_step(E.objs[a], T2, k2);
    if (!is_acyclic(T2)) throw std::logic_error("project_right: image not in ⟨E⟩");
  }
  return T;
}

// Membership test X ∈ ⟨E⟩: the ⟨E⟩^⊥-component of X vanishes.
template <class K>
bool in_thick_closure(const ExcSeq<K>& E, const ProjComplex<K>& X) {
  ProjComplex<K> F = X;
  ChainMap<K> kappa = identity_map(X);
  for (size_t a = 0; a < E.objs.size(); ++a) detail::right_step(E.objs[a], F, kappa);
  return is_acyclic(F);
}

// S_{⟨E⟩} = T_{⟨E⟩} ∘ S restricted to ⟨E⟩, and its inverse F_{⟨E⟩} ∘ S^{-1}.
template <class K>
ProjComplex<K> sub_serre(const ExcSeq<K>& E, const ProjComplex<K>& X, bool check_membership = false) {
  if (check_membership && !in_thick_closure(E, X))
    throw std::invalid_argument("sub_serre: X not in ⟨E⟩");
  return project_right(E, serre(X));
}

template <class K>
ProjComplex<K> sub_serre_inverse(const ExcSeq<K>& E, const ProjComplex<K>& X,
                                 bool check_membership = false) {
  if (check_membership && !in_thick_closure(E, X))
    throw std::invalid_argument("sub_serre_inverse: X not in ⟨E⟩");
  return project_left(E, serre_inverse(X));
}

// Lemma-style decomposition inside ⟨E⟩ for a single exceptional E:
// X ≅ ⊕ E[n]^{d_n} with d_n = dim Hom(E, X[-n]).
template <class K>
std::map<int, int> exceptional_decompose(const ProjComplex<K>& E, const ProjComplex<K>& X,
                                         bool verify = true) {
  ExcSeq<K> single = ExcSeq<K>::checked({E});
  if (!in_thick_closure(single, X))
    throw std::invalid_argument("exceptional_decompose: X not in ⟨E⟩");
  HomDims h = hom_dims(E, X);
  std::map<int, int> mult;  // shift n -> multiplicity
  for (auto& [n, d] : h) mult[-n] = d;
  if (verify) {
    std::vector<ProjComplex<K>> parts;
    for (auto& [n, d] : mult)
      for (int t = 0; t < d; ++t) parts.push_back(shift(E, n));
    ProjComplex<K> sum = parts.empty() ? zero_complex<K>(X.algebra()) : direct_sum(parts);
    if (!is_iso(X, sum)) throw std::logic_error("exceptional_decompose: rebuilt sum not isomorphic");
  }
  return mult;
}

}  // namespace perlat

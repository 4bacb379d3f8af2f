#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "perlat/complex.hpp"
#include "perlat/homalg.hpp"

namespace perlat {

// Finite-dimensional right module given by weight spaces and the action of
// every non-idempotent basis element: act(b) : M_{tgt(b)} -> M_{src(b)}.
template <class K>
struct Module {
  AlgebraPtr A;
  std::vector<int> wdim;    // per vertex
  std::vector<Mat<K>> act;  // indexed by basis element - nv

  Module() = default;
  explicit Module(AlgebraPtr alg) : A(std::move(alg)), wdim(A->nv(), 0) {
    act.resize(A->dim() - A->nv());
  }

  int dim_total() const {
    int t = 0;
    for (int d : wdim) t += d;
    return t;
  }
  const Mat<K>& action(int b) const { return act[b - A->nv()]; }
  Mat<K>& action(int b) { return act[b - A->nv()]; }

  void init_actions() {
    for (int b = A->nv(); b < A->dim(); ++b)
      act[b - A->nv()] = Mat<K>(wdim[A->src(b)], wdim[A->tgt(b)]);
  }

  // m·x for x in e_t A e_s (so the result lives in weight s).
  std::vector<K> apply_elem(const Elem<K>& x, int s, const std::vector<K>& m) const {
    std::vector<K> out(wdim[s], K(0));
    for (auto& [b, c] : x.terms) {
      if (A->is_idempotent(b)) {
        for (int q = 0; q < wdim[s]; ++q) out[q] += c * m[q];
      } else {
        auto v = action(b).apply(m);
        for (int q = 0; q < wdim[s]; ++q) out[q] += c * v[q];
      }
    }
    return out;
  }
};

template <class K>
Module<K> projective_module(const AlgebraPtr& A, int v) {
  Module<K> m(A);
  for (int w = 0; w < A->nv(); ++w) m.wdim[w] = int(A->hom_basis(v, w).size());
  m.init_actions();
  for (int b = A->nv(); b < A->dim(); ++b) {
    int s = A->src(b), t = A->tgt(b);
    const auto& tb = A->hom_basis(v, t);
    const auto& sb = A->hom_basis(v, s);
    for (size_t ci = 0; ci < tb.size(); ++ci) {
      int32_t p = A->prod(tb[ci], b);
      if (p < 0) continue;
      for (size_t ri = 0; ri < sb.size(); ++ri)
        if (sb[ri] == p) m.action(b)(int(ri), int(ci)) = K(1);
    }
  }
  return m;
}

template <class K>
Module<K> injective_module(const AlgebraPtr& A, int v) {
  // I(v) = D(A e_v): weight w has basis dual to e_w A e_v.
  Module<K> m(A);
  for (int w = 0; w < A->nv(); ++w) m.wdim[w] = int(A->hom_basis(w, v).size());
  m.init_actions();
  for (int b = A->nv(); b < A->dim(); ++b) {
    int s = A->src(b), t = A->tgt(b);
    const auto& sb = A->hom_basis(s, v);
    const auto& tb = A->hom_basis(t, v);
    // (y*·b) = Σ_x [b·x == y] x*
    for (size_t ci = 0; ci < tb.size(); ++ci)
      for (size_t ri = 0; ri < sb.size(); ++ri)
        if (A->prod(b, sb[ri]) == tb[ci]) m.action(b)(int(ri), int(ci)) = K(1);
  }
  return m;
}

template <class K>
Module<K> simple_module(const AlgebraPtr& A, int v) {
  Module<K> m(A);
  m.wdim[v] = 1;
  m.init_actions();
  return m;
}

template <class K>
Module<K> module_direct_sum(const AlgebraPtr& A, const std::vector<const Module<K>*>& parts) {
  Module<K> m(A);
  for (auto* p : parts)
    for (int w = 0; w < A->nv(); ++w) m.wdim[w] += p->wdim[w];
  m.init_actions();
  for (int b = A->nv(); b < A->dim(); ++b) {
    int s = A->src(b), t = A->tgt(b);
    int ro = 0, co = 0;
    for (auto* p : parts) {
      for (int r = 0; r < p->wdim[s]; ++r)
        for (int c = 0; c < p->wdim[t]; ++c) m.action(b)(ro + r, co + c) = p->action(b)(r, c);
      ro += p->wdim[s];
      co += p->wdim[t];
    }
  }
  return m;
}

// Weightwise linear map between modules.
template <class K>
struct ModuleMap {
  std::vector<Mat<K>> by_weight;  // per vertex: N_w x M_w
};

template <class K>
struct ModuleComplex {
  AlgebraPtr A;
  int lo{0};
  std::vector<Module<K>> mods;
  std::vector<ModuleMap<K>> maps;  // maps[t]: mods[t] -> mods[t+1]

  int hi() const { return lo + int(mods.size()) - 1; }
  bool zero() const { return mods.empty(); }
};

namespace detail {
template <class K>
Module<K> sum_of(const AlgebraPtr& A, std::vector<Module<K>> pieces) {
  std::vector<const Module<K>*> ptrs;
  for (auto& p : pieces) ptrs.push_back(&p);
  return module_direct_sum(A, ptrs);
}
}  // namespace detail

// The complex of modules underlying a complex of projectives.
template <class K>
ModuleComplex<K> as_module_complex(const ProjComplex<K>& X) {
  ModuleComplex<K> mc;
  mc.A = X.algebra();
  mc.lo = X.lo();
  if (X.zero()) return mc;
  const Algebra& A = *mc.A;
  for (int d = X.lo(); d <= X.hi(); ++d) {
    std::vector<Module<K>> pieces;
    for (int v : X.summands_at(d)) pieces.push_back(projective_module<K>(mc.A, v));
    mc.mods.push_back(detail::sum_of(mc.A, std::move(pieces)));
  }
  for (int d = X.lo(); d < X.hi(); ++d) {
    ModuleMap<K> mm;
    BlockMat<K> D = X.diff_at(d);
    for (int z = 0; z < A.nv(); ++z)
      mm.by_weight.push_back(
          detail::weight_matrix(A, X.summands_at(d + 1), X.summands_at(d), D, z));
    mc.maps.push_back(std::move(mm));
  }
  return mc;
}

// ν applied on the nose: each P(v) becomes I(v) and each differential entry
// x : P(v) -> P(w) becomes ν(x) = D(-·x) : I(v) -> I(w). This is strictly
// functorial, so d∘d = 0 survives verbatim.
template <class K>
ModuleComplex<K> nakayama_image(const ProjComplex<K>& X) {
  ModuleComplex<K> mc;
  mc.A = X.algebra();
  mc.lo = X.lo();
  if (X.zero()) return mc;
  const Algebra& A = *mc.A;
  for (int d = X.lo(); d <= X.hi(); ++d) {
    std::vector<Module<K>> pieces;
    for (int v : X.summands_at(d)) pieces.push_back(injective_module<K>(mc.A, v));
    mc.mods.push_back(detail::sum_of(mc.A, std::move(pieces)));
  }
  for (int d = X.lo(); d < X.hi(); ++d) {
    const auto& from = X.summands_at(d);
    const auto& to = X.summands_at(d + 1);
    BlockMat<K> D = X.diff_at(d);
    ModuleMap<K> mm;
    for (int z = 0; z < A.nv(); ++z) {
      std::vector<int> roff(to.size() + 1, 0), coff(from.size() + 1, 0);
      for (size_t r = 0; r < to.size(); ++r)
        roff[r + 1] = roff[r] + int(A.hom_basis(z, to[r]).size());
      for (size_t c = 0; c < from.size(); ++c)
        coff[c + 1] = coff[c] + int(A.hom_basis(z, from[c]).size());
      Mat<K> m(roff.back(), coff.back());
      for (size_t r = 0; r < to.size(); ++r)
        for (size_t c = 0; c < from.size(); ++c) {
          const Elem<K>& x = D.at(int(r), int(c));
          if (x.zero()) continue;
          const auto& rb = A.hom_basis(z, to[r]);    // c' with target z, source w
          const auto& cb = A.hom_basis(z, from[c]);  // b with target z, source v
          // <ν(x)(b*), c'> = coeff of b in c'·x
          for (size_t ri = 0; ri < rb.size(); ++ri)
            for (auto& [bx, coeff] : x.terms) {
              int32_t p = A.prod(rb[ri], bx);
              if (p < 0) continue;
              for (size_t ci = 0; ci < cb.size(); ++ci)
                if (cb[ci] == p) m(roff[r] + int(ri), coff[c] + int(ci)) += coeff;
            }
        }
      mm.by_weight.push_back(std::move(m));
    }
    mc.maps.push_back(std::move(mm));
  }
  return mc;
}

// K-dual: complex of A-modules -> complex of A^op-modules, degrees negated,
// actions and maps transposed, arrows reversed.
template <class K>
ModuleComplex<K> dualize(const ModuleComplex<K>& mc, const AlgebraPtr& Aop) {
  ModuleComplex<K> out;
  out.A = Aop;
  if (mc.zero()) return out;
  out.lo = -mc.hi();
  auto transpose_mat = [](const Mat<K>& a) {
    Mat<K> tr(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) tr(j, i) = a(i, j);
    return tr;
  };
  for (int t = int(mc.mods.size()) - 1; t >= 0; --t) {
    Module<K> m(Aop);
    m.wdim = mc.mods[t].wdim;
    m.init_actions();
    for (int b = Aop->nv(); b < Aop->dim(); ++b) m.action(b) = transpose_mat(mc.mods[t].action(b));
    out.mods.push_back(std::move(m));
  }
  for (int t = int(mc.maps.size()) - 1; t >= 0; --t) {
    ModuleMap<K> mm;
    for (const Mat<K>& a : mc.maps[t].by_weight) mm.by_weight.push_back(transpose_mat(a));
    out.maps.push_back(std::move(mm));
  }
  return out;
}

// Projective replacement: a bounded complex of projectives quasi-isomorphic
// to the given complex of modules. Built from the top degree downwards: at
// each degree take a minimal cover of the fiber product
//   N = { (p, m) ∈ Z(P^{d+1}) ⊕ M^d : π(p) = d_M(m) },
// wire its cycle part into the differential and its module part into the
// comparison map π. The cone of π is exact by construction.
template <class K>
ProjComplex<K> proj_replace(const ModuleComplex<K>& mc) {
  AlgebraPtr A = mc.A;
  const Algebra& Alg = *A;
  if (mc.zero()) return zero_complex<K>(A);

  auto module_at = [&](int d) -> const Module<K>* {
    if (d < mc.lo || d > mc.hi()) return nullptr;
    return &mc.mods[d - mc.lo];
  };
  auto map_at = [&](int d) -> const ModuleMap<K>* {  // M^d -> M^{d+1}
    if (d < mc.lo || d + 1 > mc.hi()) return nullptr;
    return &mc.maps[d - mc.lo];
  };

  struct Layer {
    std::vector<int> verts;
    BlockMat<K> d;                   // this degree -> degree+1
    std::vector<std::vector<K>> pi;  // per summand: value in M^deg, weight of the summand
  };
  std::map<int, Layer> layers;

  int guard = mc.lo - Alg.nv() - 3;
  for (int deg = mc.hi();; --deg) {
    if (deg < guard) throw std::logic_error("proj_replace: not terminating");
    const Layer* up = nullptr;
    if (auto it = layers.find(deg + 1); it != layers.end()) up = &it->second;
    const Layer* upup = nullptr;
    if (auto it = layers.find(deg + 2); it != layers.end()) upup = &it->second;
    const Module<K>* M = module_at(deg);
    const Module<K>* Mup = module_at(deg + 1);
    bool up_empty = !up || up->verts.empty();
    if (deg < mc.lo && up_empty) break;

    // Pass 1: fiber-product kernels per weight.
    struct WeightData {
      Mat<K> ker;  // columns: basis of N_z in (P^{d+1}_z ⊕ M^d_z)-coordinates
      int pdim{0}, mdim{0};
      std::vector<int> poff;  // per up-summand offset into the p-part
    };
    std::vector<WeightData> wd(Alg.nv());
    for (int z = 0; z < Alg.nv(); ++z) {
      WeightData& w = wd[z];
      if (up)
        for (int v : up->verts) {
          w.poff.push_back(w.pdim);
          w.pdim += int(Alg.hom_basis(v, z).size());
        }
      w.mdim = M ? M->wdim[z] : 0;
      if (w.pdim + w.mdim == 0) {
        w.ker = Mat<K>(0, 0);
        continue;
      }
      Mat<K> dmat(0, w.pdim);
      if (up && upup && !upup->verts.empty())
        dmat = detail::weight_matrix(Alg, upup->verts, up->verts, up->d, z);
      int crows = dmat.rows();
      int mup = Mup ? Mup->wdim[z] : 0;
      Mat<K> sys(crows + mup, w.pdim + w.mdim);
      for (int r = 0; r < crows; ++r)
        for (int c = 0; c < w.pdim; ++c) sys(r, c) = dmat(r, c);
      if (mup > 0) {
        if (up) {
          int col = 0;
          for (size_t g = 0; g < up->verts.size(); ++g)
            for (int y : Alg.hom_basis(up->verts[g], z)) {
              std::vector<K> val = Mup->apply_elem(Elem<K>::single(y, K(1)), z, up->pi[g]);
              for (int r = 0; r < mup; ++r) sys(crows + r, col) = val[r];
              ++col;
            }
        }
        if (M && map_at(deg))
          for (int r = 0; r < mup; ++r)
            for (int c = 0; c < w.mdim; ++c)
              sys(crows + r, w.pdim + c) = -K(1) * map_at(deg)->by_weight[z](r, c);
      }
      w.ker = kernel_basis(sys);
    }

    // Pass 2: radical images, then cover generators per weight.
    Layer cur;
    std::vector<std::vector<std::vector<K>>> gens(Alg.nv());
    for (int z = 0; z < Alg.nv(); ++z) {
      const WeightData& w = wd[z];
      int dim = w.pdim + w.mdim;
      if (dim == 0 || w.ker.cols() == 0) continue;
      Span<K> sp(dim);
      for (int b = Alg.nv(); b < Alg.dim(); ++b) {
        if (Alg.src(b) != z) continue;
        int zt = Alg.tgt(b);
        const WeightData& wt = wd[zt];
        for (int kcol = 0; kcol < wt.ker.cols(); ++kcol) {
          // act with b on the kernel vector at weight zt
          std::vector<K> img(dim, K(0));
          // p-part: per summand block, right multiplication
          if (up)
            for (size_t g = 0; g < up->verts.size(); ++g) {
              const auto& src_basis = Alg.hom_basis(up->verts[g], zt);
              const auto& dst_basis = Alg.hom_basis(up->verts[g], z);
              for (size_t yi = 0; yi < src_basis.size(); ++yi) {
                const K& coeff = wt.ker(wt.poff[g] + int(yi), kcol);
                if (is_zero(coeff)) continue;
                int32_t p = Alg.prod(src_basis[yi], b);
                if (p < 0) continue;
                for (size_t di = 0; di < dst_basis.size(); ++di)
                  if (dst_basis[di] == p) img[w.poff[g] + int(di)] += coeff;
              }
            }
          // m-part
          if (M && wt.mdim > 0) {
            std::vector<K> mvec(wt.mdim);
            for (int r = 0; r < wt.mdim; ++r) mvec[r] = wt.ker(wt.pdim + r, kcol);
            std::vector<K> mimg = M->apply_elem(Elem<K>::single(b, K(1)), z, mvec);
            for (int r = 0; r < w.mdim; ++r) img[w.pdim + r] += mimg[r];
          }
          sp.add(std::move(img));
        }
      }
      for (int kcol = 0; kcol < w.ker.cols(); ++kcol) {
        std::vector<K> v(dim);
        for (int r = 0; r < dim; ++r) v[r] = w.ker(r, kcol);
        std::vector<K> probe = v;
        if (sp.add(std::move(probe))) gens[z].push_back(std::move(v));
      }
    }

    // Assemble the layer.
    int upn = up ? int(up->verts.size()) : 0;
    int total = 0;
    for (int z = 0; z < Alg.nv(); ++z) total += int(gens[z].size());
    cur.d = BlockMat<K>(upn, total);
    int col = 0;
    for (int z = 0; z < Alg.nv(); ++z)
      for (auto& g : gens[z]) {
        cur.verts.push_back(z);
        if (up)
          for (size_t gi = 0; gi < up->verts.size(); ++gi) {
            const auto& basis = Alg.hom_basis(up->verts[gi], z);
            for (size_t yi = 0; yi < basis.size(); ++yi) {
              const K& c = g[wd[z].poff[gi] + int(yi)];
              if (!is_zero(c)) cur.d.at(int(gi), col).add_term(basis[yi], c);
            }
          }
        std::vector<K> mpart(wd[z].mdim);
        for (int r = 0; r < wd[z].mdim; ++r) mpart[r] = g[wd[z].pdim + r];
        cur.pi.push_back(std::move(mpart));
        ++col;
      }
    bool empty_layer = cur.verts.empty();
    layers.emplace(deg, std::move(cur));
    if (deg < mc.lo && empty_layer) break;
  }

  while (!layers.empty() && layers.begin()->second.verts.empty()) layers.erase(layers.begin());
  while (!layers.empty() && layers.rbegin()->second.verts.empty())
    layers.erase(std::prev(layers.end()));
  if (layers.empty()) return zero_complex<K>(A);

  int lo = layers.begin()->first, hi = layers.rbegin()->first;
  std::vector<std::vector<int>> summ;
  std::vector<BlockMat<K>> diff;
  for (int d = lo; d <= hi; ++d) {
    auto it = layers.find(d);
    summ.push_back(it != layers.end() ? it->second.verts : std::vector<int>{});
  }
  for (int d = lo; d < hi; ++d) {
    auto it = layers.find(d);
    if (it != layers.end() && it->second.d.nr == int(summ[d - lo + 1].size()))
      diff.push_back(it->second.d);
    else
      diff.push_back(BlockMat<K>(int(summ[d - lo + 1].size()), int(summ[d - lo].size())));
  }
  return ProjComplex<K>(A, lo, std::move(summ), std::move(diff));
}

// Minimal projective resolution of the simple at v (degrees <= 0).
template <class K>
ProjComplex<K> simple_resolution(const AlgebraPtr& A, int v) {
  if (!A->is_acyclic_quiver())
    throw std::invalid_argument("simple_resolution: algebra must be directed");
  ModuleComplex<K> mc;
  mc.A = A;
  mc.lo = 0;
  mc.mods.push_back(simple_module<K>(A, v));
  return minimize(proj_replace(mc));
}

// Complex of projectives quasi-isomorphic to the injective I(v).
template <class K>
ProjComplex<K> injective_resolution_as_proj(const AlgebraPtr& A, int v) {
  if (!A->is_acyclic_quiver())
    throw std::invalid_argument("injective_resolution_as_proj: algebra must be directed");
  ModuleComplex<K> mc;
  mc.A = A;
  mc.lo = 0;
  mc.mods.push_back(injective_module<K>(A, v));
  return minimize(proj_replace(mc));
}

}  // namespace perlat

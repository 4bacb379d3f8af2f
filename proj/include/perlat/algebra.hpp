#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "perlat/intpoly.hpp"
#include "perlat/lattice.hpp"

#include "json.hpp"

namespace perlat {

// Basic finite-dimensional algebra presented by an explicit basis of "path
// classes": every basis element has a source and a target vertex, the vertex
// idempotents are basis elements 0..nv-1, and the product of two basis
// elements is either zero or again a basis element (all structure constants
// are normalized to 1). Composition follows the βα convention: prod(x, y) is
// "x after y" and needs src(x) == tgt(y); e_v A e_w is spanned by the basis
// elements with source w and target v.
class Algebra {
 public:
  struct Basis {
    int src{0}, tgt{0};
    std::string name;
  };

  Algebra(std::vector<std::string> vertex_names, std::vector<Basis> basis,
          std::vector<int32_t> prod_table, nlohmann::json descriptor)
      : vnames_(std::move(vertex_names)),
        basis_(std::move(basis)),
        prod_(std::move(prod_table)),
        desc_(std::move(descriptor)) {
    if (prod_.size() != basis_.size() * basis_.size())
      throw std::invalid_argument("algebra: product table size mismatch");
    for (int v = 0; v < nv(); ++v)
      if (basis_[v].src != v || basis_[v].tgt != v)
        throw std::invalid_argument("algebra: idempotents must be the first nv basis elements");
    build_caches();
  }

  int nv() const { return int(vnames_.size()); }
  int dim() const { return int(basis_.size()); }
  const std::string& vertex_name(int v) const { return vnames_[v]; }
  const Basis& basis(int b) const { return basis_[b]; }
  int src(int b) const { return basis_[b].src; }
  int tgt(int b) const { return basis_[b].tgt; }
  bool is_idempotent(int b) const { return b < nv(); }
  const nlohmann::json& descriptor() const { return desc_; }

  // Product index, or -1 when the product vanishes (or is not composable).
  int32_t prod(int a, int b) const { return prod_[size_t(a) * basis_.size() + b]; }

  // Basis elements of e_t A e_s (source s, target t).
  const std::vector<int>& hom_basis(int t, int s) const {
    return hom_basis_[size_t(t) * nv() + s];
  }

  bool is_acyclic_quiver() const {
    // directed: no nonidentity endomorphisms of a vertex
    for (int b = nv(); b < dim(); ++b)
      if (src(b) == tgt(b)) return false;
    return true;
  }

  // C[i][j] = dim e_i A e_j (basis elements j -> i).
  IntMatrix cartan() const {
    IntMatrix c(nv());
    for (int v = 0; v < nv(); ++v) c.labels[v] = vnames_[v];
    for (int b = 0; b < dim(); ++b) c.at(tgt(b), src(b)) += 1;
    return c;
  }

  // Arrows of the Gabriel quiver: radical elements not in rad^2.
  std::vector<int> arrows() const {
    std::vector<bool> in_rad_sq(dim(), false);
    for (int a = nv(); a < dim(); ++a)
      for (int b = nv(); b < dim(); ++b) {
        int32_t p = prod(a, b);
        if (p >= 0) in_rad_sq[p] = true;
      }
    std::vector<int> out;
    for (int b = nv(); b < dim(); ++b)
      if (!in_rad_sq[b]) out.push_back(b);
    return out;
  }

  void check_associativity_full() const {
    for (int a = 0; a < dim(); ++a)
      for (int b = 0; b < dim(); ++b)
        for (int c = 0; c < dim(); ++c) check_assoc_triple(a, b, c);
  }
  void check_associativity_sampled(int samples, uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(0, dim() - 1);
    for (int t = 0; t < samples; ++t) check_assoc_triple(d(rng), d(rng), d(rng));
  }

 private:
  void check_assoc_triple(int a, int b, int c) const {
    int32_t bc = prod(b, c);
    int32_t ab = prod(a, b);
    int32_t l = (bc >= 0) ? prod(a, bc) : -1;
    int32_t r = (ab >= 0) ? prod(ab, c) : -1;
    if (l != r) throw std::logic_error("algebra: associativity failure");
  }

  void build_caches() {
    hom_basis_.assign(size_t(nv()) * nv(), {});
    for (int b = 0; b < dim(); ++b) hom_basis_[size_t(tgt(b)) * nv() + src(b)].push_back(b);
    // sanity: products respect endpoints; idempotents act as units
    for (int a = 0; a < dim(); ++a) {
      if (prod(tgt(a), a) != a || prod(a, src(a)) != a)
        throw std::logic_error("algebra: idempotents are not units");
      for (int b = 0; b < dim(); ++b) {
        int32_t p = prod(a, b);
        if (p < 0) continue;
        if (src(a) != tgt(b) || src(p) != src(b) || tgt(p) != tgt(a))
          throw std::logic_error("algebra: product endpoints inconsistent");
      }
    }
  }

  std::vector<std::string> vnames_;
  std::vector<Basis> basis_;
  std::vector<int32_t> prod_;
  nlohmann::json desc_;
  std::vector<std::vector<int>> hom_basis_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

namespace build {

struct Raw {
  std::vector<std::string> vnames;
  std::vector<Algebra::Basis> basis;
  std::vector<int32_t> prod;
  int32_t& at(size_t a, size_t b) { return prod[a * basis.size() + b]; }
};

inline AlgebraPtr finish(Raw r, nlohmann::json desc) {
  return std::make_shared<Algebra>(std::move(r.vnames), std::move(r.basis), std::move(r.prod),
                                   std::move(desc));
}

}  // namespace build

// N(n, l) = K A_n / rad^l: basis = paths i -> j with 0 <= j - i < l.
inline AlgebraPtr nakayama(int64_t n, int64_t l) {
  if (n < 1 || l < 1) throw std::invalid_argument("nakayama: need n, l >= 1");
  build::Raw r;
  for (int64_t v = 1; v <= n; ++v) r.vnames.push_back(std::to_string(v));
  std::map<std::pair<int, int>, int> idx;  // (src,tgt) -> basis index
  for (int v = 0; v < n; ++v) {
    r.basis.push_back({v, v, "e" + std::to_string(v + 1)});
    idx[{v, v}] = v;
  }
  for (int64_t len = 1; len < l; ++len)
    for (int s = 0; s + len < n; ++s) {
      int t = int(s + len);
      std::string nm = "p" + std::to_string(s + 1) + ">" + std::to_string(t + 1);
      idx[{s, t}] = int(r.basis.size());
      r.basis.push_back({s, t, nm});
    }
  size_t d = r.basis.size();
  r.prod.assign(d * d, -1);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      if (r.basis[a].src != r.basis[b].tgt) continue;
      int s = r.basis[b].src, t = r.basis[a].tgt;
      if (t - s < l) r.at(a, b) = idx.at({s, t});
    }
  return build::finish(std::move(r), {{"kind", "nakayama"}, {"n", n}, {"l", l}});
}

// Hereditary K A_n.
inline AlgebraPtr path_algebra_an(int64_t n) { return nakayama(n, n >= 1 ? n : 1); }

// N(I) = K Q_I^op / rad^2 on the integer interval I = [lo, hi]:
// vertices lo..hi, one arrow (i+1) -> i for each adjacent pair, rad^2 = 0.
inline AlgebraPtr nn(int64_t lo, int64_t hi) {
  if (lo > hi) throw std::invalid_argument("nn: empty interval");
  build::Raw r;
  int n = int(hi - lo + 1);
  for (int64_t v = lo; v <= hi; ++v) r.vnames.push_back(std::to_string(v));
  for (int v = 0; v < n; ++v) r.basis.push_back({v, v, "e" + std::to_string(lo + v)});
  for (int v = 0; v + 1 < n; ++v)
    r.basis.push_back({v + 1, v, "a" + std::to_string(lo + v + 1) + ">" + std::to_string(lo + v)});
  size_t d = r.basis.size();
  r.prod.assign(d * d, -1);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      if (r.basis[a].src != r.basis[b].tgt) continue;
      bool ia = a < size_t(n), ib = b < size_t(n);
      if (ia && ib) r.at(a, b) = int32_t(a);
      else if (ia) r.at(a, b) = int32_t(b);
      else if (ib) r.at(a, b) = int32_t(a);
      // arrow * arrow = 0 (rad^2)
    }
  return build::finish(std::move(r), {{"kind", "nn"}, {"lo", lo}, {"hi", hi}});
}
inline AlgebraPtr nn(int64_t k) { return nn(1, k); }

// A ⊗_K B, basis pairs, componentwise products.
inline AlgebraPtr tensor(const AlgebraPtr& A, const AlgebraPtr& B) {
  build::Raw r;
  int nva = A->nv(), nvb = B->nv();
  auto vid = [&](int va, int vb) { return va * nvb + vb; };
  for (int va = 0; va < nva; ++va)
    for (int vb = 0; vb < nvb; ++vb)
      r.vnames.push_back("(" + A->vertex_name(va) + "," + B->vertex_name(vb) + ")");
  // vertex idempotents first, then the rest in pair order
  std::vector<int> pair_index(size_t(A->dim()) * B->dim(), -1);
  auto pid = [&](int a, int b) -> int& { return pair_index[size_t(a) * B->dim() + b]; };
  for (int va = 0; va < nva; ++va)
    for (int vb = 0; vb < nvb; ++vb) {
      pid(va, vb) = int(r.basis.size());
      r.basis.push_back({vid(va, vb), vid(va, vb), ""});
    }
  for (int a = 0; a < A->dim(); ++a)
    for (int b = 0; b < B->dim(); ++b) {
      if (a < nva && b < nvb) continue;
      pid(a, b) = int(r.basis.size());
      r.basis.push_back({vid(A->src(a), B->src(b)), vid(A->tgt(a), B->tgt(b)),
                         A->basis(a).name + "⊗" + B->basis(b).name});
    }
  size_t d = r.basis.size();
  r.prod.assign(d * d, -1);
  for (int a1 = 0; a1 < A->dim(); ++a1)
    for (int b1 = 0; b1 < B->dim(); ++b1)
      for (int a2 = 0; a2 < A->dim(); ++a2)
        for (int b2 = 0; b2 < B->dim(); ++b2) {
          int32_t pa = A->prod(a1, a2), pb = B->prod(b1, b2);
          if (pa < 0 || pb < 0) continue;
          r.at(pid(a1, b1), pid(a2, b2)) = pid(pa, pb);
        }
  return build::finish(std::move(r),
                       {{"kind", "tensor"}, {"left", A->descriptor()}, {"right", B->descriptor()}});
}

// Corner algebra eAe for e = sum of the kept vertex idempotents.
inline AlgebraPtr corner(const AlgebraPtr& A, const std::vector<int>& keep_vertices,
                         std::vector<std::string> new_names, nlohmann::json desc) {
  std::vector<int> vmap(A->nv(), -1);
  for (size_t t = 0; t < keep_vertices.size(); ++t) vmap[keep_vertices[t]] = int(t);
  build::Raw r;
  r.vnames = std::move(new_names);
  std::vector<int> bmap(A->dim(), -1);
  for (int v : keep_vertices) {
    bmap[v] = int(r.basis.size());
    r.basis.push_back({vmap[v], vmap[v], A->basis(v).name});
  }
  for (int b = A->nv(); b < A->dim(); ++b)
    if (vmap[A->src(b)] >= 0 && vmap[A->tgt(b)] >= 0) {
      bmap[b] = int(r.basis.size());
      r.basis.push_back({vmap[A->src(b)], vmap[A->tgt(b)], A->basis(b).name});
    }
  size_t d = r.basis.size();
  r.prod.assign(d * d, -1);
  for (int a = 0; a < A->dim(); ++a) {
    if (bmap[a] < 0) continue;
    for (int b = 0; b < A->dim(); ++b) {
      if (bmap[b] < 0) continue;
      int32_t p = A->prod(a, b);
      if (p >= 0) {
        assert(bmap[p] >= 0);  // endpoints of p are kept
        r.at(bmap[a], bmap[b]) = bmap[p];
      }
    }
  }
  return build::finish(std::move(r), std::move(desc));
}

// A / A e A for e = sum of the deleted vertex idempotents. The ideal is
// spanned by the basis elements that factor through a deleted vertex.
inline AlgebraPtr quotient_by_vertices(const AlgebraPtr& A, const std::vector<int>& deleted,
                                       nlohmann::json desc) {
  std::vector<bool> del_v(A->nv(), false);
  for (int v : deleted) del_v[v] = true;
  std::vector<bool> in_ideal(A->dim(), false);
  for (int b = 0; b < A->dim(); ++b)
    if (del_v[A->src(b)] || del_v[A->tgt(b)]) in_ideal[b] = true;
  for (int x = 0; x < A->dim(); ++x)
    for (int y = 0; y < A->dim(); ++y) {
      if (A->src(x) != A->tgt(y) || !del_v[A->src(x)]) continue;
      int32_t p = A->prod(x, y);
      if (p >= 0) in_ideal[p] = true;
    }
  build::Raw r;
  std::vector<int> bmap(A->dim(), -1), vmap(A->nv(), -1);
  for (int v = 0; v < A->nv(); ++v)
    if (!del_v[v]) {
      vmap[v] = int(r.vnames.size());
      r.vnames.push_back(A->vertex_name(v));
      bmap[v] = int(r.basis.size());
      r.basis.push_back({vmap[v], vmap[v], A->basis(v).name});
    }
  for (int b = A->nv(); b < A->dim(); ++b)
    if (!in_ideal[b]) {
      bmap[b] = int(r.basis.size());
      r.basis.push_back({vmap[A->src(b)], vmap[A->tgt(b)], A->basis(b).name});
    }
  size_t d = r.basis.size();
  r.prod.assign(d * d, -1);
  for (int a = 0; a < A->dim(); ++a) {
    if (bmap[a] < 0) continue;
    for (int b = 0; b < A->dim(); ++b) {
      if (bmap[b] < 0) continue;
      int32_t p = A->prod(a, b);
      if (p >= 0 && !in_ideal[p]) r.at(bmap[a], bmap[b]) = bmap[p];
    }
  }
  return build::finish(std::move(r), std::move(desc));
}

inline AlgebraPtr opposite(const AlgebraPtr& A) {
  build::Raw r;
  r.vnames.resize(A->nv());
  for (int v = 0; v < A->nv(); ++v) r.vnames[v] = A->vertex_name(v);
  for (int b = 0; b < A->dim(); ++b) r.basis.push_back({A->tgt(b), A->src(b), A->basis(b).name});
  size_t d = r.basis.size();
  r.prod.assign(d * d, -1);
  for (int a = 0; a < A->dim(); ++a)
    for (int b = 0; b < A->dim(); ++b) r.at(a, b) = A->prod(b, a);
  return build::finish(std::move(r), {{"kind", "opposite"}, {"of", A->descriptor()}});
}

// A lattice algebra together with the grid labeling of its vertices.
struct LatticeAlgebra {
  AlgebraPtr alg;
  std::vector<GridPoint> points;              // vertex index -> grid point
  std::map<GridPoint, int> vertex_of;         // grid point -> vertex index

  int vertex(GridPoint p) const {
    auto it = vertex_of.find(p);
    if (it == vertex_of.end()) throw std::out_of_range("lattice vertex " + to_string(p));
    return it->second;
  }
};

namespace detail {
inline LatticeAlgebra corner_on_points(const AlgebraPtr& big, const LatticeSet& S, int64_t ri,
                                       int64_t rj, int64_t ncols, nlohmann::json desc) {
  // big is (row algebra) ⊗ (col algebra) with vertex id (i-ri)*ncols + (j-rj)
  std::vector<int> keep;
  std::vector<std::string> names;
  LatticeAlgebra out;
  for (auto p : S.points()) {
    keep.push_back(int((p.i - ri) * ncols + (p.j - rj)));
    names.push_back(to_string(p));
    out.vertex_of[p] = int(out.points.size());
    out.points.push_back(p);
  }
  out.alg = corner(big, keep, std::move(names), std::move(desc));
  return out;
}
}  // namespace detail

// L(S) = e (N(I) ⊗ N(J)) e, the paper's lattice algebra: morphisms
// (i,j) -> (i',j') for every (i',j') in the square S_{i,j}.
inline LatticeAlgebra lattice_algebra(const LatticeSet& S) {
  if (S.empty()) throw std::invalid_argument("lattice_algebra: empty support");
  auto rowsA = nn(S.min_row(), S.max_row());
  auto colsA = nn(S.min_col(), S.max_col());
  auto big = tensor(rowsA, colsA);
  nlohmann::json pts = nlohmann::json::array();
  for (auto p : S.points()) pts.push_back({p.i, p.j});
  return detail::corner_on_points(big, S, S.min_row(), S.min_col(),
                                  S.max_col() - S.min_col() + 1,
                                  {{"kind", "lattice"}, {"points", pts}});
}

// L!(p⃗;q⃗) = e! (K A_np ⊗ K A_nq) e! on the Young diagram Y(p⃗;q⃗).
inline LatticeAlgebra lattice_shriek(const CompositionPair& c) {
  LatticeSet Y = young_pq(c);
  auto big = tensor(path_algebra_an(c.np()), path_algebra_an(c.nq()));
  return detail::corner_on_points(big, Y, 1, 1, c.nq(),
                                  {{"kind", "lattice_shriek"}, {"p", c.p}, {"q", c.q}});
}

// L(s,t,u) = (A(s,2)^op ⊗ A(t,2)^op) / <Σ_{i<u} e_s ⊗ e_{t-i}>.
inline LatticeAlgebra intro_lattice_algebra(int64_t s, int64_t t, int64_t u) {
  if (s < 1 || t < 1 || u < 0 || u > t)
    throw std::invalid_argument("intro_lattice_algebra: need s,t >= 1, 0 <= u <= t");
  auto big = tensor(nn(1, s), nn(1, t));
  std::vector<int> deleted;
  for (int64_t i = 0; i < u; ++i) deleted.push_back(int((s - 1) * t + (t - i - 1)));
  auto q = quotient_by_vertices(big, deleted,
                                {{"kind", "intro"}, {"s", s}, {"t", t}, {"u", u}});
  LatticeAlgebra out;
  out.alg = q;
  LatticeSet Y = young_pqr(s, t, u);
  // quotient preserves ordering of kept vertices = lex order of Y
  for (auto p : Y.points()) {
    out.vertex_of[p] = int(out.points.size());
    out.points.push_back(p);
  }
  if (int(out.points.size()) != q->nv())
    throw std::logic_error("intro_lattice_algebra: vertex count mismatch");
  return out;
}

// 0/1 pattern forced by the square rule, computed directly from S.
inline IntMatrix cartan_lattice(const LatticeSet& S) {
  int n = int(S.size());
  IntMatrix c(n);
  const auto& pts = S.points();
  for (int t = 0; t < n; ++t) c.labels[t] = to_string(pts[t]);
  for (int y = 0; y < n; ++y) {
    LatticeSet sq = S.square(pts[y]);
    for (int x = 0; x < n; ++x)
      if (sq.contains(pts[x])) c.at(x, y) = 1;
  }
  return c;
}

// Textual quiver presentation (vertices, arrows, known relation families).
inline std::string quiver_dump(const AlgebraPtr& A) {
  std::string s = "vertices:";
  for (int v = 0; v < A->nv(); ++v) s += " " + A->vertex_name(v);
  s += "\narrows:\n";
  for (int b : A->arrows())
    s += "  " + A->basis(b).name + ": " + A->vertex_name(A->src(b)) + " -> " +
         A->vertex_name(A->tgt(b)) + "\n";
  std::string kind = A->descriptor().value("kind", "");
  if (kind == "nakayama")
    s += "relations: paths of length " + std::to_string(A->descriptor()["l"].get<int64_t>()) +
         " vanish\n";
  else if (kind == "nn")
    s += "relations: rad^2 = 0\n";
  else if (kind == "lattice" || kind == "intro")
    s += "relations: u u = 0, v v = 0, u v = v u (square classes)\n";
  else if (kind == "lattice_shriek")
    s += "relations: v! u! = u! v! (commuting squares)\n";
  return s;
}

}  // namespace perlat
